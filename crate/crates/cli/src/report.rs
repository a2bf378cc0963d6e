//! Report tables and their CSV and text renderings.

use std::io::Write;

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self, full_precision: bool) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Num(v) if full_precision => v.to_string(),
            Cell::Num(v) => format!("{v:.6}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write(&self, w: impl Write, format: Format, full_precision: bool) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w, full_precision),
            Format::Text => self.write_text(w, full_precision),
        }
    }

    fn write_csv(&self, w: impl Write, full_precision: bool) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|c| c.render(full_precision)))?;
        }
        out.flush()
    }

    fn write_text(&self, mut w: impl Write, full_precision: bool) -> std::io::Result<()> {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(full_precision)).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.columns[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |w: &mut dyn Write, fields: &[String], nums: &[bool]| -> std::io::Result<()> {
            let parts: Vec<String> = fields
                .iter()
                .zip(&widths)
                .zip(nums)
                .map(|((f, &wd), &num)| if num { format!("{f:>wd$}") } else { format!("{f:<wd$}") })
                .collect();
            writeln!(w, "{}", parts.join("  ").trim_end())
        };
        let header_align = vec![false; self.columns.len()];
        line(&mut w, &self.columns, &header_align)?;
        for (row, text) in self.rows.iter().zip(&cells) {
            let nums: Vec<bool> = row.iter().map(|c| matches!(c, Cell::Num(_) | Cell::Int(_))).collect();
            line(&mut w, text, &nums)?;
        }
        Ok(())
    }
}
