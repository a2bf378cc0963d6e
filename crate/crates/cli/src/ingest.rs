//! CSV ingestion and emission.
//!
//! The first column holds DMU names; every other column header is
//! `in:<name>`, `out:<name>` or `env:<name>`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use udea_core::{DeaDataset, DeaError, VariableRole};

use crate::error::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Input,
    Output,
    Environmental,
}

struct Column {
    kind: Kind,
    name: String,
    values: Vec<f64>,
}

pub fn ingest_csv(path: impl AsRef<Path>) -> Result<DeaDataset, IngestError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(file)
}

fn parse_header(fields: &csv::StringRecord) -> Result<Vec<Column>, IngestError> {
    if fields.len() < 2 {
        return Err(IngestError::NoVariables);
    }
    let mut columns: Vec<Column> = Vec::new();
    for (j, raw) in fields.iter().enumerate().skip(1) {
        let column = j + 1;
        let header = raw.trim();
        let (kind, name) = if let Some(n) = header.strip_prefix("in:") {
            (Kind::Input, n)
        } else if let Some(n) = header.strip_prefix("out:") {
            (Kind::Output, n)
        } else if let Some(n) = header.strip_prefix("env:") {
            (Kind::Environmental, n)
        } else {
            return Err(IngestError::UnknownPrefix {
                column,
                header: header.to_string(),
            });
        };
        if name.is_empty() {
            return Err(IngestError::EmptyName {
                column,
                header: header.to_string(),
            });
        }
        if columns.iter().any(|c| c.name == name) {
            return Err(IngestError::DuplicateVariable {
                column,
                name: name.to_string(),
            });
        }
        columns.push(Column {
            kind,
            name: name.to_string(),
            values: Vec::new(),
        });
    }
    Ok(columns)
}

fn parse_value(text: &str, row: u64, column: usize, variable: &str) -> Result<f64, IngestError> {
    let t = text.trim();
    let bad = || IngestError::BadNumber {
        row,
        column,
        variable: variable.to_string(),
        text: text.to_string(),
    };
    // decimal reals only: reject inf, nan and hex-like spellings
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
        return Err(bad());
    }
    let v: f64 = t.parse().map_err(|_| bad())?;
    if !v.is_finite() {
        return Err(bad());
    }
    if v < 0.0 {
        return Err(IngestError::Negative {
            row,
            column,
            variable: variable.to_string(),
            value: v,
        });
    }
    Ok(v)
}

pub fn parse_csv(reader: impl Read) -> Result<DeaDataset, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();
    let malformed = |e: csv::Error| IngestError::Malformed {
        row: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let header = match records.next() {
        None => return Err(IngestError::MissingHeader),
        Some(r) => r.map_err(malformed)?,
    };
    if header.iter().all(|f| f.trim().is_empty()) {
        return Err(IngestError::MissingHeader);
    }
    let mut columns = parse_header(&header)?;
    let width = columns.len() + 1;

    let mut names: Vec<String> = Vec::new();
    let mut first_line: HashMap<String, u64> = HashMap::new();
    let mut lines: Vec<u64> = Vec::new();
    for rec in records {
        let rec = rec.map_err(malformed)?;
        let row = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if rec.len() != width {
            return Err(IngestError::RaggedRow {
                row,
                expected: width,
                got: rec.len(),
            });
        }
        let name = &rec[0];
        if name.trim().is_empty() {
            return Err(IngestError::MissingName { row });
        }
        if let Some(&first) = first_line.get(name) {
            return Err(IngestError::DuplicateDmu {
                row,
                name: name.to_string(),
                first,
            });
        }
        first_line.insert(name.to_string(), row);
        for (j, col) in columns.iter_mut().enumerate() {
            col.values.push(parse_value(&rec[j + 1], row, j + 2, &col.name)?);
        }
        names.push(name.to_string());
        lines.push(row);
    }
    if names.is_empty() {
        return Err(IngestError::NoRows);
    }
    for (j, col) in columns.iter().enumerate() {
        if col.values.iter().all(|&v| v == 0.0) {
            return Err(IngestError::EmptyColumn {
                column: j + 2,
                variable: col.name.clone(),
                reason: "variable is zero for every DMU",
            });
        }
    }
    if !columns.iter().any(|c| c.kind == Kind::Input) || !columns.iter().any(|c| c.kind != Kind::Input) {
        return Err(IngestError::Dataset(DeaError::MissingVariables));
    }

    let (mut in_names, mut inputs, mut out_names, mut outputs, mut roles) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for col in columns {
        match col.kind {
            Kind::Input => {
                in_names.push(col.name);
                inputs.push(col.values);
            }
            kind => {
                out_names.push(col.name);
                outputs.push(col.values);
                roles.push(if kind == Kind::Environmental {
                    VariableRole::Environmental
                } else {
                    VariableRole::Discretionary
                });
            }
        }
    }
    DeaDataset::new(names, in_names, inputs, out_names, outputs, roles).map_err(|e| match e {
        DeaError::ZeroInputs(dmu) | DeaError::ZeroOutputs(dmu) => {
            let row = first_line[&dmu];
            IngestError::Malformed {
                row,
                message: format!("DMU '{dmu}' needs a non-zero input and a non-zero output"),
            }
        }
        other => IngestError::Dataset(other),
    })
}

/// Write `ds` in the format [`parse_csv`] reads. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn emit_csv(ds: &DeaDataset, writer: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["dmu".to_string()];
    header.extend(ds.input_names().iter().map(|n| format!("in:{n}")));
    for (n, role) in ds.output_names().iter().zip(ds.output_roles()) {
        let prefix = match role {
            VariableRole::Discretionary => "out",
            VariableRole::Environmental => "env",
        };
        header.push(format!("{prefix}:{n}"));
    }
    w.write_record(&header)?;
    for i in 0..ds.len() {
        let mut rec = vec![ds.name(i).to_string()];
        rec.extend(ds.point(i).iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
