use std::collections::HashSet;

use crate::error::{DeaError, Result};

/// Whether an output is controlled by the DMU or merely describes its environment.
///
/// Environmental outputs take part in the envelopment constraints like any
/// other output but are never perturbed by the uncertainty transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableRole {
    Discretionary,
    Environmental,
}

/// Inputs `X` (N×I) and outputs `Y` (M×I) of a set of named DMUs.
///
/// Storage is variable-major: `inputs[n][i]` is input `n` of DMU `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeaDataset {
    names: Vec<String>,
    input_names: Vec<String>,
    output_names: Vec<String>,
    inputs: Vec<Vec<f64>>,
    outputs: Vec<Vec<f64>>,
    output_roles: Vec<VariableRole>,
    scale_factors: Vec<f64>,
}

pub struct DatasetBuilder {
    names: Vec<String>,
    inputs: Vec<(String, Vec<f64>)>,
    outputs: Vec<(String, Vec<f64>, VariableRole)>,
}

impl DatasetBuilder {
    pub fn input(mut self, name: impl Into<String>, values: impl Into<Vec<f64>>) -> Self {
        self.inputs.push((name.into(), values.into()));
        self
    }

    pub fn output(mut self, name: impl Into<String>, values: impl Into<Vec<f64>>) -> Self {
        self.outputs
            .push((name.into(), values.into(), VariableRole::Discretionary));
        self
    }

    pub fn environmental(mut self, name: impl Into<String>, values: impl Into<Vec<f64>>) -> Self {
        self.outputs
            .push((name.into(), values.into(), VariableRole::Environmental));
        self
    }

    pub fn build(self) -> Result<DeaDataset> {
        let (input_names, inputs) = self.inputs.into_iter().unzip();
        let mut output_names = Vec::new();
        let mut outputs = Vec::new();
        let mut output_roles = Vec::new();
        for (name, values, role) in self.outputs {
            output_names.push(name);
            outputs.push(values);
            output_roles.push(role);
        }
        DeaDataset::new(self.names, input_names, inputs, output_names, outputs, output_roles)
    }
}

impl DeaDataset {
    pub fn builder<S: Into<String>>(names: impl IntoIterator<Item = S>) -> DatasetBuilder {
        DatasetBuilder {
            names: names.into_iter().map(Into::into).collect(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn new(
        names: Vec<String>,
        input_names: Vec<String>,
        inputs: Vec<Vec<f64>>,
        output_names: Vec<String>,
        outputs: Vec<Vec<f64>>,
        output_roles: Vec<VariableRole>,
    ) -> Result<Self> {
        let count = names.len();
        if count == 0 {
            return Err(DeaError::NoDmus);
        }
        if inputs.is_empty() || outputs.is_empty() {
            return Err(DeaError::MissingVariables);
        }
        if input_names.len() != inputs.len()
            || output_names.len() != outputs.len()
            || output_roles.len() != outputs.len()
        {
            return Err(DeaError::MissingVariables);
        }

        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(DeaError::DuplicateDmu(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for name in input_names.iter().chain(&output_names) {
            if !seen.insert(name.as_str()) {
                return Err(DeaError::DuplicateVariable(name.clone()));
            }
        }

        for (var, values) in input_names.iter().zip(&inputs).chain(output_names.iter().zip(&outputs)) {
            if values.len() != count {
                return Err(DeaError::LengthMismatch {
                    variable: var.clone(),
                    expected: count,
                    got: values.len(),
                });
            }
            for (i, &v) in values.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(DeaError::InvalidValue {
                        dmu: names[i].clone(),
                        variable: var.clone(),
                        value: v,
                    });
                }
            }
            if values.iter().all(|&v| v == 0.0) {
                return Err(DeaError::ZeroVariable(var.clone()));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if inputs.iter().all(|row| row[i] == 0.0) {
                return Err(DeaError::ZeroInputs(name.clone()));
            }
            if outputs.iter().all(|row| row[i] == 0.0) {
                return Err(DeaError::ZeroOutputs(name.clone()));
            }
        }

        let scale_factors = vec![1.0; inputs.len() + outputs.len()];
        Ok(DeaDataset {
            names,
            input_names,
            output_names,
            inputs,
            outputs,
            output_roles,
            scale_factors,
        })
    }

    /// Number of DMUs, `I`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn output_roles(&self) -> &[VariableRole] {
        &self.output_roles
    }

    /// Scale factors applied so far, inputs first then outputs.
    pub fn scale_factors(&self) -> &[f64] {
        &self.scale_factors
    }

    pub fn input(&self, n: usize, i: usize) -> f64 {
        self.inputs[n][i]
    }

    pub fn output(&self, m: usize, i: usize) -> f64 {
        self.outputs[m][i]
    }

    /// Row `X_n` over all DMUs.
    pub fn input_row(&self, n: usize) -> &[f64] {
        &self.inputs[n]
    }

    pub fn output_row(&self, m: usize) -> &[f64] {
        &self.outputs[m]
    }

    /// Column `x^i`.
    pub fn inputs_of(&self, i: usize) -> Vec<f64> {
        self.inputs.iter().map(|row| row[i]).collect()
    }

    /// Column `y^i`.
    pub fn outputs_of(&self, i: usize) -> Vec<f64> {
        self.outputs.iter().map(|row| row[i]).collect()
    }

    /// `(x^i, y^i)` concatenated, the DMU's point in input-output space.
    pub fn point(&self, i: usize) -> Vec<f64> {
        let mut p = self.inputs_of(i);
        p.extend(self.outputs_of(i));
        p
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(DeaError::IndexOutOfRange {
                index: i,
                count: self.len(),
            })
        }
    }

    /// Largest absolute datum, used to scale tolerances.
    pub fn magnitude(&self) -> f64 {
        self.inputs
            .iter()
            .chain(&self.outputs)
            .flatten()
            .fold(0.0_f64, |a, &b| a.max(b.abs()))
    }

    /// Variable index (inputs first, then outputs) for `name`, `in:name`,
    /// `out:name` or `env:name`.
    pub fn variable_index(&self, name: &str) -> Result<usize> {
        let n_in = self.num_inputs();
        let lookup_in = |s: &str| self.input_names.iter().position(|v| v == s);
        let lookup_out = |s: &str, role: Option<VariableRole>| {
            self.output_names
                .iter()
                .zip(&self.output_roles)
                .position(|(v, r)| v == s && role.is_none_or(|want| want == *r))
                .map(|m| n_in + m)
        };
        let found = if let Some(rest) = name.strip_prefix("in:") {
            lookup_in(rest)
        } else if let Some(rest) = name.strip_prefix("out:") {
            lookup_out(rest, Some(VariableRole::Discretionary))
        } else if let Some(rest) = name.strip_prefix("env:") {
            lookup_out(rest, Some(VariableRole::Environmental))
        } else {
            lookup_in(name).or_else(|| lookup_out(name, None))
        };
        found.ok_or_else(|| DeaError::UnknownVariable(name.to_string()))
    }

    fn variable_name(&self, k: usize) -> &str {
        if k < self.num_inputs() {
            &self.input_names[k]
        } else {
            &self.output_names[k - self.num_inputs()]
        }
    }

    /// Multiply every variable row by its factor (inputs first, then outputs).
    pub fn scaled(&self, factors: &[f64]) -> Result<DeaDataset> {
        let expected = self.num_inputs() + self.num_outputs();
        if factors.len() != expected {
            return Err(DeaError::FactorCount {
                expected,
                got: factors.len(),
            });
        }
        for (k, &f) in factors.iter().enumerate() {
            if !(f.is_finite() && f > 0.0) {
                return Err(DeaError::NonPositiveFactor {
                    variable: self.variable_name(k).to_string(),
                    factor: f,
                });
            }
        }
        let mut out = self.clone();
        let n_in = self.num_inputs();
        for (k, &f) in factors.iter().enumerate() {
            if f == 1.0 {
                continue;
            }
            let row = if k < n_in {
                &mut out.inputs[k]
            } else {
                &mut out.outputs[k - n_in]
            };
            row.iter_mut().for_each(|v| *v *= f);
            out.scale_factors[k] *= f;
        }
        Ok(out)
    }

    /// Same data with new values, bypassing validation.
    pub(crate) fn with_values(&self, inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> DeaDataset {
        debug_assert_eq!(inputs.len(), self.inputs.len());
        debug_assert_eq!(outputs.len(), self.outputs.len());
        DeaDataset {
            inputs,
            outputs,
            ..self.clone()
        }
    }

    /// Same DMUs and variables with realised values in place of the nominal
    /// ones. Only shape, finiteness and sign are checked: a realisation may
    /// zero a whole row.
    pub fn realisation(&self, inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<DeaDataset> {
        let count = self.len();
        let named = self
            .input_names
            .iter()
            .zip(&inputs)
            .chain(self.output_names.iter().zip(&outputs));
        if inputs.len() != self.inputs.len() || outputs.len() != self.outputs.len() {
            return Err(DeaError::MissingVariables);
        }
        for (var, values) in named {
            if values.len() != count {
                return Err(DeaError::LengthMismatch {
                    variable: var.clone(),
                    expected: count,
                    got: values.len(),
                });
            }
            if let Some((i, &v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
                return Err(DeaError::InvalidValue {
                    dmu: self.names[i].clone(),
                    variable: var.clone(),
                    value: v,
                });
            }
        }
        Ok(self.with_values(inputs, outputs))
    }

    /// Dataset restricted to the DMUs in `keep` (in that order).
    pub fn subset(&self, keep: &[usize]) -> Result<DeaDataset> {
        for &i in keep {
            self.check_index(i)?;
        }
        let pick = |rows: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            rows.iter().map(|row| keep.iter().map(|&i| row[i]).collect()).collect()
        };
        let mut ds = DeaDataset::new(
            keep.iter().map(|&i| self.names[i].clone()).collect(),
            self.input_names.clone(),
            pick(&self.inputs),
            self.output_names.clone(),
            pick(&self.outputs),
            self.output_roles.clone(),
        )?;
        ds.scale_factors = self.scale_factors.clone();
        Ok(ds)
    }
}

/// Scale every variable of `ds` by the per-variable `factors`.
pub fn scale_dataset(ds: &DeaDataset, factors: &[f64]) -> Result<DeaDataset> {
    ds.scaled(factors)
}
