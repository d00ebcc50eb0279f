//! JSON matrix files.
//!
//! Rational entries are strings ("a/b" or "a/b+c/di") so exact values
//! survive the round trip; float entries are numbers or [re, im] pairs.
//! The writer emits a canonical form that parses back byte-identically.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wcep_core::scalar::GaussianRational;
use wcep_core::{Backend, Matrix, Scalar};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarTag {
    Rational,
    Float,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Text(String),
    Real(f64),
    Pair([f64; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub scalar: ScalarTag,
    pub data: Vec<Vec<EntryJson>>,
}

impl MatrixFile {
    pub fn read(path: &Path) -> Result<MatrixFile, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let file: MatrixFile = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))?;
        file.validate(path)?;
        Ok(file)
    }

    fn validate(&self, path: &Path) -> Result<(), CliError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(CliError::input(format!(
                "{}: rows and cols must be positive",
                path.display()
            )));
        }
        if self.data.len() != self.rows || self.data.iter().any(|r| r.len() != self.cols) {
            return Err(CliError::input(format!(
                "{}: data dimensions do not match rows x cols",
                path.display()
            )));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for row in &self.data {
            for entry in row {
                let scalar = match (self.scalar, entry) {
                    (ScalarTag::Rational, EntryJson::Text(s)) => {
                        Scalar::Exact(s.parse::<GaussianRational>().map_err(|e| {
                            CliError::input(format!("bad rational entry {s:?}: {e}"))
                        })?)
                    }
                    (ScalarTag::Rational, _) => {
                        return Err(CliError::input(
                            "rational files must carry string entries".into(),
                        ))
                    }
                    (ScalarTag::Float, EntryJson::Real(x)) => {
                        Scalar::Float(num_complex::Complex64::new(*x, 0.0))
                    }
                    (ScalarTag::Float, EntryJson::Pair([re, im])) => {
                        Scalar::Float(num_complex::Complex64::new(*re, *im))
                    }
                    (ScalarTag::Float, EntryJson::Text(s)) => {
                        return Err(CliError::input(format!(
                            "float files carry numeric entries, found {s:?}"
                        )))
                    }
                };
                entries.push(scalar);
            }
        }
        Matrix::from_scalars(self.rows, self.cols, entries)
            .map_err(|e| CliError::input(e.to_string()))
    }

    pub fn from_matrix(m: &Matrix) -> MatrixFile {
        let scalar = match m.backend() {
            Backend::Exact => ScalarTag::Rational,
            Backend::Float => ScalarTag::Float,
        };
        let data = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| match m.get(i, j) {
                        Scalar::Exact(q) => EntryJson::Text(q.to_string()),
                        Scalar::Float(z) => {
                            if z.im == 0.0 {
                                EntryJson::Real(z.re)
                            } else {
                                EntryJson::Pair([z.re, z.im])
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            scalar,
            data,
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("matrix files serialize");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_canonical_string())
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
    }
}
