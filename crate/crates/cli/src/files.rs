//! JSON schemas for observable and state files.
//!
//! Complex entries are two-element `[re, im]` arrays. Observable files look like
//!
//! ```json
//! { "dim": 2, "labels": ["X", "Z"], "matrices": [ [[[0,0],[1,0]], [[1,0],[0,0]]], ... ] }
//! ```
//!
//! and state files like `{"type": "pure", "vector": [[1,0],[0,0]]}` or
//! `{"type": "density", "matrix": [[[0.5,0],[0,0]], [[0,0],[0.5,0]]]}`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sumbound::bounds::ObservableSet;
use sumbound::observable::{validate_observable, validate_state, RawState};
use sumbound::{ComplexMatrix, Observable, QuantumState};

pub type Entry = [f64; 2];
pub type Rows = Vec<Vec<Entry>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableFile {
    pub dim: usize,
    pub matrices: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateFile {
    Pure { vector: Vec<Entry> },
    Density { matrix: Rows },
}

fn to_complex(e: &Entry) -> Complex64 {
    Complex64::new(e[0], e[1])
}

fn from_complex(z: &Complex64) -> Entry {
    [z.re, z.im]
}

pub fn rows_of(m: &ComplexMatrix) -> Rows {
    m.rows().map(|r| r.iter().map(from_complex).collect()).collect()
}

fn matrix_from_rows(rows: &Rows, dim: usize, what: &str) -> Result<ComplexMatrix, String> {
    if rows.len() != dim {
        return Err(format!("{what}: expected {dim} rows, got {}", rows.len()));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(format!("{what} row {i}: expected {dim} entries, got {}", row.len()));
        }
        data.extend(row.iter().map(to_complex));
    }
    ComplexMatrix::from_row_major(dim, data).map_err(|e| format!("{what}: {e}"))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

impl ObservableFile {
    pub fn from_observables(observables: &[Observable], labels: Option<Vec<String>>) -> Self {
        Self {
            dim: observables[0].dim(),
            matrices: observables.iter().map(|o| rows_of(o.matrix())).collect(),
            labels,
        }
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        read_json(path)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    fn label(&self, k: usize) -> String {
        match self.labels.as_ref().and_then(|l| l.get(k)) {
            Some(l) => format!("matrices[{k}] ({l})"),
            None => format!("matrices[{k}]"),
        }
    }

    pub fn matrices(&self) -> Result<Vec<ComplexMatrix>, String> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, rows)| matrix_from_rows(rows, self.dim, &self.label(k)))
            .collect()
    }

    /// Parses and validates every matrix.
    pub fn to_set(&self) -> Result<ObservableSet, String> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.matrices.len() {
                return Err(format!("labels: {} labels for {} matrices", labels.len(), self.matrices.len()));
            }
        }
        let observables = self
            .matrices()?
            .into_iter()
            .enumerate()
            .map(|(k, m)| validate_observable(m).map_err(|e| format!("{}: {e}", self.label(k))))
            .collect::<Result<Vec<_>, _>>()?;
        ObservableSet::new(observables).map_err(|e| format!("matrices: {e}"))
    }
}

impl StateFile {
    pub fn from_state(state: &QuantumState) -> Self {
        match state {
            QuantumState::Pure(v) => Self::Pure { vector: v.iter().map(from_complex).collect() },
            QuantumState::Mixed(rho) => Self::Density { matrix: rows_of(rho) },
        }
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        read_json(path)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_state(&self) -> Result<QuantumState, String> {
        let raw = match self {
            Self::Pure { vector } => RawState::Vector(vector.iter().map(to_complex).collect()),
            Self::Density { matrix } => RawState::Density(matrix_from_rows(matrix, matrix.len(), "matrix")?),
        };
        let field = if matches!(self, Self::Pure { .. }) { "vector" } else { "matrix" };
        validate_state(raw).map_err(|e| format!("{field}: {e}"))
    }
}
