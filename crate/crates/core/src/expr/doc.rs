//! JSON module documents: `{"name": str?, "n": int, "matrix": [[expr]]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_expr, render, ParseError};
use crate::diffmod::{DiffModule, ModuleError};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("malformed module document: {0}")]
    Json(String),
    #[error("declared dimension {n} but {found}")]
    Dimension { n: usize, found: String },
    #[error("entry ({row}, {col}): {source}")]
    Entry {
        row: usize,
        col: usize,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ModuleDoc {
    pub fn from_json(bytes: &[u8]) -> Result<Self, LoadError> {
        serde_json::from_slice(bytes).map_err(|e| LoadError::Json(e.to_string()))
    }

    /// Renders a module back into a document.
    pub fn from_module(m: &DiffModule, name: Option<String>) -> Self {
        Self {
            name,
            n: m.dim(),
            matrix: m
                .matrix()
                .to_rows()
                .iter()
                .map(|row| row.iter().map(render).collect())
                .collect(),
            labels: m.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_module(&self) -> Result<DiffModule, LoadError> {
        let n = self.n;
        if n == 0 {
            return Err(LoadError::Dimension {
                n,
                found: "a module needs n >= 1".into(),
            });
        }
        if self.matrix.len() != n {
            return Err(LoadError::Dimension {
                n,
                found: format!("{} rows", self.matrix.len()),
            });
        }
        if let Some((r, row)) = self.matrix.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(LoadError::Dimension {
                n,
                found: format!("{} entries in row {r}", row.len()),
            });
        }
        let mut entries = Vec::with_capacity(n);
        for (row, cells) in self.matrix.iter().enumerate() {
            let parsed = cells
                .iter()
                .enumerate()
                .map(|(col, text)| {
                    parse_expr(text).map_err(|source| LoadError::Entry { row, col, source })
                })
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(parsed);
        }
        let matrix = Matrix::from_rows(entries).expect("rows checked above");
        let module = DiffModule::new(matrix)?;
        match &self.labels {
            Some(labels) => Ok(module.with_labels(labels.clone())?),
            None => Ok(module),
        }
    }
}

/// Parses a JSON module document into a module.
pub fn load_module(doc: &[u8]) -> Result<DiffModule, LoadError> {
    ModuleDoc::from_json(doc)?.to_module()
}
