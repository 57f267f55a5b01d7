//! JSON serialization for quaternionic matrices.
//!
//! The on-disk document stores each entry as a `[w, x, y, z]` component
//! array, row-major, together with the order and optional free-form
//! metadata:
//!
//! ```json
//! {
//!   "entries": [[[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]],
//!               [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]],
//!   "metadata": {"family": "example"},
//!   "order": 2
//! }
//! ```
//!
//! Field order and metadata key order are deterministic, so re-emitting a
//! parsed document is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::qmat::QMatrix;
use crate::quat::Quaternion;

/// Free-form document metadata with deterministic key order.
pub type Metadata = BTreeMap<String, serde_json::Value>;

/// The serialized form of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    /// Row-major entries, each a `[w, x, y, z]` quadruple.
    pub entries: Vec<Vec<[f64; 4]>>,
    /// Optional string-to-string details (family name, parameters, …).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    /// Matrix order; must match the shape of `entries`.
    pub order: usize,
}

/// Failure to interpret text as a matrix document.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("declared order {order} but found {rows} rows")]
    RowCount { order: usize, rows: usize },
    #[error("row {row} has {cols} entries, expected {order}")]
    ColCount { order: usize, row: usize, cols: usize },
    #[error("entry ({row}, {col}) has non-finite component {value}")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("order must be positive")]
    EmptyMatrix,
}

impl MatrixDocument {
    pub fn from_matrix(h: &QMatrix, metadata: Option<Metadata>) -> MatrixDocument {
        let n = h.order();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let q = h[(i, j)];
                        [q.w, q.x, q.y, q.z]
                    })
                    .collect()
            })
            .collect();
        MatrixDocument {
            entries,
            metadata,
            order: n,
        }
    }

    /// Validates shape and finiteness and builds the matrix.
    pub fn to_matrix(&self) -> Result<QMatrix, ParseError> {
        if self.order == 0 {
            return Err(ParseError::EmptyMatrix);
        }
        if self.entries.len() != self.order {
            return Err(ParseError::RowCount {
                order: self.order,
                rows: self.entries.len(),
            });
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.order {
                return Err(ParseError::ColCount {
                    order: self.order,
                    row: i,
                    cols: row.len(),
                });
            }
            for (j, comps) in row.iter().enumerate() {
                if let Some(&bad) = comps.iter().find(|c| !c.is_finite()) {
                    return Err(ParseError::NonFinite {
                        row: i,
                        col: j,
                        value: bad,
                    });
                }
            }
        }
        Ok(QMatrix::from_fn(self.order, |i, j| {
            let [w, x, y, z] = self.entries[i][j];
            Quaternion::new(w, x, y, z)
        }))
    }
}

/// Parses a JSON document and validates it into a matrix, returning any
/// metadata alongside.
pub fn parse_matrix(text: &str) -> Result<(QMatrix, Option<Metadata>), ParseError> {
    let doc: MatrixDocument = serde_json::from_str(text)?;
    let h = doc.to_matrix()?;
    Ok((h, doc.metadata))
}

/// Pretty-printed JSON for a matrix with optional metadata.
pub fn emit_matrix(h: &QMatrix, metadata: Option<Metadata>) -> String {
    let doc = MatrixDocument::from_matrix(h, metadata);
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

// ── Tests ──────────────────────────────────────────────────────────────────
