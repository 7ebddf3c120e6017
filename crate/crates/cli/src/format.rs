//! Matrix serialization.
//!
//! JSON schema: `{"n_rows": R, "n_cols": C, "entries": [["d", ...], ...]}`
//! with every entry a decimal string, so values beyond 64 bits survive any
//! consumer. Plain JSON integers are accepted on input as well.

use hessperm::{BigInt, IntMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid matrix JSON: {0}")]
    Shape(String),
    #[error("invalid matrix entry {0:?}: expected a decimal integer")]
    Entry(String),
    #[error(transparent)]
    Matrix(#[from] hessperm::Error),
}

#[derive(Serialize)]
struct MatrixOut {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Number(serde_json::Number),
}

#[derive(Deserialize)]
struct MatrixIn {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Vec<Cell>>,
}

pub fn matrix_to_json(a: &IntMatrix) -> String {
    let out = MatrixOut {
        n_rows: a.n_rows(),
        n_cols: a.n_cols(),
        entries: a
            .rows()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
    };
    serde_json::to_string(&out).expect("plain data serializes")
}

pub fn matrix_from_json(text: &str) -> Result<IntMatrix, FormatError> {
    let raw: MatrixIn = serde_json::from_str(text)?;
    if raw.entries.len() != raw.n_rows {
        return Err(FormatError::Shape(format!(
            "n_rows is {} but entries has {} rows",
            raw.n_rows,
            raw.entries.len()
        )));
    }
    if let Some((r, row)) = raw.entries.iter().enumerate().find(|(_, row)| row.len() != raw.n_cols) {
        return Err(FormatError::Shape(format!(
            "n_cols is {} but row {} has {} entries",
            raw.n_cols,
            r + 1,
            row.len()
        )));
    }
    let rows = raw
        .entries
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cell| {
                    let text = match cell {
                        Cell::Text(s) => s,
                        Cell::Number(n) => n.to_string(),
                    };
                    text.trim()
                        .parse::<BigInt>()
                        .map_err(|_| FormatError::Entry(text.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_rows(rows)?)
}

pub fn matrix_to_csv(a: &IntMatrix) -> String {
    a.rows()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .map(|line| line + "\n")
        .collect()
}
