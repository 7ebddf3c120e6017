//! Contraction of a matrix on a column (or row) holding exactly two nonzeros,
//! and the permanent evaluator built from repeated contraction.
//!
//! If column `k` is nonzero only at rows `i` and `j`, then the matrix obtained
//! by replacing row `i` with `a_jk r_i + a_ik r_j` and deleting row `j` and
//! column `k` has the same permanent. Expanding the permanent along column `k`
//! gives `a_ik per(A_ik) + a_jk per(A_jk)`, and both minors are rows of the
//! contracted matrix by multilinearity, so no sign condition on the entries
//! is needed.
//!
//! Row and column numbers in this module are 1-based.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::permanent::{per_naive, per_ryser, NAIVE_MAX_N, RYSER_MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContractionKind {
    Column,
    Row,
}

/// A contractible line: column (or row) `k` is nonzero exactly at `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pivot {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub kind: ContractionKind,
    pub index_k: usize,
    pub kept_i: usize,
    pub removed_j: usize,
    /// `a_ik`, the multiplier applied to row `j`.
    pub mult_ik: BigInt,
    /// `a_jk`, the multiplier applied to row `i`.
    pub mult_jk: BigInt,
    pub result_dims: (usize, usize),
}

impl fmt::Display for ContractionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = match self.kind {
            ContractionKind::Column => "column",
            ContractionKind::Row => "row",
        };
        write!(
            f,
            "{line} k={} i={} j={} a_ik={} a_jk={} -> {}x{}",
            self.index_k,
            self.kept_i,
            self.removed_j,
            self.mult_ik,
            self.mult_jk,
            self.result_dims.0,
            self.result_dims.1
        )
    }
}

/// Every step of a contraction chain. `intermediates[r - 1]` is the matrix
/// after step `r`; the last intermediate (if any) equals `final_matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTrace {
    pub initial: IntMatrix,
    pub steps: Vec<ContractionStep>,
    pub intermediates: Vec<IntMatrix>,
    pub final_matrix: IntMatrix,
}

/// Largest `k` whose column has exactly two nonzero entries, with their rows.
pub fn find_contractible_column(a: &IntMatrix) -> Option<Pivot> {
    find_pivot(a.n_rows(), a.n_cols(), |r, c| !a.get(r, c).is_zero())
}

fn find_pivot(n_rows: usize, n_cols: usize, nonzero: impl Fn(usize, usize) -> bool) -> Option<Pivot> {
    if n_rows < 2 {
        return None;
    }
    (0..n_cols).rev().find_map(|col| {
        let mut hits = (0..n_rows).filter(|&row| nonzero(row, col));
        let i = hits.next()?;
        let j = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        Some(Pivot {
            k: col + 1,
            i: i + 1,
            j: j + 1,
        })
    })
}

/// Checks that 1-based column `k` is nonzero exactly at rows `i` and `j`.
fn check_pivot(rows: &[Vec<BigInt>], n_cols: usize, k: usize, i: usize, j: usize) -> Result<()> {
    let n_rows = rows.len();
    for (axis, index, len) in [("column", k, n_cols), ("row", i, n_rows), ("row", j, n_rows)] {
        if index == 0 || index > len {
            return Err(Error::IndexOutOfRange { axis, index, len });
        }
    }
    if i == j {
        return Err(Error::SameLine(i));
    }
    for row in [i, j] {
        if rows[row - 1][k - 1].is_zero() {
            return Err(Error::ZeroPivot { row, col: k });
        }
    }
    if let Some(extra) = (1..=n_rows).find(|&r| r != i && r != j && !rows[r - 1][k - 1].is_zero()) {
        return Err(Error::ExtraNonzero {
            line: k,
            row: extra,
            col: k,
        });
    }
    Ok(())
}

/// Contracts the row buffer in place and returns `(a_ik, a_jk)`.
fn contract_in_place(rows: &mut Vec<Vec<BigInt>>, k: usize, i: usize, j: usize) -> (BigInt, BigInt) {
    let (k, i, j) = (k - 1, i - 1, j - 1);
    let removed = rows.remove(j);
    let kept = if i < j { i } else { i - 1 };
    let a_ik = rows[kept][k].clone();
    let a_jk = removed[k].clone();
    for (v, w) in rows[kept].iter_mut().zip(&removed) {
        *v *= &a_jk;
        if !w.is_zero() {
            *v += &a_ik * w;
        }
    }
    for row in rows.iter_mut() {
        row.remove(k);
    }
    (a_ik, a_jk)
}

/// The contraction `A_{ij:k}`: row `i` becomes `a_jk r_i + a_ik r_j`, then row
/// `j` and column `k` are deleted.
pub fn contract_column(a: &IntMatrix, k: usize, i: usize, j: usize) -> Result<IntMatrix> {
    if a.n_rows() < 2 || a.n_cols() < 2 {
        return Err(Error::IndexOutOfRange {
            axis: "row",
            index: 2,
            len: a.n_rows().min(a.n_cols()),
        });
    }
    let mut rows = a.to_row_vecs();
    check_pivot(&rows, a.n_cols(), k, i, j)?;
    contract_in_place(&mut rows, k, i, j);
    Ok(IntMatrix::from_row_vecs(rows))
}

/// The contraction `A_{k:ij}` on row `k` relative to columns `i` and `j`,
/// i.e. `contract_column(Aᵀ, k, i, j)ᵀ`.
pub fn contract_row(a: &IntMatrix, k: usize, i: usize, j: usize) -> Result<IntMatrix> {
    contract_column(&a.transpose(), k, i, j).map(|m| m.transpose())
}

struct Chain {
    value: BigInt,
    steps: Vec<ContractionStep>,
    intermediates: Vec<IntMatrix>,
    final_matrix: IntMatrix,
}

fn run_chain(a: &IntMatrix, keep_intermediates: bool) -> Result<Chain> {
    a.order()?;
    let mut rows = a.to_row_vecs();
    let mut steps = Vec::new();
    let mut intermediates = Vec::new();
    while rows.len() > 2 {
        let n_cols = rows[0].len();
        let Some(Pivot { k, i, j }) = find_pivot(rows.len(), n_cols, |r, c| !rows[r][c].is_zero())
        else {
            break;
        };
        let (mult_ik, mult_jk) = contract_in_place(&mut rows, k, i, j);
        let size = rows.len();
        steps.push(ContractionStep {
            kind: ContractionKind::Column,
            index_k: k,
            kept_i: i,
            removed_j: j,
            mult_ik,
            mult_jk,
            result_dims: (size, size),
        });
        if keep_intermediates {
            intermediates.push(IntMatrix::from_row_vecs(rows.clone()));
        }
    }
    let current = IntMatrix::from_row_vecs(rows);
    let n = current.n_rows();
    let value = if n <= NAIVE_MAX_N {
        per_naive(&current)?
    } else if n <= RYSER_MAX_N {
        per_ryser(&current)?
    } else {
        return Err(Error::NotContractible { n });
    };
    Ok(Chain {
        value,
        steps,
        intermediates,
        final_matrix: current,
    })
}

/// Permanent by repeated column contraction, with the full trace.
///
/// Contracts at [`find_contractible_column`] until the matrix is 2x2 or
/// smaller, or no column qualifies. The remaining matrix is evaluated by
/// [`per_naive`] (or [`per_ryser`] when the chain stalls above order 10).
/// For the H, K, M and N families the chain always reaches 2x2 after `n - 2`
/// steps on the last column.
pub fn per_contraction(a: &IntMatrix) -> Result<(BigInt, ContractionTrace)> {
    let chain = run_chain(a, true)?;
    Ok((
        chain.value,
        ContractionTrace {
            initial: a.clone(),
            steps: chain.steps,
            intermediates: chain.intermediates,
            final_matrix: chain.final_matrix,
        },
    ))
}

/// Same chain as [`per_contraction`] without storing the intermediates.
pub fn per_contraction_value(a: &IntMatrix) -> Result<BigInt> {
    run_chain(a, false).map(|c| c.value)
}
