//! Dense matrices of arbitrary-precision signed integers.
//!
//! Indices on the Rust API are 0-based. Anything rendered for people
//! (errors, traces, reports) uses 1-based row and column numbers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An immutable `n_rows x n_cols` integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from its rows. Every row must be non-empty and of the
    /// same length.
    pub fn from_rows<T, R>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        T: Into<BigInt>,
        R: IntoIterator<Item = T>,
    {
        let mut entries = Vec::new();
        let mut n_rows = 0;
        let mut n_cols = 0;
        for (r, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let len = entries.len() - before;
            if r == 0 {
                if len == 0 {
                    return Err(Error::EmptyMatrix);
                }
                n_cols = len;
            } else if len != n_cols {
                return Err(Error::RaggedRows {
                    row: r + 1,
                    expected: n_cols,
                    found: len,
                });
            }
            n_rows += 1;
        }
        if n_rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(IntMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Builds a matrix by evaluating `f(i, j)` (0-based) at every position.
    pub fn from_fn<T: Into<BigInt>>(
        n_rows: usize,
        n_cols: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j).into());
            }
        }
        Ok(IntMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    pub(crate) fn from_row_vecs(rows: Vec<Vec<BigInt>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        debug_assert!(n_rows > 0 && n_cols > 0);
        debug_assert!(rows.iter().all(|r| r.len() == n_cols));
        IntMatrix {
            n_rows,
            n_cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| u8::from(i == j))
    }

    pub fn filled(n_rows: usize, n_cols: usize, value: impl Into<BigInt>) -> Result<Self> {
        let value = value.into();
        Self::from_fn(n_rows, n_cols, |_, _| value.clone())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Order of a square matrix, or [`Error::NotSquare`].
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.n_rows)
        } else {
            Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            })
        }
    }

    /// Entry at 0-based `(i, j)`. Panics when out of range, like slice indexing.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.n_rows && j < self.n_cols, "index ({i},{j}) out of range");
        &self.entries[i * self.n_cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[BigInt]> + '_ {
        self.entries.chunks_exact(self.n_cols)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &BigInt> + '_ {
        self.entries.iter().skip(j).step_by(self.n_cols)
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(<[BigInt]>::to_vec).collect()
    }

    /// Number of nonzero entries in 0-based column `j`.
    pub fn column_nonzeros(&self, j: usize) -> usize {
        self.column(j).filter(|v| !v.is_zero()).count()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            entries.extend(self.column(j).cloned());
        }
        IntMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries,
        }
    }

    /// Elementwise product `A ∘ B`.
    pub fn hadamard(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: other.n_rows,
                right_cols: other.n_cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .collect();
        Ok(IntMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
        })
    }

    /// True iff every entry strictly above the superdiagonal is zero.
    pub fn is_lower_hessenberg(&self) -> Result<bool> {
        self.order()?;
        Ok(self.first_above_superdiagonal().is_none())
    }

    /// First nonzero `(i, j)` (0-based) with `j > i + 1`, scanning row-major.
    pub(crate) fn first_above_superdiagonal(&self) -> Option<(usize, usize)> {
        (0..self.n_rows).find_map(|i| {
            (i + 2..self.n_cols)
                .find(|&j| !self.get(i, j).is_zero())
                .map(|j| (i, j))
        })
    }

    /// Multiplies 0-based row `i` by `c`.
    pub fn scale_row(&self, i: usize, c: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        let n_cols = self.n_cols;
        for v in &mut out.entries[i * n_cols..(i + 1) * n_cols] {
            *v *= c;
        }
        out
    }

    /// Reorders rows so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> IntMatrix {
        assert_eq!(perm.len(), self.n_rows);
        let entries = perm.iter().flat_map(|&p| self.row(p).iter().cloned()).collect();
        IntMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
        }
    }

    pub fn permute_cols(&self, perm: &[usize]) -> IntMatrix {
        self.transpose().permute_rows(perm).transpose()
    }

    /// Copies the leading `rows x cols` block.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Result<IntMatrix> {
        if rows > self.n_rows || cols > self.n_cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: rows,
                right_cols: cols,
            });
        }
        IntMatrix::from_fn(rows, cols, |i, j| self.get(i, j).clone())
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(One::is_one)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_row_vecs())
    }
}

/// Renders one row per line, entries right-aligned to a common width.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.chunks_exact(self.n_cols).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    #[test]
    fn construct_smallest() {
        let a = m(&[&[1]]);
        assert_eq!(a.dims(), (1, 1));
        assert_eq!(a.get(0, 0), &BigInt::from(1));
    }

    #[test]
    fn construct_keeps_entries() {
        let a = m(&[&[2, -1], &[0, 1]]);
        assert_eq!(a.to_row_vecs(), vec![vec![2.into(), (-1).into()], vec![0.into(), 1.into()]]);
    }

    #[test]
    fn ragged_and_empty_rejected() {
        let ragged = IntMatrix::from_rows(vec![vec![1, 2], vec![3]]);
        assert_eq!(
            ragged,
            Err(Error::RaggedRows {
                row: 2,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(IntMatrix::from_rows(Vec::<Vec<i64>>::new()), Err(Error::EmptyMatrix));
        assert_eq!(IntMatrix::from_rows(vec![Vec::<i64>::new()]), Err(Error::EmptyMatrix));
        assert_eq!(IntMatrix::identity(0), Err(Error::EmptyMatrix));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(m(&[&[1]]).transpose(), m(&[&[1]]));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).transpose(), m(&[&[1, 3], &[2, 4]]));
        let r = m(&[&[1, 2, 3], &[4, 5, 6]]).transpose();
        assert_eq!(r, m(&[&[1, 4], &[2, 5], &[3, 6]]));
    }

    #[test]
    fn hadamard_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let ones = IntMatrix::filled(2, 2, 1).unwrap();
        assert_eq!(a.hadamard(&ones).unwrap(), a);
        assert_eq!(a.hadamard(&m(&[&[1, 1], &[-1, 1]])).unwrap(), m(&[&[1, 2], &[-3, 4]]));
        assert!(matches!(
            a.hadamard(&IntMatrix::filled(2, 3, 1).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hessenberg_predicate() {
        assert!(IntMatrix::identity(3).unwrap().is_lower_hessenberg().unwrap());
        assert!(!m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]).is_lower_hessenberg().unwrap());
        assert!(m(&[&[1, 1], &[1, 1]]).is_lower_hessenberg().unwrap());
        assert!(matches!(
            m(&[&[1, 2, 3]]).is_lower_hessenberg(),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn display_is_aligned() {
        assert_eq!(m(&[&[2, -1], &[10, 1]]).to_string(), "[ 2 -1]\n[10  1]");
    }
}
