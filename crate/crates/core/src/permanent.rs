//! Exact permanent evaluators and an exact determinant.
//!
//! The exponential evaluators refuse inputs past fixed size guards instead of
//! running for hours; they exist to check the polynomial ones.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest order [`per_naive`] accepts.
pub const NAIVE_MAX_N: usize = 10;
/// Largest order [`per_ryser`] accepts.
pub const RYSER_MAX_N: usize = 30;

fn guard(a: &IntMatrix, method: &'static str, max: usize) -> Result<usize> {
    let n = a.order()?;
    if n > max {
        return Err(Error::SizeGuard { method, n, max });
    }
    Ok(n)
}

/// Sum over all permutations `σ` of `Π_i a[i][σ(i)]`.
///
/// Permutations are enumerated depth-first; a branch is abandoned as soon as
/// its partial product hits a zero entry, since every completion of it
/// contributes zero.
pub fn per_naive(a: &IntMatrix) -> Result<BigInt> {
    let n = guard(a, "naive", NAIVE_MAX_N)?;

    fn expand(a: &IntMatrix, row: usize, used: u32, prefix: &BigInt, acc: &mut BigInt) {
        let n = a.n_rows();
        if row == n {
            *acc += prefix;
            return;
        }
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let v = a.get(row, col);
            if v.is_zero() {
                continue;
            }
            expand(a, row + 1, used | (1 << col), &(prefix * v), acc);
        }
    }

    let mut acc = BigInt::zero();
    expand(a, 0, 0, &BigInt::one(), &mut acc);
    debug_assert!(n <= 32);
    Ok(acc)
}

/// Subsets per parallel work unit in Ryser's sum.
const RYSER_CHUNK: u64 = 1 << 12;

/// Ryser's inclusion-exclusion formula
/// `per A = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij`,
/// walking the subsets in Gray-code order so each step adds or removes one
/// column from the running row sums.
///
/// Uses `i128` arithmetic whenever `2^n Π_i Σ_j |a_ij|` provably fits, and
/// big integers otherwise. The subset range is split into fixed chunks that
/// may run in parallel; the total is an exact integer sum, so the result
/// does not depend on scheduling.
pub fn per_ryser(a: &IntMatrix) -> Result<BigInt> {
    let n = guard(a, "ryser", RYSER_MAX_N)?;
    let total = match small_entries(a) {
        Some(small) => BigInt::from(ryser_i128(&small, n)),
        None => ryser_big(a, n),
    };
    Ok(if n % 2 == 1 { -total } else { total })
}

/// Row-major `i64` copy of `a` when Ryser's sum cannot overflow `i128`.
fn small_entries(a: &IntMatrix) -> Option<Vec<i64>> {
    let n = a.n_rows();
    let mut bound = BigUint::one() << n;
    let mut out = Vec::with_capacity(n * n);
    for row in a.rows() {
        let mut abs_sum = BigUint::zero();
        for v in row {
            out.push(v.to_i64()?);
            abs_sum += v.magnitude();
        }
        bound *= abs_sum;
    }
    (bound < (BigUint::one() << 126)).then_some(out)
}

fn gray(t: u64) -> u64 {
    t ^ (t >> 1)
}

fn chunk_ranges(n: usize) -> impl ParallelIterator<Item = (u64, u64)> {
    let total = 1u64 << n;
    let chunks = total.div_ceil(RYSER_CHUNK);
    (0..chunks).into_par_iter().map(move |c| {
        let start = (c * RYSER_CHUNK).max(1);
        let end = ((c + 1) * RYSER_CHUNK).min(total);
        (start, end)
    })
}

fn ryser_i128(a: &[i64], n: usize) -> i128 {
    chunk_ranges(n)
        .map(|(start, end)| {
            if start >= end {
                return 0;
            }
            let mut sums = vec![0i128; n];
            let subset = gray(start);
            for (i, s) in sums.iter_mut().enumerate() {
                *s = (0..n)
                    .filter(|j| subset & (1 << j) != 0)
                    .map(|j| a[i * n + j] as i128)
                    .sum();
            }
            let mut acc = 0i128;
            let mut t = start;
            loop {
                let g = gray(t);
                let prod = sums.iter().try_fold(1i128, |p, &s| if s == 0 { None } else { Some(p * s) });
                if let Some(p) = prod {
                    if g.count_ones() % 2 == 0 {
                        acc += p;
                    } else {
                        acc -= p;
                    }
                }
                t += 1;
                if t >= end {
                    break;
                }
                let j = t.trailing_zeros() as usize;
                let added = gray(t) & (1 << j) != 0;
                for (i, s) in sums.iter_mut().enumerate() {
                    let v = a[i * n + j] as i128;
                    if added {
                        *s += v;
                    } else {
                        *s -= v;
                    }
                }
            }
            acc
        })
        .sum()
}

fn ryser_big(a: &IntMatrix, n: usize) -> BigInt {
    chunk_ranges(n)
        .map(|(start, end)| {
            if start >= end {
                return BigInt::zero();
            }
            let subset = gray(start);
            let mut sums: Vec<BigInt> = a
                .rows()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| subset & (1 << j) != 0)
                        .map(|(_, v)| v)
                        .sum()
                })
                .collect();
            let mut acc = BigInt::zero();
            let mut t = start;
            loop {
                let g = gray(t);
                if sums.iter().all(|s| !s.is_zero()) {
                    let p: BigInt = sums.iter().product();
                    if g.count_ones() % 2 == 0 {
                        acc += p;
                    } else {
                        acc -= p;
                    }
                }
                t += 1;
                if t >= end {
                    break;
                }
                let j = t.trailing_zeros() as usize;
                let added = gray(t) & (1 << j) != 0;
                for (i, s) in sums.iter_mut().enumerate() {
                    let v = a.get(i, j);
                    if added {
                        *s += v;
                    } else {
                        *s -= v;
                    }
                }
            }
            acc
        })
        .reduce(BigInt::zero, |x, y| x + y)
}

/// Permanent of a lower Hessenberg matrix by expansion along the last row of
/// each leading principal submatrix:
///
/// `P_0 = 1`,
/// `P_m = a_mm P_{m-1} + Σ_{r<m} a_mr (Π_{j=r}^{m-1} a_{j,j+1}) P_{r-1}`.
///
/// `O(n²)` big-integer operations.
pub fn per_hessenberg(a: &IntMatrix) -> Result<BigInt> {
    let n = a.order()?;
    if let Some((i, j)) = a.first_above_superdiagonal() {
        return Err(Error::NotLowerHessenberg { row: i + 1, col: j + 1 });
    }
    // p[m] is the permanent of the leading m x m block.
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let row = a.row(m - 1);
        let mut value = &row[m - 1] * &p[m - 1];
        let mut chain = BigInt::one();
        for r in (1..m).rev() {
            chain *= a.get(r - 1, r);
            if chain.is_zero() {
                break;
            }
            let entry = &row[r - 1];
            if !entry.is_zero() {
                value += entry * &chain * &p[r - 1];
            }
        }
        p.push(value);
    }
    Ok(p.pop().expect("n >= 1"))
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
pub fn det_bareiss(a: &IntMatrix) -> Result<BigInt> {
    let n = a.order()?;
    let mut m = a.to_row_vecs();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let num = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Absolute value bound `Π_i Σ_j |a_ij|` on the permanent.
pub fn permanent_bound(a: &IntMatrix) -> BigInt {
    a.rows()
        .map(|row| row.iter().map(Signed::abs).sum::<BigInt>())
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_matrix, Family};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(per_naive(&m(&[&[1]])).unwrap(), 1.into());
        assert_eq!(per_naive(&m(&[&[1, 2], &[3, 4]])).unwrap(), 10.into());
        assert_eq!(per_naive(&family_matrix(Family::H, 5).unwrap()).unwrap(), 8.into());
    }

    #[test]
    fn naive_guards() {
        assert!(matches!(per_naive(&m(&[&[1, 2]])), Err(Error::NotSquare { .. })));
        let big = IntMatrix::identity(11).unwrap();
        assert_eq!(
            per_naive(&big),
            Err(Error::SizeGuard {
                method: "naive",
                n: 11,
                max: 10
            })
        );
        assert_eq!(per_naive(&IntMatrix::identity(10).unwrap()).unwrap(), 1.into());
    }

    #[test]
    fn ryser_examples() {
        assert_eq!(per_ryser(&IntMatrix::identity(4).unwrap()).unwrap(), 1.into());
        assert_eq!(per_ryser(&m(&[&[1, 2], &[3, 4]])).unwrap(), 10.into());
        assert_eq!(per_ryser(&family_matrix(Family::K, 5).unwrap()).unwrap(), 4.into());
        assert_eq!(per_ryser(&m(&[&[-7]])).unwrap(), (-7).into());
    }

    #[test]
    fn ryser_guards() {
        assert!(matches!(
            per_ryser(&IntMatrix::identity(31).unwrap()),
            Err(Error::SizeGuard { method: "ryser", n: 31, max: 30 })
        ));
        assert!(matches!(per_ryser(&m(&[&[1, 2]])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn ryser_all_ones_is_factorial() {
        // per J_n = n!
        let mut fact = BigInt::one();
        for n in 1..=12usize {
            fact *= n;
            assert_eq!(per_ryser(&IntMatrix::filled(n, n, 1).unwrap()).unwrap(), fact);
        }
    }

    #[test]
    fn ryser_big_integer_path() {
        // Entries beyond i64 force the big-integer path; per of this rank-one
        // matrix is n! * Π x_i y_i.
        let x: BigInt = BigInt::from(1u64 << 40) * BigInt::from(1u64 << 40);
        let a = IntMatrix::from_fn(3, 3, |i, j| &x * (i + 1) * (j + 2)).unwrap();
        let expected: BigInt = BigInt::from(6) * x.pow(3) * 6 * 24;
        assert_eq!(per_ryser(&a).unwrap(), expected);
        assert_eq!(per_naive(&a).unwrap(), expected);
        assert!(small_entries(&a).is_none());
    }

    #[test]
    fn ryser_crosses_chunk_boundary() {
        // n = 14 gives four Gray-code chunks.
        let a = family_matrix(Family::H, 14).unwrap();
        assert_eq!(per_ryser(&a).unwrap(), crate::sequences::fib(15));
        let big = IntMatrix::from_fn(14, 14, |i, j| {
            if j <= i + 1 {
                BigInt::from(1u64 << 62) * (1 + (i + 2 * j) % 3)
            } else {
                BigInt::zero()
            }
        })
        .unwrap();
        assert_eq!(per_ryser(&big).unwrap(), per_hessenberg(&big).unwrap());
    }

    #[test]
    fn hessenberg_examples() {
        assert_eq!(per_hessenberg(&m(&[&[2, -1], &[0, 1]])).unwrap(), 2.into());
        assert_eq!(per_hessenberg(&family_matrix(Family::M, 4).unwrap()).unwrap(), 12.into());
        assert_eq!(per_hessenberg(&family_matrix(Family::H, 10).unwrap()).unwrap(), 89.into());
    }

    #[test]
    fn hessenberg_rejects_other_shapes() {
        assert!(matches!(per_hessenberg(&m(&[&[1, 2]])), Err(Error::NotSquare { .. })));
        assert_eq!(
            per_hessenberg(&m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]])),
            Err(Error::NotLowerHessenberg { row: 1, col: 3 })
        );
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(det_bareiss(&IntMatrix::identity(5).unwrap()).unwrap(), 1.into());
        assert_eq!(det_bareiss(&m(&[&[1, 2], &[3, 4]])).unwrap(), (-2).into());
        assert_eq!(det_bareiss(&m(&[&[1, 1, 0], &[-1, 1, 1], &[0, -1, 1]])).unwrap(), 3.into());
        assert_eq!(det_bareiss(&m(&[&[0, 1], &[1, 0]])).unwrap(), (-1).into());
        assert_eq!(det_bareiss(&m(&[&[1, 2], &[2, 4]])).unwrap(), 0.into());
        assert_eq!(det_bareiss(&m(&[&[0, 0], &[0, 5]])).unwrap(), 0.into());
        assert_eq!(det_bareiss(&m(&[&[7]])).unwrap(), 7.into());
        assert!(matches!(det_bareiss(&m(&[&[1, 2]])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn bound_dominates() {
        let a = m(&[&[1, -2], &[3, 4]]);
        assert_eq!(permanent_bound(&a), 21.into());
        assert!(per_naive(&a).unwrap().abs() <= permanent_bound(&a));
    }
}
