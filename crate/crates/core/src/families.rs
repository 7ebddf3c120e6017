//! Generators for the named matrix families and for the closed forms of
//! their contraction chains.
//!
//! The four Hessenberg families share one band pattern (1-based `(i, j)`):
//! diagonal 2, superdiagonal `(i, i+1) = (-1)^i`, lower subdiagonal
//! `(i+2, i) = 1`, zero elsewhere. They differ only in corner exceptions:
//!
//! | family | `(1,1)` | `(1,2)` | `(n,n)` |
//! |--------|---------|---------|---------|
//! | H      | 2       | -1      | 1       |
//! | K      | 2       | -3      | 1       |
//! | M      | 2       | -1      | 2       |
//! | N      | 3       | -2      | 2       |
//!
//! Exceptions are applied after the base rule, first-row ones last, so the
//! 1x1 members are `H_1 = K_1 = [1]`, `M_1 = [2]` and `N_1 = [3]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::sequences::{fib, fib_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    H,
    K,
    M,
    N,
    /// Lee's matrix, whose permanent is `L_{n-1}`.
    Lee,
    /// The `(1,-1)` sign matrix turning a tridiagonal permanent into a determinant.
    SignS,
    Tridiag,
}

impl Family {
    pub const HESSENBERG: [Family; 4] = [Family::H, Family::K, Family::M, Family::N];

    pub fn name(self) -> &'static str {
        match self {
            Family::H => "H",
            Family::K => "K",
            Family::M => "M",
            Family::N => "N",
            Family::Lee => "LEE",
            Family::SignS => "S",
            Family::Tridiag => "TRIDIAG",
        }
    }

    pub fn is_hessenberg_family(self) -> bool {
        Family::HESSENBERG.contains(&self)
    }

    fn min_order(self) -> usize {
        match self {
            Family::Lee => 2,
            _ => 1,
        }
    }

    /// `(1,1)` and `(1,2)` entries.
    fn first_row_corner(self) -> (i64, i64) {
        match self {
            Family::K => (2, -3),
            Family::N => (3, -2),
            _ => (2, -1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "H" => Family::H,
            "K" => Family::K,
            "M" => Family::M,
            "N" => Family::N,
            "LEE" | "L" => Family::Lee,
            "S" | "SIGN_S" => Family::SignS,
            "TRIDIAG" | "T" => Family::Tridiag,
            _ => {
                return Err(Error::Unsupported {
                    what: format!("unknown matrix family {s:?}"),
                })
            }
        })
    }
}

/// Sub-, main- and superdiagonal of a tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TridiagBands {
    pub sub: Vec<BigInt>,
    pub main: Vec<BigInt>,
    pub sup: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub bands: Option<TridiagBands>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            bands: None,
        }
    }

    /// Tridiagonal spec; the order is taken from the main diagonal.
    pub fn tridiagonal<T: Into<BigInt>>(
        sub: impl IntoIterator<Item = T>,
        main: impl IntoIterator<Item = T>,
        sup: impl IntoIterator<Item = T>,
    ) -> Self {
        let bands = TridiagBands {
            sub: sub.into_iter().map(Into::into).collect(),
            main: main.into_iter().map(Into::into).collect(),
            sup: sup.into_iter().map(Into::into).collect(),
        };
        FamilySpec {
            family: Family::Tridiag,
            n: bands.main.len(),
            bands: Some(bands),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < self.family.min_order() {
            return Err(Error::InvalidOrder {
                family: self.family.name(),
                n: self.n,
                min: self.family.min_order(),
            });
        }
        match (self.family, &self.bands) {
            (Family::Tridiag, None) => Err(Error::Unsupported {
                what: "TRIDIAG needs sub, main and super bands".into(),
            }),
            (Family::Tridiag, Some(b)) => {
                let n = self.n;
                for (band, len, expected) in [
                    ("main", b.main.len(), n),
                    ("sub", b.sub.len(), n - 1),
                    ("super", b.sup.len(), n - 1),
                ] {
                    if len != expected {
                        return Err(Error::BandLength {
                            band,
                            expected,
                            found: len,
                        });
                    }
                }
                Ok(())
            }
            (f, Some(_)) => Err(Error::Unsupported {
                what: format!("family {f} takes no band sequences"),
            }),
            (_, None) => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Shared band rule of H/K/M/N at 1-based `(i, j)`, first-row exceptions
/// included, last-diagonal exception excluded.
fn hessenberg_band(family: Family, i: usize, j: usize) -> i64 {
    let (d1, s1) = family.first_row_corner();
    if i == j {
        if i == 1 {
            d1
        } else {
            2
        }
    } else if j == i + 1 {
        if i == 1 {
            s1
        } else {
            sign(i as i64)
        }
    } else if i == j + 2 {
        1
    } else {
        0
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<IntMatrix> {
    spec.validate()?;
    let n = spec.n;
    match spec.family {
        Family::H | Family::K | Family::M | Family::N => {
            let last = match spec.family {
                Family::H | Family::K => 1,
                _ => 2,
            };
            IntMatrix::from_fn(n, n, |i, j| {
                let (i, j) = (i + 1, j + 1);
                if i == n && j == n && !(n == 1 && spec.family == Family::N) {
                    last
                } else {
                    hessenberg_band(spec.family, i, j)
                }
            })
        }
        Family::Lee => IntMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i + 1, j + 1);
            let one = i == j
                || i == j + 1
                || (j == i + 1 && i >= 2)
                || (i == 1 && j == 3);
            u8::from(one)
        }),
        Family::SignS => IntMatrix::from_fn(n, n, |i, j| if i == j + 1 { -1 } else { 1 }),
        Family::Tridiag => {
            let b = spec.bands.as_ref().expect("validated");
            IntMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    b.main[i].clone()
                } else if i == j + 1 {
                    b.sub[j].clone()
                } else if j == i + 1 {
                    b.sup[i].clone()
                } else {
                    BigInt::zero()
                }
            })
        }
    }
}

/// Convenience for the common case.
pub fn family_matrix(family: Family, n: usize) -> Result<IntMatrix> {
    build_family(&FamilySpec::new(family, n))
}

fn check_chain_step(spec: &FamilySpec, r: usize) -> Result<()> {
    if !spec.family.is_hessenberg_family() {
        return Err(Error::Unsupported {
            what: format!("no contraction closed form for family {}", spec.family),
        });
    }
    if spec.n < 4 {
        return Err(Error::InvalidOrder {
            family: spec.family.name(),
            n: spec.n,
            min: 4,
        });
    }
    if r < 1 || r > spec.n - 2 {
        return Err(Error::StepOutOfRange {
            r,
            n: spec.n,
            max: spec.n - 2,
        });
    }
    Ok(())
}

/// Assembles an `size x size` step matrix: rows `1..size-1` follow the band
/// rule (optionally overriding the top entry of the last column), and the
/// last row is zero except for `bottom`, which fills its trailing entries.
fn step_matrix(family: Family, size: usize, top: Option<i64>, bottom: &[BigInt]) -> IntMatrix {
    debug_assert!(bottom.len() <= size);
    let offset = size - bottom.len();
    IntMatrix::from_fn(size, size, |i, j| {
        let (i, j) = (i + 1, j + 1);
        if i == size {
            if j > offset {
                bottom[j - offset - 1].clone()
            } else {
                BigInt::zero()
            }
        } else if let (Some(t), true) = (top, i == size - 1 && j == size) {
            t.into()
        } else {
            hessenberg_band(family, i, j).into()
        }
    })
    .expect("size >= 2")
}

/// Closed form of the `r`-th matrix in the contraction chain of `spec`
/// (`1 <= r <= n-2`, `n >= 4`), as confirmed by direct contraction.
///
/// For `r <= n-3` the bottom row ends in `[F_{r+1}, ±(F_{r+2}-F_{r+1}), F_{r+2}]`
/// (H, K) or `[S_{r+1}, ±S_r, S_{r+2}]` with `S_m = F_0 + ... + F_m` (M, N),
/// the middle sign being `(-1)^{n-r}`. The last step is
/// `[[d, c], [F_{n-2}, F_n]]` for H/K and `[[d, c], [S_{n-2}, S_n]]` for M/N.
pub fn expected_contraction(spec: &FamilySpec, r: usize) -> Result<IntMatrix> {
    check_chain_step(spec, r)?;
    let n = spec.n;
    let size = n - r;
    let fib_like = matches!(spec.family, Family::H | Family::K);
    let bottom: Vec<BigInt> = if size == 2 {
        if fib_like {
            vec![fib(n - 2), fib(n)]
        } else {
            vec![fib_sum(n - 2), fib_sum(n)]
        }
    } else {
        let s = sign((n - r) as i64);
        if fib_like {
            vec![fib(r + 1), s * (fib(r + 2) - fib(r + 1)), fib(r + 2)]
        } else {
            vec![fib_sum(r + 1), s * fib_sum(r), fib_sum(r + 2)]
        }
    };
    Ok(step_matrix(spec.family, size, None, &bottom))
}

/// One closed form displayed in a published proof for a chain step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDisplay {
    /// Which display this is, e.g. `"K^(n-3)"` or `"M^(r) (n odd)"`.
    pub label: String,
    pub matrix: IntMatrix,
}

/// Every proof display that claims to describe step `r` of the chain, with
/// the published indices and signs taken literally. Several displays can
/// cover the same step (for example the explicit `r = 1` form and the
/// `(n-3)` form when `n = 4`).
pub fn proof_displays(spec: &FamilySpec, r: usize) -> Result<Vec<ProofDisplay>> {
    check_chain_step(spec, r)?;
    let family = spec.family;
    let n = spec.n;
    let ni = n as i64;
    let ri = r as i64;
    let size = n - r;
    let name = family.name();
    let fib_like = matches!(family, Family::H | Family::K);
    let f = |k: usize| fib(k);
    let s = |k: usize| fib_sum(k);
    let b = |v: i64| BigInt::from(v);
    let mut out = Vec::new();

    if (1..=3).contains(&r) && size >= 3 {
        // Explicit first three steps. N's top entries carry exponents n, n-1,
        // n-2 instead of n-2, n-3, n-4 (same parity).
        let top_exp = if family == Family::N { ni + 1 - ri } else { ni - 1 - ri };
        let bottom = match (fib_like, r) {
            (true, 1) => vec![b(1), b(sign(ni - 1)), b(2)],
            (true, 2) => vec![b(2), b(sign(ni - 2)), b(3)],
            (true, _) => vec![b(3), b(2 * sign(ni - 3)), b(5)],
            (false, 1) => vec![b(2), b(sign(ni - 1)), b(4)],
            (false, 2) => vec![b(4), b(2 * sign(ni - 2)), b(7)],
            (false, _) => vec![b(7), b(4 * sign(ni - 3)), b(12)],
        };
        out.push(ProofDisplay {
            label: format!("{name}^({r})"),
            matrix: step_matrix(family, size, Some(sign(top_exp)), &bottom),
        });
    }

    if r >= 2 && r + 4 <= n {
        let even = n % 2 == 0;
        let (top_exp, mid_exp) = match (family, even) {
            (Family::H, true) => (ri - 1, ri),
            (Family::K, true) => (ri - 1, ri - 2),
            (Family::M, true) => (ri - 1, ri - 2),
            (_, true) => (ri - 1, ri),
            (_, false) => (ri, ri - 1),
        };
        let bottom = if fib_like {
            vec![f(r + 1), sign(mid_exp) * (f(r + 2) - f(r + 1)), f(r + 2)]
        } else {
            vec![s(r + 1), sign(mid_exp) * s(r), s(r + 2)]
        };
        out.push(ProofDisplay {
            label: format!("{name}^(r) (n {})", if even { "even" } else { "odd" }),
            matrix: step_matrix(family, size, Some(sign(top_exp)), &bottom),
        });
    }

    if r + 3 == n {
        let bottom = match family {
            Family::H => vec![f(n - 2), f(n - 2) - f(n - 1), f(n - 1)],
            Family::K => vec![f(n - 3), f(n - 3) - f(n - 1), f(n - 1)],
            _ => vec![s(n - 2), -s(n - 3), s(n - 1)],
        };
        out.push(ProofDisplay {
            label: format!("{name}^(n-3)"),
            matrix: step_matrix(family, 3, None, &bottom),
        });
    }

    if r + 2 == n {
        let bottom = match family {
            Family::H | Family::K => vec![f(n - 2), f(n)],
            Family::M => vec![s(n - 4), s(n - 2)],
            _ => vec![s(n - 2), s(n)],
        };
        out.push(ProofDisplay {
            label: format!("{name}^(n-2)"),
            matrix: step_matrix(family, 2, None, &bottom),
        });
    }

    Ok(out)
}
