use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::contraction::per_contraction_value;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::permanent::{per_hessenberg, per_naive, per_ryser};

/// Permanent evaluator selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Contraction,
    Hessenberg,
    Ryser,
    Naive,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Contraction,
        Method::Hessenberg,
        Method::Ryser,
        Method::Naive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Contraction => "contraction",
            Method::Hessenberg => "hessenberg",
            Method::Ryser => "ryser",
            Method::Naive => "naive",
        }
    }

    /// Evaluates `per(a)`.
    ///
    /// `Hessenberg` also accepts upper Hessenberg input (such as Lee's
    /// matrix) by expanding the transpose, which has the same permanent.
    pub fn evaluate(self, a: &IntMatrix) -> Result<BigInt> {
        match self {
            Method::Contraction => per_contraction_value(a),
            Method::Hessenberg => match per_hessenberg(a) {
                Err(err @ Error::NotLowerHessenberg { .. }) => {
                    let t = a.transpose();
                    if t.is_lower_hessenberg()? {
                        per_hessenberg(&t)
                    } else {
                        Err(err)
                    }
                }
                other => other,
            },
            Method::Ryser => per_ryser(a),
            Method::Naive => per_naive(a),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported {
                what: format!("unknown method {s:?} (expected contraction, hessenberg, ryser or naive)"),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_matrix, Family};

    #[test]
    fn hessenberg_accepts_transposed_shape() {
        let lee = family_matrix(Family::Lee, 7).unwrap();
        assert_eq!(Method::Hessenberg.evaluate(&lee).unwrap(), 18.into());
        let dense = IntMatrix::filled(3, 3, 1).unwrap();
        assert!(matches!(
            Method::Hessenberg.evaluate(&dense),
            Err(Error::NotLowerHessenberg { row: 1, col: 3 })
        ));
    }

    #[test]
    fn all_methods_agree_on_h8() {
        let h8 = family_matrix(Family::H, 8).unwrap();
        for method in Method::ALL {
            assert_eq!(method.evaluate(&h8).unwrap(), 34.into(), "{method}");
        }
    }

    #[test]
    fn names_parse() {
        for method in Method::ALL {
            assert_eq!(method.name().parse::<Method>().unwrap(), method);
        }
        assert!("gauss".parse::<Method>().is_err());
    }
}
