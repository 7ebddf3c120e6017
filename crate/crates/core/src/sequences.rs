//! Fibonacci and Lucas numbers and their partial sums.
//!
//! `F_0 = 0, F_1 = 1` and `L_0 = 2, L_1 = 1`, both with `X_{n+1} = X_n + X_{n-1}`.
//! Everything is computed by a single linear pass; the partial sums add the
//! terms directly rather than using the `X_{m+2} - 1` shortcut, so the
//! shortcut stays available as an independent check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Fibonacci,
    Lucas,
    FibPartialSum,
    LucasPartialSum,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [
        SequenceKind::Fibonacci,
        SequenceKind::Lucas,
        SequenceKind::FibPartialSum,
        SequenceKind::LucasPartialSum,
    ];

    /// Term `n`; negative subscripts are rejected.
    pub fn term(self, n: i64) -> Result<BigInt> {
        let n = usize::try_from(n).map_err(|_| Error::NegativeIndex(n))?;
        Ok(match self {
            SequenceKind::Fibonacci => fib(n),
            SequenceKind::Lucas => lucas(n),
            SequenceKind::FibPartialSum => fib_sum(n),
            SequenceKind::LucasPartialSum => lucas_sum(n),
        })
    }

    /// Terms `0..=n_max` in order, in one pass.
    pub fn terms(self, n_max: usize) -> Vec<BigInt> {
        let base = match self {
            SequenceKind::Fibonacci | SequenceKind::FibPartialSum => {
                Walk::new(0, 1).take(n_max + 1).collect::<Vec<_>>()
            }
            SequenceKind::Lucas | SequenceKind::LucasPartialSum => {
                Walk::new(2, 1).take(n_max + 1).collect::<Vec<_>>()
            }
        };
        match self {
            SequenceKind::Fibonacci | SequenceKind::Lucas => base,
            SequenceKind::FibPartialSum | SequenceKind::LucasPartialSum => base
                .into_iter()
                .scan(BigInt::zero(), |acc, x| {
                    *acc += x;
                    Some(acc.clone())
                })
                .collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Fibonacci => "FIBONACCI",
            SequenceKind::Lucas => "LUCAS",
            SequenceKind::FibPartialSum => "FIB_PARTIAL_SUM",
            SequenceKind::LucasPartialSum => "LUCAS_PARTIAL_SUM",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SequenceKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported {
                what: format!("unknown sequence kind {s:?}"),
            })
    }
}

/// Iterator over a Fibonacci-type recurrence started at `(x0, x1)`.
struct Walk {
    cur: BigInt,
    next: BigInt,
}

impl Walk {
    fn new(x0: i64, x1: i64) -> Self {
        Walk {
            cur: x0.into(),
            next: x1.into(),
        }
    }
}

impl Iterator for Walk {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = &self.cur + &self.next;
        let out = std::mem::replace(&mut self.cur, std::mem::replace(&mut self.next, after));
        Some(out)
    }
}

pub fn fib(n: usize) -> BigInt {
    Walk::new(0, 1).nth(n).expect("walk is infinite")
}

pub fn lucas(n: usize) -> BigInt {
    Walk::new(2, 1).nth(n).expect("walk is infinite")
}

/// `F_0 + F_1 + ... + F_m`.
pub fn fib_sum(m: usize) -> BigInt {
    Walk::new(0, 1).take(m + 1).sum()
}

/// `L_0 + L_1 + ... + L_m`.
pub fn lucas_sum(m: usize) -> BigInt {
    Walk::new(2, 1).take(m + 1).sum()
}
