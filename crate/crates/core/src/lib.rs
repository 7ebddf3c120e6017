//! Exact permanents of integer matrices.
//!
//! The production evaluators are column contraction ([`per_contraction`]) and
//! the lower-Hessenberg expansion ([`per_hessenberg`]), both `O(n²)` on the
//! banded families in [`families`]. Brute-force permutation expansion
//! ([`per_naive`]) and Ryser's formula ([`per_ryser`]) act as oracles, and
//! [`det_bareiss`] supplies exact determinants for the permanent/determinant
//! conversions.
//!
//! [`verify`] sweeps the Fibonacci and Lucas permanent identities for the
//! H, K, M, N and Lee families and checks every step of the contraction
//! chains against their closed forms.

pub mod contraction;
pub mod error;
pub mod families;
pub mod matrix;
pub mod method;
pub mod permanent;
pub mod sequences;
pub mod verify;

pub use contraction::{
    contract_column, contract_row, find_contractible_column, per_contraction, per_contraction_value,
    ContractionKind, ContractionStep, ContractionTrace, Pivot,
};
pub use error::{Error, Result};
pub use families::{build_family, expected_contraction, family_matrix, proof_displays, Family, FamilySpec};
pub use matrix::IntMatrix;
pub use method::Method;
pub use permanent::{det_bareiss, per_hessenberg, per_naive, per_ryser, NAIVE_MAX_N, RYSER_MAX_N};
pub use sequences::{fib, fib_sum, lucas, lucas_sum, SequenceKind};
pub use verify::{
    adjudicate_t3, claimed_value, verify_perdet, verify_theorem, verify_trace, IdentityReport, Status,
    TheoremId, TheoremTag, TraceReport, Variant,
};

pub use num_bigint::BigInt;
