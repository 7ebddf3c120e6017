use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("ragged input: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not lower Hessenberg: entry ({row},{col}) lies above the superdiagonal and is nonzero")]
    NotLowerHessenberg { row: usize, col: usize },

    #[error("{method} refuses a {n}x{n} matrix (size guard n <= {max})")]
    SizeGuard {
        method: &'static str,
        n: usize,
        max: usize,
    },

    #[error("negative subscript {0} is not supported")]
    NegativeIndex(i64),

    #[error("family {family} is not defined for order n = {n} (requires n >= {min})")]
    InvalidOrder {
        family: &'static str,
        n: usize,
        min: usize,
    },

    #[error("tridiagonal {band} band has {found} entries, expected {expected}")]
    BandLength {
        band: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{what}")]
    Unsupported { what: String },

    #[error("step r = {r} out of range 1..={max} for order n = {n}")]
    StepOutOfRange { r: usize, n: usize, max: usize },

    #[error("index {index} out of range 1..={len} for the {axis}")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        len: usize,
    },

    #[error("contraction needs two distinct lines, got i = j = {0}")]
    SameLine(usize),

    #[error("entry ({row},{col}) is zero; contraction needs it nonzero")]
    ZeroPivot { row: usize, col: usize },

    #[error("line {line} has a third nonzero at ({row},{col}); not contractible there")]
    ExtraNonzero { line: usize, row: usize, col: usize },

    #[error("contraction stalled at a {n}x{n} matrix, beyond every oracle's size guard")]
    NotContractible { n: usize },

    #[error("{theorem} is only claimed for n >= {floor}, got n = {n}")]
    BelowFloor {
        theorem: String,
        n: usize,
        floor: usize,
    },

    #[error("empty sweep range: n_min = {n_min} > n_max = {n_max}")]
    EmptyRange { n_min: usize, n_max: usize },

    #[error(
        "evaluator disagreement on {theorem} at n = {n}: {method} gave {computed}, ryser gave {oracle}"
    )]
    OracleDisagreement {
        theorem: String,
        n: usize,
        method: &'static str,
        computed: BigInt,
        oracle: BigInt,
    },
}
