use thiserror::Error;

/// Errors reported by quaternion, matrix, family, and search operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inverse (or conjugation) requested for the zero quaternion.
    #[error("quaternion is not invertible (zero norm)")]
    NotInvertible,

    /// An axis argument must be a unit pure quaternion.
    #[error("axis must be a unit pure quaternion (norm {norm}, real part {re})")]
    NotUnitPure { norm: f64, re: f64 },

    /// Operand shapes do not agree.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A permutation argument is not a bijection on `{0..n-1}`.
    #[error("invalid permutation of length {len}")]
    InvalidPermutation { len: usize },

    /// Diagonal equivalence moves require unit-norm entries.
    #[error("diagonal entry {index} has norm {norm}, expected 1")]
    NonUnitDiagonal { index: usize, norm: f64 },

    /// Dephasing divides by a first-row or first-column entry.
    #[error("cannot dephase: entry ({row}, {col}) has zero norm")]
    ZeroEntry { row: usize, col: usize },

    /// Adjoint-shaped input must have order divisible by the block count.
    #[error("order {order} is not a multiple of {required}")]
    IncompatibleOrder { order: usize, required: usize },

    /// Lifting requires the input to verify as a Hadamard matrix.
    #[error("input is not Hadamard within tolerance (max deviation {max_dev})")]
    NotHadamard { max_dev: f64 },

    /// Lifting requires the input to match the adjoint block pattern.
    #[error("input does not match the adjoint block pattern (max deviation {max_dev})")]
    NotCompliant { max_dev: f64 },

    /// A family parameter lies outside its admissible interval.
    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A family point where the construction formulas break down.
    #[error("degenerate family point: {0}")]
    DegenerateFamilyPoint(&'static str),

    /// Root-of-unity order and other positive integer arguments.
    #[error("argument {name} must be positive")]
    NonPositive { name: &'static str },

    /// Circulant-core search supports orders 3, 4, and 5 only.
    #[error("unsupported order {order} (expected 3, 4, or 5)")]
    UnsupportedOrder { order: usize },

    /// Classification requires an (approximate) solution of the defining equations.
    #[error("core residual {residual} exceeds {max} — not a circulant-core solution")]
    ResidualTooLarge { residual: f64, max: f64 },
}
