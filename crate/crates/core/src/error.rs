use thiserror::Error;

/// Errors surfaced by the exact-arithmetic kernel and the layers above it.
///
/// Structural misuse (mismatched variable contexts, out-of-range indices)
/// panics instead: those are caller bugs, not data conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("power exponent out of range at byte {position}")]
    ExponentOverflow { position: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("series constant term is singular; cannot invert")]
    SingularConstantTerm,

    #[error("series truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("operation requires a single-derivation tower (found {0} derivations)")]
    SingleDerivationOnly(usize),

    #[error("derivations {i} and {j} do not commute on `{variable}`")]
    NonCommutingDerivations { i: usize, j: usize, variable: String },

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("fundamental-matrix conditions failed: {0}")]
    FundamentalCheck(String),

    #[error("series membership in the base field failed: {0}")]
    Membership(String),

    #[error(
        "solution space unstable under truncation: dimension {dim_low} at order {order_low} \
         vs dimension {dim_high} at order {order_high}"
    )]
    Unstable {
        order_low: usize,
        dim_low: usize,
        order_high: usize,
        dim_high: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
