use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term must be zero")]
    NonzeroConstantTerm,

    #[error("series constant term must be one")]
    ConstantTermNotOne,

    #[error("series constant term must be nonzero")]
    ZeroConstantTerm,

    #[error("n = {n} exceeds the limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("syntax error at byte {offset}: expected one of [{}], found {found}", expected.join(", "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("invalid number {0:?}")]
    InvalidNumber(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("matrix exponential overflowed")]
    Overflow,

    #[error("no convergence: doubling {from} -> {to} changed the value by {change:e} (tolerance {tolerance:e})")]
    NonConvergence {
        from: usize,
        to: usize,
        change: f64,
        tolerance: f64,
    },

    #[error("divergent integrand: {0}")]
    DivergentIntegrand(String),

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    QuadratureFailed { tolerance: f64, estimate: f64 },

    #[error("su(1,1) decomposition is singular: |mu| = {mu_abs:e}")]
    SingularDecomposition { mu_abs: f64 },

    #[error("su(1,1) reconstruction residual {residual:e} exceeds {tolerance:e}")]
    ReconstructionFailed { residual: f64, tolerance: f64 },

    #[error("term-by-term integration of the Bell-polynomial series diverges: every y-integral of B_n(y) is infinite")]
    TermwiseDivergence,

    #[error("not representable on the real axis: {0}")]
    NotRealAxis(String),

    #[error("{method} does not support {model}")]
    Unsupported { method: String, model: String },

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag for JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OrderMismatch { .. } => "order_mismatch",
            Error::NonzeroConstantTerm => "nonzero_constant_term",
            Error::ConstantTermNotOne => "constant_term_not_one",
            Error::ZeroConstantTerm => "zero_constant_term",
            Error::LimitExceeded { .. } => "limit_exceeded",
            Error::Parse { .. } => "parse",
            Error::InvalidNumber(_) => "invalid_number",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DimensionTooSmall { .. } => "dimension_too_small",
            Error::Overflow => "overflow",
            Error::NonConvergence { .. } => "non_convergence",
            Error::DivergentIntegrand(_) => "divergent_integrand",
            Error::QuadratureFailed { .. } => "quadrature_failed",
            Error::SingularDecomposition { .. } => "singular_decomposition",
            Error::ReconstructionFailed { .. } => "reconstruction_failed",
            Error::TermwiseDivergence => "termwise_divergence",
            Error::NotRealAxis(_) => "not_real_axis",
            Error::Unsupported { .. } => "unsupported",
            Error::UnknownName(_) => "unknown_name",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
