use thiserror::Error;

/// Errors raised by the arithmetic and analytic layers.
///
/// Every variant maps to a stable upper-case name (see [`Error::name`]) used in
/// CLI reports, so callers can tell "enlarge the residue field" apart from
/// "raise the t-degree" without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("element is not a q^{depth}-th power in the working field{}", index.map(|i| format!(" (kappa_{i})")).unwrap_or_default())]
    NotAPower { depth: u32, index: Option<usize> },
    #[error("residue field too small: {0}")]
    ResidueFieldTooSmall(String),
    #[error("valuation {valuation} not divisible by {divisor}; enlarge the ramification index")]
    ValuationNotDivisible { valuation: i64, divisor: i64 },
    #[error("t-expansion does not decay below the threshold by degree {degree}")]
    TailNotConverged { degree: usize },
    #[error("Gauss norm is not below 1")]
    NormNotContracting,
    #[error("Newton polygon has no integral slope (valuation {valuation}, degree {degree})")]
    NoIntegralSlope { valuation: i64, degree: u64 },
    #[error("Artin-Schreier equation needs a ramified extension (valuation {})", .0.val)]
    NeedsRamification(Box<RamificationRequest>),
    #[error("residue Artin-Schreier equation has no root in the residue field")]
    ResidueUnsolvable,
    #[error("matrix is singular at the tracked precision")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("lattice reduction stalled")]
    Stall,
    #[error("iteration cap reached: {0}")]
    IterationCap(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("unsupported ramification: {0}")]
    UnsupportedRamification(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::NotAPower { .. } => "NOT_A_POWER",
            Error::ResidueFieldTooSmall(_) => "RESIDUE_FIELD_TOO_SMALL",
            Error::ValuationNotDivisible { .. } => "VALUATION_NOT_DIVISIBLE",
            Error::TailNotConverged { .. } => "TAIL_NOT_CONVERGED",
            Error::NormNotContracting => "NORM_NOT_CONTRACTING",
            Error::NoIntegralSlope { .. } => "NO_INTEGRAL_SLOPE",
            Error::NeedsRamification(_) => "NO_INTEGRAL_SLOPE",
            Error::ResidueUnsolvable => "RESIDUE_UNSOLVABLE",
            Error::Singular => "SINGULAR",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::Stall => "STALL",
            Error::IterationCap(_) => "ITERATION_CAP",
            Error::Overflow => "OVERFLOW",
            Error::UnsupportedRamification(_) => "UNSUPPORTED_RAMIFICATION",
            Error::InvalidConfig(_) => "INVALID_CONFIG",
            Error::Parse(_) => "PARSE",
        }
    }
}

/// Right-hand side `g` of an equation `y^q - y = g` with no root in the current working
/// field, as raw coefficient indices of `g = sum coeffs[i] u^(val + i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationRequest {
    pub field_id: u64,
    pub val: i64,
    pub coeffs: Vec<u32>,
    pub prec: Option<i64>,
}

pub type Result<T> = std::result::Result<T, Error>;
