//! Kernel error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("variable-count mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("growth function evaluation point {k} exceeds bound {max}")]
    OutOfRange { k: u32, max: u32 },
    #[error("cannot raise precision from {from} to {to}")]
    PrecisionIncrease { from: u32, to: u32 },
    #[error("divisor is not X_n-distinguished")]
    NotDistinguished,
    #[error("weight search exhausted its budget")]
    WeightSearchExhausted,
    #[error("series is not a unit: it must be a nonzero field constant mod Y")]
    NotAUnit,
    #[error("contraction certificate failed: |h| >= p^(c_n*s) for the given weights")]
    ContractionViolated,
    #[error("contraction iteration exceeded its certified bound")]
    IterationBudgetExceeded,
    #[error("not a Weierstrass polynomial")]
    NotWeierstrass,
    #[error("series is not divisible by Y^{d}")]
    NotDivisibleByYd { d: u32 },
    #[error("zero series")]
    ZeroSeries,
    #[error("operation would leave no Y-precision")]
    PrecisionUnderflow,
    #[error("mod-Y factors are not coprime")]
    NotCoprime,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("degree {degree} exceeds the supported bound {max}")]
    DegreeTooLarge { degree: u32, max: u32 },
    #[error("no Y-free term with a positive X_n-exponent")]
    HypothesisFails,
    #[error("X-exponent arithmetic overflow")]
    DegreeOverflow,
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("coefficient parse error at byte {pos}: {msg}")]
    CoefficientParseError { pos: usize, msg: String },
    #[error("Y-exponent {k} is not below the precision {prec}")]
    YExponentExceedsPrecision { k: u32, prec: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Machine-readable tag, used as `error.kind` in CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch => "field_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::OutOfRange { .. } => "out_of_range",
            Error::PrecisionIncrease { .. } => "precision_increase",
            Error::NotDistinguished => "not_distinguished",
            Error::WeightSearchExhausted => "weight_search_exhausted",
            Error::NotAUnit => "not_a_unit",
            Error::ContractionViolated => "contraction_violated",
            Error::IterationBudgetExceeded => "iteration_budget_exceeded",
            Error::NotWeierstrass => "not_weierstrass",
            Error::NotDivisibleByYd { .. } => "not_divisible_by_y_power",
            Error::ZeroSeries => "zero_series",
            Error::PrecisionUnderflow => "precision_underflow",
            Error::NotCoprime => "not_coprime",
            Error::NotMonic => "not_monic",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::DegreeTooLarge { .. } => "degree_too_large",
            Error::HypothesisFails => "hypothesis_fails",
            Error::DegreeOverflow => "degree_overflow",
            Error::SyntaxError { .. } => "syntax_error",
            Error::CoefficientParseError { .. } => "coefficient_parse_error",
            Error::YExponentExceedsPrecision { .. } => "y_exponent_exceeds_precision",
            Error::InvalidParameter(_) => "invalid_parameter",
        }
    }
}
