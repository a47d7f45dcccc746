//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("polynomial is not univariate in x{0}")]
    NotUnivariate(usize),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor list contains the zero polynomial")]
    ZeroDivisor,
    #[error("divisor list is empty")]
    EmptyDivisorList,

    #[error("edge is empty")]
    EmptyEdge,
    #[error("edge contains the element {0} twice")]
    DuplicateElement(String),
    #[error("grid has no edges")]
    NoEdges,
    #[error("divisor {index} is not lacunary for the given lambda")]
    DivisorNotLacunary { index: usize },
    #[error("Y_{var} is not contained in X_{var}")]
    PunctureNotContained { var: usize },
    #[error("ideal basis has not been verified as a Groebner basis for {0}")]
    BasisNotVerified(String),
    #[error("no generator has a pure power of x{var} as leading monomial")]
    UnboundedStaircase { var: usize },
    #[error("bounding box side {side} for x{var} does not contain the staircase")]
    BoxTooSmall { var: usize, side: u32 },

    #[error("edge {var} is not {lambda}-null")]
    EdgeNotNull { var: usize, lambda: u32 },
    #[error("alpha_{var} = {alpha} is not below the edge size {size}")]
    AlphaTooLarge { var: usize, alpha: u32, size: usize },
    #[error("x^alpha is not a monomial of f")]
    AlphaNotInSupport,
    #[error("multiplicity hypothesis fails for beta = {0:?}")]
    BetatViolated(Vec<u32>),
    #[error("the point domain is empty")]
    EmptyDomain,
    #[error("lambda must be uniform for this theorem")]
    NonUniformLambda,
    #[error("multiplicity t must be positive")]
    ZeroMultiplicity,
    #[error("deg_x{var}(f) = {degree} is not below a_{var} = {side}")]
    DegreeTooLarge { var: usize, degree: u32, side: usize },
    #[error("e_{var} = {e} is outside [0, {limit})")]
    InfeasibleE { var: usize, e: u32, limit: usize },
    #[error("criterion {0} does not apply to this domain")]
    CriterionDomainMismatch(&'static str),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// Stable machine-readable code, used on the CLI's standard error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::ModulusTooLarge(_) => "modulus-too-large",
            Error::MixedFields => "mixed-fields",
            Error::DivisionByZero => "division-by-zero",
            Error::RingMismatch => "ring-mismatch",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::VariableOutOfRange { .. } => "variable-out-of-range",
            Error::InexactDivision => "inexact-division",
            Error::NotUnivariate(_) => "not-univariate",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::ZeroDivisor => "zero-divisor",
            Error::EmptyDivisorList => "empty-divisor-list",
            Error::EmptyEdge => "empty-edge",
            Error::DuplicateElement(_) => "duplicate-element",
            Error::NoEdges => "no-edges",
            Error::DivisorNotLacunary { .. } => "divisor-not-lacunary",
            Error::PunctureNotContained { .. } => "puncture-not-contained",
            Error::BasisNotVerified(_) => "basis-not-verified",
            Error::UnboundedStaircase { .. } => "unbounded-staircase",
            Error::BoxTooSmall { .. } => "box-too-small",
            Error::EdgeNotNull { .. } => "edge-not-null",
            Error::AlphaTooLarge { .. } => "alpha-too-large",
            Error::AlphaNotInSupport => "alpha-not-in-support",
            Error::BetatViolated(_) => "betat-violated",
            Error::EmptyDomain => "empty-domain",
            Error::NonUniformLambda => "non-uniform-lambda",
            Error::ZeroMultiplicity => "zero-multiplicity",
            Error::DegreeTooLarge { .. } => "degree-too-large",
            Error::InfeasibleE { .. } => "infeasible-e",
            Error::CriterionDomainMismatch(_) => "criterion-domain-mismatch",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid-input",
            Error::InvariantViolated(_) => "internal",
        }
    }
}
