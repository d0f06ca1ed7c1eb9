use thiserror::Error;

/// Everything that can go wrong while building or evaluating means.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval ({lo}, {hi}): need finite lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("point {x} lies outside the open interval ({lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("NotIndependent: wronskian {wronskian} is zero within tolerance")]
    NotIndependent { wronskian: f64 },

    #[error("NotPositive: {what} is not positive at x = {at}")]
    NotPositive { what: String, at: f64 },

    #[error("AnchorNotPositive: v({anchor}) <= 0")]
    AnchorNotPositive { anchor: f64 },

    #[error("DomainEmpty: positivity regions do not meet the requested domain")]
    DomainEmpty,

    #[error("NotMonotone: generator derivative changes sign near x = {at}")]
    NotMonotone { at: f64 },

    #[error("VanishingDerivative: |f'({x})| below tolerance")]
    VanishingDerivative { x: f64 },

    #[error("InversionFailure: target {target}, best residual {residual}")]
    InversionFailure { target: f64, residual: f64 },

    #[error("DegeneratePair: x = {x} and y = {y} are too close")]
    DegeneratePair { x: f64, y: f64 },

    #[error("DenominatorUnderflow: |f(y) - f(M)| = {value}")]
    DenominatorUnderflow { value: f64 },

    #[error("StencilOutOfDomain: stencil of step {h} around ({x}, {x}) leaves the domain")]
    StencilOutOfDomain { x: f64, h: f64 },

    #[error("NonConstantSchwarzian: sampled spread {spread} exceeds {threshold}")]
    NonConstantSchwarzian { spread: f64, threshold: f64 },

    #[error("NonPositiveEta: delta / (alpha * beta) = {ratio} is not positive")]
    NonPositiveEta { ratio: f64 },

    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short stable name, used in CLI reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInterval { .. } => "InvalidInterval",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::NotIndependent { .. } => "NotIndependent",
            Error::NotPositive { .. } => "NotPositive",
            Error::AnchorNotPositive { .. } => "AnchorNotPositive",
            Error::DomainEmpty => "DomainEmpty",
            Error::NotMonotone { .. } => "NotMonotone",
            Error::VanishingDerivative { .. } => "VanishingDerivative",
            Error::InversionFailure { .. } => "InversionFailure",
            Error::DegeneratePair { .. } => "DegeneratePair",
            Error::DenominatorUnderflow { .. } => "DenominatorUnderflow",
            Error::StencilOutOfDomain { .. } => "StencilOutOfDomain",
            Error::NonConstantSchwarzian { .. } => "NonConstantSchwarzian",
            Error::NonPositiveEta { .. } => "NonPositiveEta",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
