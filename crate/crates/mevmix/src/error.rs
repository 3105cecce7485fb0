//! Error and validation-violation types shared across the crate.

use std::fmt;

/// Errors raised by evaluation, sampling, and tail-dependence operations.
///
/// Constraint checking on models and copulas is report-style (see
/// [`Violation`] and [`CopulaViolation`]); `Error` covers the hard
/// failures: out-of-domain arguments, shape mismatches, and unsupported
/// operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument is outside its admissible range.
    Domain { what: &'static str, value: f64 },
    /// A vector argument does not match the copula/model dimension.
    DimensionMismatch { expected: usize, actual: usize },
    /// A subset mask is empty or refers to coordinates beyond the dimension.
    InvalidSubset { detail: String },
    /// A configuration parameter is unusable (e.g. too few Monte Carlo draws).
    Config { detail: String },
    /// A model-spec document could not be parsed into a model.
    Parse { detail: String },
    /// The requested operation is not defined for this value
    /// (e.g. sampling a column-deficient derived M4 copula).
    Unsupported { detail: String },
    /// The model fails its structural constraints; carries the report.
    InvalidModel { violations: Vec<Violation> },
    /// An inclusion-exclusion denominator collapsed to a non-positive value
    /// through cancellation; the masses are reported for diagnosis.
    DegenerateDenominator {
        numerator_mass: f64,
        denominator_mass: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "{} out of range: {}", what, value)
            }
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, actual)
            }
            Error::InvalidSubset { detail } => write!(f, "invalid subset: {}", detail),
            Error::Config { detail } => write!(f, "invalid configuration: {}", detail),
            Error::Parse { detail } => write!(f, "cannot parse model spec: {}", detail),
            Error::Unsupported { detail } => write!(f, "unsupported operation: {}", detail),
            Error::InvalidModel { violations } => {
                write!(f, "invalid model ({} violations):", violations.len())?;
                for v in violations {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
            Error::DegenerateDenominator {
                numerator_mass,
                denominator_mass,
            } => write!(
                f,
                "degenerate tail-dependence denominator {} (numerator {})",
                denominator_mass, numerator_mass
            ),
        }
    }
}

impl std::error::Error for Error {}

/// One violated constraint found by copula validation.
///
/// Coordinates are reported 1-based, matching the model-spec file format.
#[derive(Debug, Clone, PartialEq)]
pub enum CopulaViolation {
    ZeroDimension,
    DimensionTooLarge { dim: usize, max: usize },
    GumbelParamOutOfRange { r: f64 },
    M4NegativeCoefficient { l: usize, k: usize, coord: usize, value: f64 },
    M4ColumnSum { coord: usize, sum: f64 },
}

impl fmt::Display for CopulaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopulaViolation::ZeroDimension => write!(f, "dimension must be at least 1"),
            CopulaViolation::DimensionTooLarge { dim, max } => {
                write!(f, "dimension {} exceeds the supported maximum {}", dim, max)
            }
            CopulaViolation::GumbelParamOutOfRange { r } => {
                write!(f, "gumbel parameter r out of (0, 1]: {}", r)
            }
            CopulaViolation::M4NegativeCoefficient { l, k, coord, value } => write!(
                f,
                "m4 coefficient a[{}][{}][{}] is negative: {}",
                l, k, coord, value
            ),
            CopulaViolation::M4ColumnSum { coord, sum } => write!(
                f,
                "m4 coefficients for coordinate {} sum to {} instead of 1",
                coord, sum
            ),
        }
    }
}

/// One violated constraint found by model validation.
///
/// Component indices and coordinates are reported 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ZeroDimension,
    DimensionTooLarge { dim: usize, max: usize },
    NoComponents,
    AlphaOutOfRange { component: usize, alpha: f64 },
    NegativeWeight { component: usize, coord: usize, value: f64 },
    WeightColumnSum { coord: usize, sum: f64 },
    ComponentDimMismatch { component: usize, expected: usize, actual: usize },
    Copula { component: usize, violation: CopulaViolation },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDimension => write!(f, "dimension must be at least 1"),
            Violation::DimensionTooLarge { dim, max } => {
                write!(f, "dimension {} exceeds the supported maximum {}", dim, max)
            }
            Violation::NoComponents => write!(f, "model has no mixture components"),
            Violation::AlphaOutOfRange { component, alpha } => {
                write!(f, "component {}: alpha out of (0, 1]: {}", component, alpha)
            }
            Violation::NegativeWeight { component, coord, value } => write!(
                f,
                "component {}: weight for coordinate {} is negative: {}",
                component, coord, value
            ),
            Violation::WeightColumnSum { coord, sum } => write!(
                f,
                "weights for coordinate {} sum to {} instead of 1",
                coord, sum
            ),
            Violation::ComponentDimMismatch { component, expected, actual } => write!(
                f,
                "component {}: copula dimension {} does not match model dimension {}",
                component, actual, expected
            ),
            Violation::Copula { component, violation } => {
                write!(f, "component {}: {}", component, violation)
            }
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
