use core::fmt;

use alloc::string::String;

/// Errors raised by the equilibrium engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Learning-curve parameters must all be strictly positive and finite.
    InvalidCurve { z: f64, alpha: f64, beta: f64 },
    /// A group set needs at least one label and no duplicates.
    InvalidGroups(String),
    /// A sample count, cost, value or weight failed its domain check.
    InvalidValue { what: &'static str, index: usize, value: f64 },
    /// Two vectors that must be indexed by the same groups disagree in length.
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    /// Target weights do not sum to one.
    TargetNotNormalized { sum: f64 },
    /// The seller count is zero.
    NoSellers,
    /// Exact Shapley enumeration is capped; use the symmetric closed form instead.
    TooManySellers { sellers: usize, cap: usize },
    /// Index out of range for sellers or buyers.
    IndexOutOfRange { what: &'static str, index: usize, len: usize },
    /// Closed-form production was requested for a group whose cost exceeds its threshold.
    FormationViolation { kappa: f64, tau: f64 },
    /// Demographics are undefined when no group is produced.
    UndefinedDemographics,
    /// The monetized set passed to a KKT routine is empty.
    EmptyMonetizedSet,
    /// A monetized group carries zero potential value.
    ZeroPotential { group: usize },
    /// The intervention's marginal cost is not positive.
    NonPositiveInterventionCost,
    /// Exhaustive subset maximization is capped.
    TooManyGroups { groups: usize, cap: usize },
    /// The target vector cannot be used for the requested construction.
    DegenerateTarget(&'static str),
    /// A scalar root could not be bracketed.
    NoRoot,
    /// Best-response dynamics did not settle within the iteration budget.
    Diverged { iterations: usize, last_change: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCurve { z, alpha, beta } => write!(
                f,
                "learning curve parameters must be positive (Z={z}, alpha={alpha}, beta={beta})"
            ),
            Error::InvalidGroups(msg) => write!(f, "invalid group set: {msg}"),
            Error::InvalidValue { what, index, value } => {
                write!(f, "invalid {what} at index {index}: {value}")
            }
            Error::DimensionMismatch { what, expected, found } => {
                write!(f, "{what}: expected {expected} entries, found {found}")
            }
            Error::TargetNotNormalized { sum } => {
                write!(f, "target vector must sum to 1 (sum = {sum})")
            }
            Error::NoSellers => write!(f, "market needs at least one seller"),
            Error::TooManySellers { sellers, cap } => write!(
                f,
                "{sellers} sellers exceed the exact Shapley cap of {cap}; use the symmetric form"
            ),
            Error::IndexOutOfRange { what, index, len } => {
                write!(f, "{what} index {index} out of range (len {len})")
            }
            Error::FormationViolation { kappa, tau } => write!(
                f,
                "marginal cost {kappa} exceeds participation threshold {tau}; no production"
            ),
            Error::UndefinedDemographics => {
                write!(f, "demographics undefined: no group is produced")
            }
            Error::EmptyMonetizedSet => write!(f, "monetized set is empty"),
            Error::ZeroPotential { group } => {
                write!(f, "group {group} has zero potential value")
            }
            Error::NonPositiveInterventionCost => {
                write!(f, "intervention marginal cost must be positive")
            }
            Error::TooManyGroups { groups, cap } => {
                write!(f, "{groups} groups exceed the subset enumeration cap of {cap}")
            }
            Error::DegenerateTarget(msg) => write!(f, "degenerate target vector: {msg}"),
            Error::NoRoot => write!(f, "no sign change: root cannot be bracketed"),
            Error::Diverged { iterations, last_change } => write!(
                f,
                "best-response dynamics did not converge after {iterations} rounds (last change {last_change:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
