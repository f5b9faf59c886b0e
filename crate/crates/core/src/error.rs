use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("prefactors {0} and {1} differ by a non-integer or out-of-range amount")]
    NonAlignablePrefactor(String, String),
    #[error("leading coefficient is zero; series is not invertible")]
    NonUnitLeadingCoefficient,
    #[error("exponent {0} is outside the stored range")]
    ExponentOutOfRange(String),
    #[error("cannot parse rational {0:?}")]
    RationalParse(String),
    #[error("tau = {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(f64),
    #[error("invalid progression {p}n+{r}: {reason}")]
    InvalidProgression { p: i64, r: i64, reason: String },
    #[error("partition constraint sets both a minimum gap and a window")]
    ConflictingConstraint,
    #[error("enumeration and dynamic programming disagree at n = {0}")]
    OracleDisagreement(usize),
    #[error("level {0} exceeds the supported maximum of {1}")]
    LevelTooLarge(usize, usize),
    #[error("invalid minimal model label ({0}, {1})")]
    InvalidLabel(i64, i64),
    #[error("theta constant theta_{0}(0, tau) vanishes")]
    ThetaConstantVanishes(usize),
    #[error("division by a vanishing theta_1 or Lerch denominator")]
    ThetaZeroDivision,
    #[error("remainder depends on z: max deviation {0:e}")]
    ZDependenceDetected(f64),
    #[error("coefficient {index} = {value} is not within 1e-4 of an integer")]
    RoundingUnstable { index: usize, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
