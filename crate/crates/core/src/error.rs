use num_rational::BigRational;
use thiserror::Error;

/// Errors shared by every module of the crate. Rational payloads are boxed
/// to keep the enum small on the happy path.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("scalar multiple requires a positive count")]
    ZeroScalar,

    #[error("point {0} lies outside the unit interval")]
    OutsideUnitInterval(Box<BigRational>),

    #[error("no one-sided neighborhood on that side of {0}")]
    SideNotAdmissible(Box<BigRational>),

    #[error("interval [{0}, {1}] is empty or reversed")]
    EmptyInterval(Box<BigRational>, Box<BigRational>),

    #[error("{0} is not an interior point of the unit interval")]
    NotInteriorPoint(Box<BigRational>),

    #[error("germ at {found} is not a right germ at 3/5")]
    WrongGermSite { found: String },

    #[error("germ (value {value}, slope {slope}) has no integral lexicographic image")]
    NonIntegralCoordinate {
        value: Box<BigRational>,
        slope: num_bigint::BigInt,
    },

    #[error("invalid irrational description: {0}")]
    InvalidThetaSpec(String),

    #[error("description denotes the rational number {0}; an irrational is required")]
    RationalTheta(Box<BigRational>),

    #[error("left-cut oracle exhausted: {0}")]
    OracleExhausted(String),

    #[error("invalid enumeration: {0}")]
    InvalidEnumeration(String),

    #[error("invalid piecewise-linear description: {0}")]
    InvalidPwl(String),

    #[error("index must be at least 1")]
    ZeroIndex,

    #[error("size cap exceeded: {0}")]
    TooLarge(String),

    #[error("clipped line requires a nonzero slope")]
    ZeroSlope,
}

pub type Result<T> = std::result::Result<T, Error>;
