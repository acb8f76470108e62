use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("product of zero and infinity is undefined")]
    UndefinedProduct,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operand is infinite")]
    InfiniteOperand,
    #[error("sign could not be certified within the precision cap")]
    PrecisionExhausted,
    #[error("invalid base {0}: must be an integer >= 2 that is not a perfect power")]
    InvalidBase(u32),
    #[error("element has norm > 1 and no residue")]
    OutOfUnitBall,
    #[error("radius must be a positive finite magnitude")]
    InvalidRadius,
    #[error("balls mix open and closed kinds")]
    MixedOpenness,
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("family does not cover the projective line")]
    NotACover,
    #[error("diameter outside the segment range")]
    OutOfRange,
    #[error("type 4 query did not stabilize within depth {0}")]
    Type4Undetermined(usize),
    #[error("target coincides with the base point")]
    SamePoint,
    #[error("operation not supported for this point type")]
    UnsupportedPointType,
    #[error("elements are not nested")]
    NotNested,
    #[error("invalid ball chain: {0}")]
    InvalidChain(String),
    #[error("too many points ({0}); the limit is 1000")]
    TooManyPoints(usize),
    #[error("syntax error at {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String> },
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } => 1,
            Error::Type4Undetermined(_) | Error::PrecisionExhausted => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
