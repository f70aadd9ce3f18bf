use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field size {p}^{m} exceeds the configured limit of {limit} elements")]
    FieldTooLarge { p: u64, m: u32, limit: u64 },

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("degree bound r={r} must satisfy 1 <= r < p={p}")]
    DegreeBound { r: u32, p: u32 },

    #[error("the zero polynomial has no codeword weight or curve")]
    ZeroPolynomial,

    #[error("polynomial degree {deg} is divisible by the characteristic {p}")]
    DegreeDivisibleByP { deg: u32, p: u32 },

    #[error("search needs about {estimate:.3e} field operations, over the limit of {limit:.3e}")]
    Infeasible { estimate: f64, limit: f64 },

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("characteristic 2 is not supported here")]
    EvenCharacteristic,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
