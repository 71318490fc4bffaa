use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("range order violation: need lo < hi, got ({lo}, {hi}]")]
    RangeOrder { lo: u64, hi: u64 },

    #[error("segment size must be positive")]
    ZeroSegment,

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("modulus {0} is below 2")]
    ModulusTooSmall(u64),

    #[error("{n} is outside the sieved range ({lo}, {hi}]")]
    CoverageGap { n: u64, lo: u64, hi: u64 },

    #[error("table lacks least-prime-factor data")]
    MissingFactors,

    #[error("floor decision for {value} is ambiguous at extended precision")]
    Ambiguous { value: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("residue class {a} mod {q} is not coprime")]
    NonCoprime { q: u64, a: u64 },

    #[error("evaluation routes disagree: {first} vs {second}")]
    RouteMismatch { first: f64, second: f64 },

    #[error("factorization of {0} failed")]
    Factorization(u64),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
