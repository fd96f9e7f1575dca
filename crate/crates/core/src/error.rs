use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what}: value {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("matrix is not a density matrix: trace {trace}")]
    NotDensity { trace: f64 },

    #[error("adaptive quadrature did not converge on [{lo}, {hi}]")]
    Quadrature { lo: f64, hi: f64 },

    #[error("{0} is not a prime modulus")]
    NotPrime(u32),

    #[error("mismatched moduli {left} and {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("no sign change of the rate difference in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("ML search over 2^{dim} candidates exceeds the cap 2^{cap}")]
    SearchTooLarge { dim: usize, cap: usize },

    #[error("chi-square test needs at least 20 expected counts per cell, got {expected:.2}")]
    InsufficientSamples { expected: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
