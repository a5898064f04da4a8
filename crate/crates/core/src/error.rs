use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("eigenvalue clusters could not be separated at chain level {level}: {detail}")]
    Cluster { level: usize, detail: String },
    #[error("quadrature did not converge for {key}: estimated error {estimate:e}")]
    Quadrature { key: String, estimate: f64 },
    #[error("sector is empty: {0}")]
    EmptySector(String),
    #[error("parity is unavailable for an asymmetric trap")]
    NoParity,
    #[error("wavefunctions are unavailable for this trap")]
    NoWavefunctions,
    #[error("numerical failure: {0}")]
    Numeric(String),
}

impl Error {
    /// True for failures of the numerical pipeline rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Cluster { .. }
                | Error::Quadrature { .. }
                | Error::Numeric(_)
                | Error::EmptySector(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
