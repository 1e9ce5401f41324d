use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid well parameters: {0}")]
    InvalidWell(String),

    #[error("well admits no bound states (K*a = {ka:e})")]
    NoBoundStates { ka: f64 },

    #[error("ancillary level is occupied (population {population:e})")]
    AncillaOccupied { population: f64 },

    #[error("invalid level pair ({n}, {m})")]
    BadLevels { n: usize, m: usize },

    #[error("dipole moment between levels {n} and {m} vanishes")]
    ZeroDipole { n: usize, m: usize },

    #[error("invalid bit string: {0}")]
    InvalidBitString(String),

    #[error("invalid realization level: {0}")]
    InvalidLevel(String),

    #[error("invalid temperature: {0}")]
    InvalidTemperature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
