use thiserror::Error;

use crate::fock::FockState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("state {state} does not belong to the N={n} basis")]
    StateNotInBasis { state: FockState, n: u64 },

    #[error("basis holds N={basis} bosons but the parameters ask for N={params}")]
    BasisMismatch { basis: u64, params: u64 },

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("occupation fractions sum to {0}, expected 1")]
    ConstraintViolation(f64),

    #[error("phases are required when J != 0")]
    PhasesRequired,

    #[error("degenerate couplings: {0}")]
    DegenerateCouplings(&'static str),

    #[error("the double-well mapping requires eps = 0, got {0}")]
    NonzeroTilt(f64),

    #[error("no stationary point found")]
    NoStationaryPoint,

    #[error("branch energy undefined at ({0}, {1})")]
    BranchUndefined(f64, f64),

    #[error("no N <= {0} meets the tolerance")]
    NotFound(u64),
}
