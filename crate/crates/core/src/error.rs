use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signal has no component above the trimming threshold")]
    EmptySignal,

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("invalid autocorrelation: {0}")]
    InvalidAutocorrelation(String),

    #[error("root finding did not converge: worst residual {residual:.3e} exceeds tol_root bound {bound:.3e}")]
    NonConvergence { residual: f64, bound: f64 },

    #[error("reflection pairing failed (tol_pair = {tol:.1e}): {reason}")]
    PairingFailure { reason: String, tol: f64 },

    #[error("imaginary residue {residue:.3e} exceeds tol_real bound {bound:.3e}; zero set is not conjugate-closed")]
    RealnessViolation { residue: f64, bound: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("instance generation failed: {0}")]
    GenerationFailure(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Configuration mistakes as opposed to failures of the mathematics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::InvalidParameter(_))
    }
}
