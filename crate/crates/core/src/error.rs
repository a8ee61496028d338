use thiserror::Error;

use crate::state::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {offdiag:e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(Violation),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("Kraus operators are not complete (deviation {0:e})")]
    IncompleteKraus(f64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("integrator produced an invalid state: {0}")]
    Integrator(String),

    #[error("steady state is ambiguous: {0}")]
    AmbiguousSteadyState(String),

    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::Step {
            step,
            source: Box::new(self),
        }
    }

    /// True when the root cause is bad input rather than a numerical failure.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Format(_) | Error::Io(_) | Error::Domain(_) | Error::InvalidDimensions(_) => true,
            Error::Step { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
