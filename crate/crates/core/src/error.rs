use thiserror::Error;

/// Failures surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("{0}")]
    Domain(String),

    /// An iterative procedure hit its cap before meeting its tolerance.
    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    /// The boundary Gram matrix cannot be factorized reliably.
    #[error("ill-conditioned Gram matrix (condition {condition:.3e}, limit {limit:.1e}); reduce the basis order")]
    IllConditioned { condition: f64, limit: f64 },

    /// A maximization found evidence that its objective is not unimodal.
    #[error("search failure: {0}")]
    SearchFailure(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the numerical failure classes (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
