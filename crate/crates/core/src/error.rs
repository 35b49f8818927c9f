use thiserror::Error;

/// Errors raised by the evaluation engine.
///
/// Each variant names the invariant that failed so that command-line
/// callers can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error(
        "archimedean admissibility violated: Re mu_{index} = {re_mu} is below the lower bound {bound} (Re mu_j >= {bound} required)"
    )]
    Admissibility { index: usize, re_mu: f64, bound: f64 },

    #[error("gamma pole at the central point: mu_{index} = -1/2")]
    CentralPole { index: usize },

    #[error("root number must be unitary: |kappa| = {modulus}")]
    RootNumber { modulus: f64 },

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("coefficient exhaustion: a_{requested} requested but only {available} coefficients are available")]
    CoefficientExhaustion { requested: usize, available: usize },

    #[error("evaluation strip violated: Re s = {sigma} outside ({min}, {max})")]
    Strip { sigma: f64, min: f64, max: f64 },

    #[error("pole on contour: the cutoff integrand has a pole at s = 0, choose a nonzero abscissa")]
    PoleOnContour,

    #[error("contour specification invalid: {0}")]
    Contour(String),

    #[error("unsupported by this oracle: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// True for errors caused by user input (bad documents, inadmissible
    /// parameters, insufficient coefficients), as opposed to numerical
    /// breakdown.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Contour(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
