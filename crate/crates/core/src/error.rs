use thiserror::Error;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error in `{param}`: {reason}")]
    Domain { param: &'static str, reason: String },

    /// An iterative or adaptive procedure stopped before meeting its tolerance.
    #[error("{what} did not converge: achieved {achieved:e} (required {required:e}), best estimate {best}")]
    NonConvergence {
        what: &'static str,
        achieved: f64,
        required: f64,
        best: f64,
    },

    /// A non-finite intermediate value was produced.
    #[error("numeric failure in {what}: {detail}")]
    Numeric { what: &'static str, detail: String },

    /// An internal identity that must hold analytically was violated.
    #[error("consistency check `{what}` failed: residual {residual:e} exceeds {bound:e}")]
    Consistency {
        what: &'static str,
        residual: f64,
        bound: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        param,
        reason: reason.into(),
    }
}
