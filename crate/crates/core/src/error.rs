use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the quantity is defined.
    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A hypergeometric series at unit argument fails the convergence condition.
    #[error("{op}: series diverges: {msg}")]
    Divergent { op: &'static str, msg: String },

    /// An iterative procedure hit its configured limit before reaching the
    /// requested tolerance.
    #[error("{op}: not converged: {msg}")]
    NotConverged { op: &'static str, msg: String },

    /// Two routes to the same quantity disagree, or an intermediate value
    /// that must be nonnegative came out negative.
    #[error("{op}: consistency failure: {msg}")]
    Consistency { op: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { op, msg: msg.into() }
}

pub(crate) fn divergent(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Divergent { op, msg: msg.into() }
}

pub(crate) fn not_converged(op: &'static str, msg: impl Into<String>) -> Error {
    Error::NotConverged { op, msg: msg.into() }
}

pub(crate) fn consistency(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Consistency { op, msg: msg.into() }
}
