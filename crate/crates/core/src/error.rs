use thiserror::Error;

/// Errors raised by the cost model, solvers and simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (negative time,
    /// malformed table, unsorted sweep grid, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The inputs are well formed but violate a precondition of the
    /// operation, e.g. a zero update rate handed to the optimizer.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrand is not finite at t = {at}")]
    NonFinite { at: f64 },

    #[error("no finite root: no sign change up to x = {reached}")]
    NoFiniteRoot { reached: f64 },

    #[error("root finding did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("infinite expected cost: {0}")]
    InfiniteExpectedCost(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::NoFiniteRoot { .. }
                | Error::NoConvergence { .. }
                | Error::Numeric(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
