use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels and the verifiers built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not exactly divisible")]
    NotDivisible,

    #[error("limit at q = 1 does not exist (pole order {0})")]
    PoleAtOne(u32),

    #[error("bad arity {arity}: {reason}")]
    BadArity { arity: usize, reason: &'static str },

    #[error("closed form and recursive bracket differ by {ratio} at n = {n}, expected +1 or -1")]
    InconsistentSign { n: usize, ratio: String },

    #[error("word sum is not a multiple of a single generator: {0}")]
    NotProportional(String),

    #[error("fundamental identity residual unexpectedly vanished for n = {0}")]
    UnexpectedZero(usize),

    #[error("canonical subalgebra coefficient vanished for n = {0}")]
    ZeroCoefficient(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
