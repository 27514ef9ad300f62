use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("family `{0}` has no uniform sampler")]
    UnsupportedFamily(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Binomial inversion produced a negative term, so the input is not
    /// `C`-decomposable.
    #[error("sequence is not {c}-decomposable: inverted term D_{n} is negative")]
    DecompositionViolation { c: u64, n: usize },

    #[error("brute force for `{family}` is limited to n <= {max}, got n = {n}")]
    TooLarge {
        family: &'static str,
        n: usize,
        max: usize,
    },

    #[error("degenerate quantity: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
