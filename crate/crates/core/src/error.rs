use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("grid of size {got} is too small, at least {required} points are needed to avoid aliasing")]
    GridTooSmall { required: usize, got: usize },

    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("lacunary index {0} does not fit in a dense coefficient vector")]
    DegreeOverflow(usize),

    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("invalid step function: {0}")]
    InvalidStep(String),

    #[error("coefficient sequence is not positive and nonincreasing at index {0}")]
    NotNonincreasing(usize),

    #[error("no monotone start index j0 <= {limit} found (parameters too extreme)")]
    NoMonotoneStart { limit: usize },

    #[error("matrix dimension {n} exceeds the dense decomposition cap {cap}")]
    MatrixTooLarge { n: usize, cap: usize },

    #[error("dense decomposition failed for a {n}x{n} matrix (max |entry| = {max_abs})")]
    Decomposition { n: usize, max_abs: f64 },

    #[error("Gram matrix is indefinite: smallest eigenvalue {0}")]
    IndefiniteGram(f64),

    #[error("adaptive integration did not converge on [1, {0}]")]
    IntegrationFailure(f64),

    #[error("empty grid: {0}")]
    EmptyGrid(&'static str),

    #[error("value overflows double precision: {0}")]
    Overflow(&'static str),
}

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
