use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid codeword length {n}: {reason}")]
    InvalidLength { n: usize, reason: &'static str },

    #[error("invalid positions ({i0}, {i1}) for length {n}")]
    InvalidPositions { n: usize, i0: usize, i1: usize },

    #[error("invalid codeword symbol {0:?}, expected '0' or '1'")]
    InvalidSymbol(char),

    #[error("expected {expected} autocorrelation values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite autocorrelation value at lag {lag}")]
    NonFinite { lag: usize },

    #[error("exact autocorrelation value {value} at lag {lag} exceeds 1 in magnitude")]
    OutOfRange { lag: usize, value: f64 },

    #[error("no dc2-balanced codewords of length {n}")]
    EmptyCodebook { n: usize },

    #[error("gaussian approximation breaks down at n={n}, ({i0}, {i1}): 1 + r1 = {one_plus_r1}")]
    ApproximationBreakdown {
        n: usize,
        i0: usize,
        i1: usize,
        one_plus_r1: f64,
    },

    #[error("frequency grids differ")]
    GridMismatch,

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(&'static str),

    #[error("rate target {0} outside (0, 1)")]
    InvalidRate(f64),

    #[error("spectra do not cross on the scan grid (n1={n1}, n={n})")]
    NoIntersection { n1: usize, n: usize },

    #[error("2^{n} overflows double precision")]
    Overflow { n: usize },

    #[error("exact oracle for n={n} needs about {required} bytes, budget is {budget}")]
    MemoryBudget {
        n: usize,
        required: u64,
        budget: u64,
    },

    #[error("exact oracle for n={n} exceeds the default limit of {limit}; enable expensive mode")]
    ExpensiveRequired { n: usize, limit: usize },

    #[error("usage: {0}")]
    Usage(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Resource,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::MemoryBudget { .. } | Error::ExpensiveRequired { .. } => ErrorKind::Resource,
            Error::Usage(_) | Error::InvalidSymbol(_) => ErrorKind::Usage,
            _ => ErrorKind::Domain,
        }
    }
}
