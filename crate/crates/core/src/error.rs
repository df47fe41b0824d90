use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("permutation size must be positive")]
    EmptyPermutation,

    #[error("image table is not a bijection on 0..{n}")]
    NotBijection { n: usize },

    #[error("size mismatch: {left} points vs {right} points")]
    SizeMismatch { left: usize, right: usize },

    #[error("qudit dimension must be at least 1")]
    InvalidDimension,

    #[error("{what} = {value} exceeds the limit {limit}")]
    CostGuard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("matrix is not a permutation matrix: {0}")]
    InvalidMatrix(String),

    #[error("integer overflow during exact elimination")]
    DeterminantOverflow,

    #[error("SWAP signature disagreement at d = {d}: closed form {formula}, cycle count {computed}")]
    SignatureMismatch {
        d: u32,
        formula: i8,
        computed: i8,
    },

    #[error("group generated at d = {d} has more than {cap} elements")]
    GroupTooLarge { d: u32, cap: usize },
}

impl Error {
    pub(crate) fn guard(what: &'static str, value: impl Into<u64>, limit: impl Into<u64>) -> Self {
        Error::CostGuard {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }
}
