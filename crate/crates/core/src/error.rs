use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{token}` at position {position}: {reason}")]
    Parse {
        token: String,
        position: usize,
        reason: &'static str,
    },

    #[error("letter index {index} exceeds the index limit {limit}")]
    IndexOverflow { index: u128, limit: u64 },

    #[error("letter {letter} is not in the alphabet {alphabet}")]
    Alphabet { letter: String, alphabet: String },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("the loop word reduces to the empty word")]
    DegenerateLoop,

    #[error("family `{name}` is not coherent at level {level}: {detail}")]
    Coherence {
        name: String,
        level: u64,
        detail: String,
    },

    #[error("family `{name}` violates its stabilization bound at m = {m}: projections at k = {k} and k + 1 differ")]
    Stabilization { name: String, m: u64, k: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error comes from exhausting a resource bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::IndexOverflow { .. })
    }
}
