use crate::enclosure::Enclosure;

/// Unified error type for the whole library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A rational was constructed with a zero denominator.
    #[error("zero denominator")]
    ZeroDenominator,

    /// An operation was called outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A floor could not be certified: after the allowed number of
    /// refinement rounds the enclosure still contains an integer boundary.
    /// Carries the last enclosure (boxed to keep the error type small) so
    /// callers can inspect (or report) how close the value sits to an
    /// integer.
    #[error(
        "enclosure straddles an integer after {rounds} refinement round(s); \
         last enclosure [{}, {}]",
        .enclosure.lo(),
        .enclosure.hi()
    )]
    StraddlesInteger {
        rounds: u32,
        enclosure: Box<Enclosure>,
    },

    /// A certified result contradicts a statement that is proved to hold.
    /// By construction this indicates an implementation bug and must abort
    /// the run loudly with the evidence attached.
    #[error("integrity violation: {0}")]
    Integrity(String),

    /// A checkpoint file is corrupt or unreadable.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    /// A resume was attempted against a checkpoint written under a
    /// different configuration. Carries a human-readable diff.
    #[error("resume refused, configuration mismatch:\n{0}")]
    ConfigMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for domain errors.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
