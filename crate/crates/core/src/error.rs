use thiserror::Error;

use crate::gog::GPath;
use crate::words::ReducedWord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured size cap was exceeded. Carries the largest size attempted.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("retry budget exhausted: {0}")]
    RetryLimit(String),

    /// The free-group precondition `H2 not conjugate into H1` does not hold.
    #[error("H2 is conjugate into H1 (conjugator {})", word_or_one(conjugator))]
    ConjugateInto { conjugator: ReducedWord },

    /// A freshly built witness did not pass its own checks.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Mutual conjugacy-into held but the first conjugator did not give equality.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("normalizer condition not verified: {0}")]
    NormalizerConditionUnverified(String),

    /// Extension through non-trivial faces did not terminate within its cap.
    #[error("normalizer condition evidently fails: {0}")]
    NormalizerConditionFails(String),

    /// The finite cover built for H1 has a sheet fixed by all of H2.
    #[error("H2 fixes sheet {sheet} of the cover built for H1 (H2^g lies in the base sheet stabilizer for g = {conjugator})")]
    ConjugateIntoDetected { sheet: usize, conjugator: GPath },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

fn word_or_one(w: &ReducedWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

impl Error {
    /// Process exit code used by the `scs` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidInput(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::Resource(_) | Error::RetryLimit(_) => 3,
            _ => 1,
        }
    }
}
