use std::fmt;

use serde::{Deserialize, Serialize};

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    /// Stable machine-readable code, e.g. `girth_mismatch`.
    pub code: String,
    pub detail: String,
}

impl Rejection {
    pub fn new(code: &str, detail: impl Into<String>) -> Self {
        Rejection { code: code.to_string(), detail: detail.into() }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

pub type Verdict = std::result::Result<(), Rejection>;

/// Fails with `code` unless `cond` holds.
pub(crate) fn ensure(cond: bool, code: &str, detail: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(Rejection::new(code, detail()))
    }
}
