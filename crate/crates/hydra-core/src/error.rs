use thiserror::Error;

/// Failures that are not verdicts. `Invalid` words and non-members are
/// ordinary results; these are caller bugs or broken internal invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// Input did not satisfy the operation's precondition.
    #[error("contract violation in {op}: {detail}")]
    Contract { op: &'static str, detail: String },
    /// A property that the algorithms guarantee did not hold.
    #[error("internal invariant broken in {op}: {detail}")]
    Invariant { op: &'static str, detail: String },
}

impl EngineError {
    pub(crate) fn contract(op: &'static str, detail: impl Into<String>) -> Self {
        EngineError::Contract { op, detail: detail.into() }
    }

    pub(crate) fn invariant(op: &'static str, detail: impl Into<String>) -> Self {
        EngineError::Invariant { op, detail: detail.into() }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, EngineError::Invariant { .. })
    }
}

/// A malformed token in one of the word grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}
