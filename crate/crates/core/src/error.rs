use thiserror::Error;

use crate::path::Path;

/// Failures raised by the rewriting engines and the translations.
///
/// Most of these signal a violated precondition (stepping a non-redex,
/// applying a `Wait` match) rather than a recoverable condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot apply an undecided (wait) match")]
    WaitApplication,

    #[error("no redex at position `{0}`")]
    NotARedex(Path),

    #[error("decrement at depth {depth} would capture or underflow index {primary}.{secondary}")]
    DanglingIndex {
        depth: usize,
        primary: usize,
        secondary: usize,
    },

    #[error("variable index {level}.{secondary} is at the substitution level but unmapped")]
    UnmappedSecondary { level: usize, secondary: usize },

    #[error("ill-formed indexed term: {0}")]
    IllFormed(String),

    #[error("symbol `{0}` is not covered by the name table")]
    UnboundSymbol(String),

    #[error("no table entry for free index {primary}.{secondary}")]
    MissingName { primary: usize, secondary: usize },

    #[error("substitution domain symbol `{0}` is not enumerated by the binder list")]
    DomainNotEnumerated(String),

    #[error("binder list of length {len} is too short for secondary index {needed}")]
    ThetaTooShort { len: usize, needed: usize },

    #[error("expected a substitution at level 1, found level {0}")]
    LevelMismatch(usize),

    #[error("duplicate binder `{0}`")]
    DuplicateBinder(String),

    #[error("translations disagree on relatedness: {0}")]
    RelationMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
