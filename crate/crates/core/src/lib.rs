//! Rewriting engines for the pure pattern calculus in two presentations: with
//! named binders and with bidimensional de Bruijn indices, plus the
//! translations between them and a differential-testing harness.

pub mod error;
pub mod harness;
pub mod indexed;
pub mod named;
pub mod outcome;
pub mod path;
pub mod reduce;
pub mod syntax;
pub mod translate;

pub use error::{Error, Result};
pub use indexed::{BIndex, IdxKind, IndexedMatch, IndexedTerm, LevelSubst};
pub use named::{NamedMatch, NamedSubst, NamedTerm, Symbol};
pub use outcome::MatchOutcome;
pub use path::{NormalizeStatus, Path, Step};
pub use reduce::{normalize, Normalized, Rewrite};
pub use syntax::{AnyTerm, Side};
pub use translate::{FreshGen, NameTable};
