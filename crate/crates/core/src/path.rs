//! Positions inside a term.
//!
//! Both calculi share the same tree shape (application with two children,
//! abstraction with a pattern and a body), so a single path type addresses
//! subterms on either side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    AppFun,
    AppArg,
    AbsPattern,
    AbsBody,
}

impl Step {
    fn code(self) -> char {
        match self {
            Step::AppFun => 'f',
            Step::AppArg => 'a',
            Step::AbsPattern => 'p',
            Step::AbsBody => 'b',
        }
    }
}

/// A root-to-subterm path; the empty path is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: Step) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, step) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("/")?;
            }
            write!(f, "{}", step.code())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathParseError(pub String);

impl fmt::Display for PathParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid path segment `{}` (expected f, a, p or b)",
            self.0
        )
    }
}

impl std::error::Error for PathParseError {}

impl FromStr for Path {
    type Err = PathParseError;

    /// Parses the slash-separated `f`/`a`/`p`/`b` syntax; `""` is the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Path::root());
        }
        s.split('/')
            .map(|seg| match seg.trim() {
                "f" => Ok(Step::AppFun),
                "a" => Ok(Step::AppArg),
                "p" => Ok(Step::AbsPattern),
                "b" => Ok(Step::AbsBody),
                other => Err(PathParseError(other.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Path)
    }
}

/// Outcome of a bounded normalisation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizeStatus {
    /// No redex remains and no application is stuck on a `wait` match.
    Normal,
    /// No redex remains, but some abstraction application has a `wait` match.
    Blocked,
    /// The step budget ran out with redexes still present.
    StepLimit,
}

impl fmt::Display for NormalizeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalizeStatus::Normal => "normal",
            NormalizeStatus::Blocked => "blocked",
            NormalizeStatus::StepLimit => "step_limit",
        })
    }
}
