//! Strategy-level reduction shared by both calculi.

use std::hash::Hash;

use crate::error::Result;
use crate::path::{NormalizeStatus, Path};

/// A term language with a one-step reduction closed under contexts.
pub trait Rewrite: Clone + Sized {
    /// Canonical representative used to compare terms modulo the calculus'
    /// notion of equality (alpha-conversion or secondary-index permutation).
    type Key: Eq + Hash + Clone + Send;

    /// All redex positions in preorder.
    fn redexes(&self) -> Vec<Path>;

    /// The leftmost-outermost redex, if any.
    fn first_redex(&self) -> Option<Path> {
        self.redexes().into_iter().next()
    }

    fn step_at(&self, pos: &Path) -> Result<Self>;

    /// True if some abstraction application is stuck on a `wait` match.
    fn has_waiting_application(&self) -> bool;

    fn key(&self) -> Self::Key;
}

/// Result of [`normalize`]. When requested, `trace` records each contracted
/// position together with the term it produced.
#[derive(Debug, Clone)]
pub struct Normalized<T> {
    pub term: T,
    pub steps: usize,
    pub status: NormalizeStatus,
    pub trace: Vec<(Path, T)>,
}

/// Leftmost-outermost reduction with a step budget.
pub fn normalize<T: Rewrite>(
    term: &T,
    max_steps: usize,
    keep_trace: bool,
) -> Result<Normalized<T>> {
    let mut current = term.clone();
    let mut trace = Vec::new();
    let mut steps = 0;
    loop {
        let Some(pos) = current.first_redex() else {
            let status = if current.has_waiting_application() {
                NormalizeStatus::Blocked
            } else {
                NormalizeStatus::Normal
            };
            return Ok(Normalized {
                term: current,
                steps,
                status,
                trace,
            });
        };
        if steps == max_steps {
            return Ok(Normalized {
                term: current,
                steps,
                status: NormalizeStatus::StepLimit,
                trace,
            });
        }
        let next = current.step_at(&pos)?;
        if keep_trace {
            trace.push((pos, next.clone()));
        }
        current = next;
        steps += 1;
    }
}
