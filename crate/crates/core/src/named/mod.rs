//! The named pattern calculus.

mod matching;
mod subst;
mod term;

pub use matching::{apply_match_named, compose_match, disjoint_union, match_named, NamedMatch};
pub use subst::{apply_subst, fresh_like, NamedSubst};
pub use term::{alpha_canonical, alpha_eq, sym, NamedTerm, Symbol};

use crate::error::{Error, Result};
use crate::outcome::MatchOutcome;
use crate::path::{Path, Step};
use crate::reduce::Rewrite;

impl NamedTerm {
    /// The decided match of an abstraction application, or `None` if `self`
    /// is not of that shape.
    pub fn redex_match(&self) -> Option<NamedMatch> {
        match self {
            NamedTerm::App(f, u) => match f.as_ref() {
                NamedTerm::Abs(theta, p, _) => Some(match_named(theta, p, u)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_redex(&self) -> bool {
        self.redex_match().is_some_and(|m| m.is_decided())
    }

    /// Contracts the redex at the root.
    fn contract(&self) -> Result<NamedTerm> {
        if let NamedTerm::App(f, u) = self {
            if let NamedTerm::Abs(theta, p, s) = f.as_ref() {
                let m = match_named(theta, p, u);
                if m.is_decided() {
                    return apply_match_named(&m, s);
                }
            }
        }
        Err(Error::NotARedex(Path::root()))
    }
}

fn collect_redexes(t: &NamedTerm, here: &mut Vec<Step>, out: &mut Vec<Path>) {
    if t.is_redex() {
        out.push(Path(here.clone()));
    }
    let mut visit = |step, child: &NamedTerm, here: &mut Vec<Step>| {
        here.push(step);
        collect_redexes(child, here, out);
        here.pop();
    };
    match t {
        NamedTerm::App(f, a) => {
            visit(Step::AppFun, f, here);
            visit(Step::AppArg, a, here);
        }
        NamedTerm::Abs(_, p, b) => {
            visit(Step::AbsPattern, p, here);
            visit(Step::AbsBody, b, here);
        }
        _ => {}
    }
}

fn first_redex(t: &NamedTerm, here: &mut Vec<Step>) -> Option<Path> {
    if t.is_redex() {
        return Some(Path(here.clone()));
    }
    let children: [(Step, &NamedTerm); 2] = match t {
        NamedTerm::App(f, a) => [(Step::AppFun, f), (Step::AppArg, a)],
        NamedTerm::Abs(_, p, b) => [(Step::AbsPattern, p), (Step::AbsBody, b)],
        _ => return None,
    };
    for (step, child) in children {
        here.push(step);
        let found = first_redex(child, here);
        here.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn has_wait(t: &NamedTerm) -> bool {
    if matches!(t.redex_match(), Some(MatchOutcome::Wait)) {
        return true;
    }
    match t {
        NamedTerm::App(f, a) => has_wait(f) || has_wait(a),
        NamedTerm::Abs(_, p, b) => has_wait(p) || has_wait(b),
        _ => false,
    }
}

/// All redex positions in preorder.
pub fn redexes_named(t: &NamedTerm) -> Vec<Path> {
    let mut out = Vec::new();
    collect_redexes(t, &mut Vec::new(), &mut out);
    out
}

/// Contracts the redex at `pos`.
pub fn step_named(t: &NamedTerm, pos: &Path) -> Result<NamedTerm> {
    let not_redex = || Error::NotARedex(pos.clone());
    t.replace_at(pos.steps(), &mut |sub| {
        sub.contract().map_err(|_| not_redex())
    })
    .unwrap_or_else(|| Err(not_redex()))
}

impl Rewrite for NamedTerm {
    type Key = NamedTerm;

    fn redexes(&self) -> Vec<Path> {
        redexes_named(self)
    }

    fn first_redex(&self) -> Option<Path> {
        first_redex(self, &mut Vec::new())
    }

    fn step_at(&self, pos: &Path) -> Result<Self> {
        step_named(self, pos)
    }

    fn has_waiting_application(&self) -> bool {
        has_wait(self)
    }

    fn key(&self) -> NamedTerm {
        alpha_canonical(self)
    }
}
