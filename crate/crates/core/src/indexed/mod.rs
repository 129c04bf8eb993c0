//! The de Bruijn pattern calculus with bidimensional indices.

mod canonical;
mod matching;
mod shift;
mod term;

pub(crate) use canonical::canonical_unchecked;
pub use canonical::{canonicalize_secondary, eq_mod_secondary};
pub use matching::{apply_match_idx, disjoint_union_idx, finc_match, match_idx, IndexedMatch};
pub use shift::{apply_subst_idx, fdec, finc, shift, LevelSubst};
pub use term::{BIndex, IdxKind, IndexedTerm};

use crate::error::{Error, Result};
use crate::outcome::MatchOutcome;
use crate::path::{Path, Step};
use crate::reduce::Rewrite;

impl IndexedTerm {
    /// The match governing an abstraction application, or `None` if `self`
    /// is not of that shape. The argument is lifted past the binder first.
    pub fn redex_match(&self) -> Option<IndexedMatch> {
        match self {
            IndexedTerm::App(f, u) => match f.as_ref() {
                IndexedTerm::Abs(n, p, _) => Some(match_idx(*n, p, &finc(IdxKind::Var, 0, u))),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_redex(&self) -> bool {
        self.redex_match().is_some_and(|m| m.is_decided())
    }

    fn contract(&self) -> Result<IndexedTerm> {
        if let IndexedTerm::App(f, u) = self {
            if let IndexedTerm::Abs(n, p, s) = f.as_ref() {
                let m = match_idx(*n, p, &finc(IdxKind::Var, 0, u));
                if m.is_decided() {
                    let applied = apply_match_idx(&m, s)?;
                    return fdec(IdxKind::Var, 0, &applied);
                }
            }
        }
        Err(Error::NotARedex(Path::root()))
    }
}

fn collect_redexes(t: &IndexedTerm, here: &mut Vec<Step>, out: &mut Vec<Path>) {
    if t.is_redex() {
        out.push(Path(here.clone()));
    }
    let children: [(Step, &IndexedTerm); 2] = match t {
        IndexedTerm::App(f, a) => [(Step::AppFun, f), (Step::AppArg, a)],
        IndexedTerm::Abs(_, p, b) => [(Step::AbsPattern, p), (Step::AbsBody, b)],
        _ => return,
    };
    for (step, child) in children {
        here.push(step);
        collect_redexes(child, here, out);
        here.pop();
    }
}

fn first_redex(t: &IndexedTerm, here: &mut Vec<Step>) -> Option<Path> {
    if t.is_redex() {
        return Some(Path(here.clone()));
    }
    let children: [(Step, &IndexedTerm); 2] = match t {
        IndexedTerm::App(f, a) => [(Step::AppFun, f), (Step::AppArg, a)],
        IndexedTerm::Abs(_, p, b) => [(Step::AbsPattern, p), (Step::AbsBody, b)],
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

fn has_wait(t: &IndexedTerm) -> bool {
    if matches!(t.redex_match(), Some(MatchOutcome::Wait)) {
        return true;
    }
    match t {
        IndexedTerm::App(f, a) => has_wait(f) || has_wait(a),
        IndexedTerm::Abs(_, p, b) => has_wait(p) || has_wait(b),
        _ => false,
    }
}

/// All redex positions in preorder.
pub fn redexes_idx(t: &IndexedTerm) -> Vec<Path> {
    let mut out = Vec::new();
    collect_redexes(t, &mut Vec::new(), &mut out);
    out
}

/// Contracts the redex at `pos`.
pub fn step_idx(t: &IndexedTerm, pos: &Path) -> Result<IndexedTerm> {
    let not_redex = || Error::NotARedex(pos.clone());
    t.replace_at(pos.steps(), &mut |sub| match sub.contract() {
        Err(Error::NotARedex(_)) => Err(not_redex()),
        other => other,
    })
    .unwrap_or_else(|| Err(not_redex()))
}

impl Rewrite for IndexedTerm {
    type Key = IndexedTerm;

    fn redexes(&self) -> Vec<Path> {
        redexes_idx(self)
    }

    fn first_redex(&self) -> Option<Path> {
        first_redex(self, &mut Vec::new())
    }

    fn step_at(&self, pos: &Path) -> Result<Self> {
        step_idx(self, pos)
    }

    fn has_waiting_application(&self) -> bool {
        has_wait(self)
    }

    fn key(&self) -> IndexedTerm {
        canonical_unchecked(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::NormalizeStatus;
    use crate::reduce::normalize;
    use crate::syntax::parse_indexed;

    fn t(src: &str) -> IndexedTerm {
        parse_indexed(src).unwrap()
    }

    const ELIM_APP: &str = r"(\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)) (\{1} ^1.1 . (^1.1 1.1) ^2.1)";
    const PAIR: &str = r"\{2} ((\{2} ^1.1 ^1.2 . 1.2 1.1) (^1.1 ^1.2)) . 1.1";

    #[test]
    fn redex_positions() {
        assert_eq!(redexes_idx(&t(ELIM_APP)), vec![Path::root()]);
        assert_eq!(redexes_idx(&t(PAIR)), vec!["p".parse().unwrap()]);
        assert!(redexes_idx(&t("^1.1")).is_empty());
    }

    #[test]
    fn elim_steps() {
        let s1 = step_idx(&t(ELIM_APP), &Path::root()).unwrap();
        assert_eq!(s1, t(r"\{1} ((\{1} ^1.1 . (^2.1 1.1) ^3.1) ^1.1) . 1.1"));
        let s2 = step_idx(&s1, &"p".parse().unwrap()).unwrap();
        assert_eq!(s2, t(r"\{1} (^2.1 ^1.1) ^3.1 . 1.1"));
        assert_eq!(
            step_idx(&s2, &Path::root()),
            Err(Error::NotARedex(Path::root()))
        );
    }

    #[test]
    fn pattern_position_step() {
        let out = step_idx(&t(PAIR), &"p".parse().unwrap()).unwrap();
        assert_eq!(out, t(r"\{2} ^1.2 ^1.1 . 1.1"));
    }

    #[test]
    fn failing_match_reduces_to_identity() {
        let out = step_idx(&t(r"(\{2} ^1.1 . 1.2) ^1.1"), &Path::root()).unwrap();
        assert_eq!(out, IndexedTerm::identity());
    }

    #[test]
    fn normalization() {
        let n = normalize(&t(ELIM_APP), 1000, false).unwrap();
        assert_eq!((n.steps, n.status), (2, NormalizeStatus::Normal));
        assert_eq!(n.term, t(r"\{1} (^2.1 ^1.1) ^3.1 . 1.1"));
        let n = normalize(&t("^1.1"), 1000, false).unwrap();
        assert_eq!((n.steps, n.status), (0, NormalizeStatus::Normal));
    }
}
