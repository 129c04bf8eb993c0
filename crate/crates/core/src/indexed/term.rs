use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::path::{Path, Step};

/// A bidimensional index `i.j`: `primary` counts enclosing binders of the
/// relevant kind, `secondary` selects a slot of that binder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BIndex {
    pub primary: usize,
    pub secondary: usize,
}

impl BIndex {
    /// Returns `None` unless both components are at least 1.
    pub fn new(primary: usize, secondary: usize) -> Option<BIndex> {
        (primary >= 1 && secondary >= 1).then_some(BIndex { primary, secondary })
    }
}

impl fmt::Display for BIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.primary, self.secondary)
    }
}

/// Which family of indices an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdxKind {
    Var,
    Match,
}

/// A term of the de Bruijn calculus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexedTerm {
    Var(BIndex),
    Match(BIndex),
    App(Box<IndexedTerm>, Box<IndexedTerm>),
    Abs(usize, Box<IndexedTerm>, Box<IndexedTerm>),
}

fn idx(i: usize, j: usize) -> BIndex {
    BIndex::new(i, j).unwrap_or_else(|| panic!("index components must be >= 1, got {i}.{j}"))
}

impl IndexedTerm {
    /// Panics if either component is 0.
    pub fn var(i: usize, j: usize) -> IndexedTerm {
        IndexedTerm::Var(idx(i, j))
    }

    /// Panics if either component is 0.
    pub fn matchable(i: usize, j: usize) -> IndexedTerm {
        IndexedTerm::Match(idx(i, j))
    }

    pub fn app(fun: IndexedTerm, arg: IndexedTerm) -> IndexedTerm {
        IndexedTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn abs(arity: usize, pattern: IndexedTerm, body: IndexedTerm) -> IndexedTerm {
        IndexedTerm::Abs(arity, Box::new(pattern), Box::new(body))
    }

    /// `\{1} ^1.1 . 1.1`
    pub fn identity() -> IndexedTerm {
        IndexedTerm::abs(1, IndexedTerm::matchable(1, 1), IndexedTerm::var(1, 1))
    }

    pub fn size(&self) -> usize {
        match self {
            IndexedTerm::Var(_) | IndexedTerm::Match(_) => 1,
            IndexedTerm::App(f, a) => 1 + f.size() + a.size(),
            IndexedTerm::Abs(_, p, b) => 1 + p.size() + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<BIndex> {
        let mut out = BTreeSet::new();
        collect_free(self, IdxKind::Var, 0, &mut out);
        out
    }

    pub fn free_matchables(&self) -> BTreeSet<BIndex> {
        let mut out = BTreeSet::new();
        collect_free(self, IdxKind::Match, 0, &mut out);
        out
    }

    pub fn free(&self, kind: IdxKind) -> BTreeSet<BIndex> {
        let mut out = BTreeSet::new();
        collect_free(self, kind, 0, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Largest free primary index of either kind, 0 if there is none.
    pub fn max_free_primary(&self) -> usize {
        self.free_vars()
            .iter()
            .chain(self.free_matchables().iter())
            .map(|b| b.primary)
            .max()
            .unwrap_or(0)
    }

    pub fn is_data(&self) -> bool {
        match self {
            IndexedTerm::Match(_) => true,
            IndexedTerm::App(f, _) => f.is_data(),
            _ => false,
        }
    }

    pub fn is_matchable_form(&self) -> bool {
        matches!(self, IndexedTerm::Abs(..)) || self.is_data()
    }

    pub fn is_well_formed(&self) -> bool {
        self.check_well_formed().is_ok()
    }

    /// Checks that free indices have secondary 1 and bound ones stay within
    /// their binder's arity; the error names the first offending position.
    pub fn check_well_formed(&self) -> Result<()> {
        wf(self, &mut Vec::new(), &mut Vec::new(), &mut Vec::new())
    }

    pub fn subterm(&self, path: &Path) -> Option<&IndexedTerm> {
        let mut cur = self;
        for step in path.steps() {
            cur = match (step, cur) {
                (Step::AppFun, IndexedTerm::App(f, _)) => f,
                (Step::AppArg, IndexedTerm::App(_, a)) => a,
                (Step::AbsPattern, IndexedTerm::Abs(_, p, _)) => p,
                (Step::AbsBody, IndexedTerm::Abs(_, _, b)) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replaces the subterm at `path` by `f(subterm)`.
    pub fn replace_at(
        &self,
        path: &[Step],
        f: &mut dyn FnMut(&IndexedTerm) -> Result<IndexedTerm>,
    ) -> Option<Result<IndexedTerm>> {
        let Some((step, rest)) = path.split_first() else {
            return Some(f(self));
        };
        let rebuilt = match (step, self) {
            (Step::AppFun, IndexedTerm::App(g, a)) => g
                .replace_at(rest, f)?
                .map(|g| IndexedTerm::App(Box::new(g), a.clone())),
            (Step::AppArg, IndexedTerm::App(g, a)) => a
                .replace_at(rest, f)?
                .map(|a| IndexedTerm::App(g.clone(), Box::new(a))),
            (Step::AbsPattern, IndexedTerm::Abs(n, p, b)) => p
                .replace_at(rest, f)?
                .map(|p| IndexedTerm::Abs(*n, Box::new(p), b.clone())),
            (Step::AbsBody, IndexedTerm::Abs(n, p, b)) => b
                .replace_at(rest, f)?
                .map(|b| IndexedTerm::Abs(*n, p.clone(), Box::new(b))),
            _ => return None,
        };
        Some(rebuilt)
    }
}

fn collect_free(t: &IndexedTerm, kind: IdxKind, depth: usize, out: &mut BTreeSet<BIndex>) {
    match t {
        IndexedTerm::Var(b) if kind == IdxKind::Var && b.primary > depth => {
            out.insert(BIndex {
                primary: b.primary - depth,
                secondary: b.secondary,
            });
        }
        IndexedTerm::Match(b) if kind == IdxKind::Match && b.primary > depth => {
            out.insert(BIndex {
                primary: b.primary - depth,
                secondary: b.secondary,
            });
        }
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => {}
        IndexedTerm::App(f, a) => {
            collect_free(f, kind, depth, out);
            collect_free(a, kind, depth, out);
        }
        IndexedTerm::Abs(_, p, b) => match kind {
            IdxKind::Var => {
                collect_free(p, kind, depth, out);
                collect_free(b, kind, depth + 1, out);
            }
            IdxKind::Match => {
                collect_free(p, kind, depth + 1, out);
                collect_free(b, kind, depth, out);
            }
        },
    }
}

fn wf(
    t: &IndexedTerm,
    vars: &mut Vec<usize>,
    matches: &mut Vec<usize>,
    here: &mut Vec<Step>,
) -> Result<()> {
    let check = |b: &BIndex, scope: &Vec<usize>, what: &str, here: &Vec<Step>| {
        let at = Path(here.clone());
        if b.primary <= scope.len() {
            let arity = scope[scope.len() - b.primary];
            if b.secondary > arity {
                return Err(Error::IllFormed(format!(
                    "{what} {b} at `{at}` exceeds binder arity {arity}"
                )));
            }
        } else if b.secondary != 1 {
            return Err(Error::IllFormed(format!(
                "free {what} {b} at `{at}` has secondary index other than 1"
            )));
        }
        Ok(())
    };
    match t {
        IndexedTerm::Var(b) => check(b, vars, "variable", here),
        IndexedTerm::Match(b) => check(b, matches, "matchable", here),
        IndexedTerm::App(f, a) => {
            here.push(Step::AppFun);
            wf(f, vars, matches, here)?;
            here.pop();
            here.push(Step::AppArg);
            wf(a, vars, matches, here)?;
            here.pop();
            Ok(())
        }
        IndexedTerm::Abs(n, p, b) => {
            here.push(Step::AbsPattern);
            matches.push(*n);
            wf(p, vars, matches, here)?;
            matches.pop();
            here.pop();
            here.push(Step::AbsBody);
            vars.push(*n);
            wf(b, vars, matches, here)?;
            vars.pop();
            here.pop();
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_indexed;

    fn t(src: &str) -> IndexedTerm {
        parse_indexed(src).unwrap()
    }

    fn set(xs: &[(usize, usize)]) -> BTreeSet<BIndex> {
        xs.iter().map(|&(i, j)| idx(i, j)).collect()
    }

    #[test]
    fn free_indices() {
        let elim = t(r"\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)");
        assert!(elim.free_vars().is_empty());
        assert!(elim.free_matchables().is_empty());
        let pair = t(r"\{2} ^1.1 ^1.2 . (\{0} 1.1 . 2.2)");
        assert!(pair.free_vars().is_empty());
        assert_eq!(t("1.1").free_vars(), set(&[(1, 1)]));
        assert_eq!(t("^3.1").free_matchables(), set(&[(3, 1)]));
        assert_eq!(t(r"\{1} ^2.1 ^1.1 . 3.1").free_matchables(), set(&[(1, 1)]));
        assert_eq!(t(r"\{1} ^2.1 ^1.1 . 3.1").free_vars(), set(&[(2, 1)]));
    }

    #[test]
    fn well_formedness() {
        assert!(t(r"\{1} ^1.1 . 1.1").is_well_formed());
        assert!(!t("^1.2").is_well_formed());
        assert!(!t(r"\{1} ^1.2 . 1.1").is_well_formed());
        assert!(t(r"\{2} ^1.1 ^1.2 . (\{0} 1.1 . 2.2)").is_well_formed());
        let err = t(r"\{1} ^1.1 . (\{1} ^1.1 . 2.3)")
            .check_well_formed()
            .unwrap_err();
        assert!(matches!(err, Error::IllFormed(msg) if msg.contains("b/b")));
    }

    #[test]
    fn matchable_forms() {
        assert!(t("^1.1 2.1").is_matchable_form());
        assert!(!t(r"(\{1} ^1.1 . 1.1) ^1.1").is_matchable_form());
        assert!(t(r"\{0} ^1.1 . ^1.1").is_matchable_form());
        assert!(!t("1.1 ^1.1").is_matchable_form());
    }
}
