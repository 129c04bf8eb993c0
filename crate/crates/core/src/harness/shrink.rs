//! Deterministic structural shrinking.
//!
//! A candidate replaces one subterm by one of its children or by a leaf; the
//! first strictly smaller candidate that still fails is kept, until none does.

use crate::indexed::{BIndex, IndexedTerm};
use crate::named::NamedTerm;
use crate::path::{Path, Step};

fn paths_idx(t: &IndexedTerm, here: &mut Vec<Step>, out: &mut Vec<Path>) {
    out.push(Path(here.clone()));
    let children: [(Step, &IndexedTerm); 2] = match t {
        IndexedTerm::App(f, a) => [(Step::AppFun, f), (Step::AppArg, a)],
        IndexedTerm::Abs(_, p, b) => [(Step::AbsPattern, p), (Step::AbsBody, b)],
        _ => return,
    };
    for (s, c) in children {
        here.push(s);
        paths_idx(c, here, out);
        here.pop();
    }
}

fn paths_named(t: &NamedTerm, here: &mut Vec<Step>, out: &mut Vec<Path>) {
    out.push(Path(here.clone()));
    let children: [(Step, &NamedTerm); 2] = match t {
        NamedTerm::App(f, a) => [(Step::AppFun, f), (Step::AppArg, a)],
        NamedTerm::Abs(_, p, b) => [(Step::AbsPattern, p), (Step::AbsBody, b)],
        _ => return,
    };
    for (s, c) in children {
        here.push(s);
        paths_named(c, here, out);
        here.pop();
    }
}

fn replacements_idx(t: &IndexedTerm) -> Vec<IndexedTerm> {
    let mut out = match t {
        IndexedTerm::App(f, a) => vec![(**f).clone(), (**a).clone()],
        IndexedTerm::Abs(_, p, b) => vec![(**b).clone(), (**p).clone()],
        _ => Vec::new(),
    };
    let leaf = IndexedTerm::Match(BIndex::new(1, 1).unwrap());
    if *t != leaf {
        out.push(leaf);
    }
    out
}

fn replacements_named(t: &NamedTerm) -> Vec<NamedTerm> {
    match t {
        NamedTerm::App(f, a) => vec![(**f).clone(), (**a).clone()],
        NamedTerm::Abs(_, p, b) => vec![(**b).clone(), (**p).clone()],
        _ => Vec::new(),
    }
}

/// Shrinks `t` while `fails` holds; `fails` must reject candidates that fall
/// outside the property's preconditions.
pub fn shrink_indexed(t: &IndexedTerm, fails: impl Fn(&IndexedTerm) -> bool) -> IndexedTerm {
    let mut current = t.clone();
    'outer: loop {
        let mut paths = Vec::new();
        paths_idx(&current, &mut Vec::new(), &mut paths);
        for path in paths {
            let sub = current
                .subterm(&path)
                .expect("path enumerated from the term")
                .clone();
            for r in replacements_idx(&sub) {
                let mut with = |_: &IndexedTerm| Ok(r.clone());
                let Some(Ok(candidate)) = current.replace_at(path.steps(), &mut with) else {
                    continue;
                };
                if candidate.size() < current.size() && fails(&candidate) {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

pub fn shrink_named(t: &NamedTerm, fails: impl Fn(&NamedTerm) -> bool) -> NamedTerm {
    let mut current = t.clone();
    'outer: loop {
        let mut paths = Vec::new();
        paths_named(&current, &mut Vec::new(), &mut paths);
        for path in paths {
            let sub = current
                .subterm(&path)
                .expect("path enumerated from the term")
                .clone();
            for r in replacements_named(&sub) {
                let mut with = |_: &NamedTerm| Ok(r.clone());
                let Some(Ok(candidate)) = current.replace_at(path.steps(), &mut with) else {
                    continue;
                };
                if candidate.size() < current.size() && fails(&candidate) {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}
