use std::collections::BTreeMap;

use serde::Serialize;

use super::term::{BIndex, IdxKind, IndexedTerm};
use crate::error::{Error, Result};

/// Adds `amount` to every primary index of `kind` lying above `depth`
/// (relative to the local binder depth of that kind).
pub fn shift(kind: IdxKind, depth: usize, amount: usize, t: &IndexedTerm) -> IndexedTerm {
    if amount == 0 {
        return t.clone();
    }
    match t {
        IndexedTerm::Var(b) if kind == IdxKind::Var && b.primary > depth => {
            IndexedTerm::Var(BIndex {
                primary: b.primary + amount,
                ..*b
            })
        }
        IndexedTerm::Match(b) if kind == IdxKind::Match && b.primary > depth => {
            IndexedTerm::Match(BIndex {
                primary: b.primary + amount,
                ..*b
            })
        }
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => t.clone(),
        IndexedTerm::App(f, a) => {
            IndexedTerm::app(shift(kind, depth, amount, f), shift(kind, depth, amount, a))
        }
        IndexedTerm::Abs(n, p, b) => {
            let (dp, db) = match kind {
                IdxKind::Var => (depth, depth + 1),
                IdxKind::Match => (depth + 1, depth),
            };
            IndexedTerm::abs(*n, shift(kind, dp, amount, p), shift(kind, db, amount, b))
        }
    }
}

/// Increment at depth `k`.
pub fn finc(kind: IdxKind, k: usize, t: &IndexedTerm) -> IndexedTerm {
    shift(kind, k, 1, t)
}

/// Decrement at depth `k`; fails if an index of primary exactly `k + 1`
/// (at its local depth) would be captured or reach 0.
pub fn fdec(kind: IdxKind, k: usize, t: &IndexedTerm) -> Result<IndexedTerm> {
    let dec = |b: &BIndex| -> Result<Option<BIndex>> {
        if b.primary > k + 1 {
            Ok(Some(BIndex {
                primary: b.primary - 1,
                ..*b
            }))
        } else if b.primary == k + 1 {
            Err(Error::DanglingIndex {
                depth: k,
                primary: b.primary,
                secondary: b.secondary,
            })
        } else {
            Ok(None)
        }
    };
    Ok(match t {
        IndexedTerm::Var(b) if kind == IdxKind::Var => match dec(b)? {
            Some(b) => IndexedTerm::Var(b),
            None => t.clone(),
        },
        IndexedTerm::Match(b) if kind == IdxKind::Match => match dec(b)? {
            Some(b) => IndexedTerm::Match(b),
            None => t.clone(),
        },
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => t.clone(),
        IndexedTerm::App(f, a) => IndexedTerm::app(fdec(kind, k, f)?, fdec(kind, k, a)?),
        IndexedTerm::Abs(n, p, b) => {
            let (kp, kb) = match kind {
                IdxKind::Var => (k, k + 1),
                IdxKind::Match => (k + 1, k),
            };
            IndexedTerm::abs(*n, fdec(kind, kp, p)?, fdec(kind, kb, b)?)
        }
    })
}

/// Substitution at a level: variable indices `level.j` are replaced by the
/// term mapped to `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSubst {
    pub level: usize,
    pub map: BTreeMap<usize, IndexedTerm>,
}

impl LevelSubst {
    pub fn new(level: usize) -> Self {
        assert!(level >= 1, "substitution level must be >= 1");
        LevelSubst {
            level,
            map: BTreeMap::new(),
        }
    }

    pub fn single(level: usize, secondary: usize, u: IndexedTerm) -> Self {
        let mut s = LevelSubst::new(level);
        s.map.insert(secondary, u);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Replaces every value `u` by `finc(Var, k, u)`.
    pub fn finc_values(&self, k: usize) -> LevelSubst {
        LevelSubst {
            level: self.level,
            map: self
                .map
                .iter()
                .map(|(j, u)| (*j, finc(IdxKind::Var, k, u)))
                .collect(),
        }
    }

    pub fn apply(&self, t: &IndexedTerm) -> Result<IndexedTerm> {
        apply_at(self, self.level, 0, 0, t)
    }
}

/// Shorthand for [`LevelSubst::apply`].
pub fn apply_subst_idx(sigma: &LevelSubst, t: &IndexedTerm) -> Result<IndexedTerm> {
    sigma.apply(t)
}

/// `level` is the current substitution level; values are lifted by
/// `var_lift` body crossings and `match_lift` pattern crossings.
fn apply_at(
    sigma: &LevelSubst,
    level: usize,
    var_lift: usize,
    match_lift: usize,
    t: &IndexedTerm,
) -> Result<IndexedTerm> {
    match t {
        IndexedTerm::Var(b) if b.primary == level => match sigma.map.get(&b.secondary) {
            Some(u) => {
                let u = shift(IdxKind::Match, 0, match_lift, u);
                Ok(shift(IdxKind::Var, 0, var_lift, &u))
            }
            None => Err(Error::UnmappedSecondary {
                level,
                secondary: b.secondary,
            }),
        },
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => Ok(t.clone()),
        IndexedTerm::App(f, a) => Ok(IndexedTerm::app(
            apply_at(sigma, level, var_lift, match_lift, f)?,
            apply_at(sigma, level, var_lift, match_lift, a)?,
        )),
        IndexedTerm::Abs(n, p, b) => Ok(IndexedTerm::abs(
            *n,
            apply_at(sigma, level, var_lift, match_lift + 1, p)?,
            apply_at(sigma, level + 1, var_lift + 1, match_lift, b)?,
        )),
    }
}
