use super::term::{BIndex, IdxKind, IndexedTerm};
use crate::error::Result;

/// Renumbers the slots of every abstraction by first occurrence: matchables
/// of the pattern in preorder, then variables of the body, then unused slots
/// in ascending order.
pub fn canonicalize_secondary(t: &IndexedTerm) -> Result<IndexedTerm> {
    t.check_well_formed()?;
    Ok(canonical_unchecked(t))
}

/// Equality up to a per-binder permutation of secondary indices.
pub fn eq_mod_secondary(t: &IndexedTerm, u: &IndexedTerm) -> Result<bool> {
    Ok(canonicalize_secondary(t)? == canonicalize_secondary(u)?)
}

/// Canonical form without the well-formedness check; slots beyond a binder's
/// arity are left untouched.
pub(crate) fn canonical_unchecked(t: &IndexedTerm) -> IndexedTerm {
    match t {
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => t.clone(),
        IndexedTerm::App(f, a) => IndexedTerm::app(canonical_unchecked(f), canonical_unchecked(a)),
        IndexedTerm::Abs(n, p, b) => {
            let n = *n;
            let mut order = Vec::with_capacity(n);
            occurrences(p, IdxKind::Match, 1, n, &mut order);
            occurrences(b, IdxKind::Var, 1, n, &mut order);
            for j in 1..=n {
                if !order.contains(&j) {
                    order.push(j);
                }
            }
            // perm[old] = new
            let mut perm = vec![0; n + 1];
            for (new, old) in order.iter().enumerate() {
                perm[*old] = new + 1;
            }
            let p = relabel(p, IdxKind::Match, 1, &perm);
            let b = relabel(b, IdxKind::Var, 1, &perm);
            IndexedTerm::abs(n, canonical_unchecked(&p), canonical_unchecked(&b))
        }
    }
}

fn occurrences(t: &IndexedTerm, kind: IdxKind, depth: usize, n: usize, order: &mut Vec<usize>) {
    match t {
        IndexedTerm::Var(b) | IndexedTerm::Match(b) => {
            let right_kind = matches!(
                (kind, t),
                (IdxKind::Var, IndexedTerm::Var(_)) | (IdxKind::Match, IndexedTerm::Match(_))
            );
            if right_kind && b.primary == depth && b.secondary <= n && !order.contains(&b.secondary)
            {
                order.push(b.secondary);
            }
        }
        IndexedTerm::App(f, a) => {
            occurrences(f, kind, depth, n, order);
            occurrences(a, kind, depth, n, order);
        }
        IndexedTerm::Abs(_, p, b) => {
            let (dp, db) = depths(kind, depth);
            occurrences(p, kind, dp, n, order);
            occurrences(b, kind, db, n, order);
        }
    }
}

fn relabel(t: &IndexedTerm, kind: IdxKind, depth: usize, perm: &[usize]) -> IndexedTerm {
    let renumber = |b: &BIndex| {
        if b.primary == depth && b.secondary < perm.len() {
            BIndex {
                secondary: perm[b.secondary],
                ..*b
            }
        } else {
            *b
        }
    };
    match t {
        IndexedTerm::Var(b) if kind == IdxKind::Var => IndexedTerm::Var(renumber(b)),
        IndexedTerm::Match(b) if kind == IdxKind::Match => IndexedTerm::Match(renumber(b)),
        IndexedTerm::Var(_) | IndexedTerm::Match(_) => t.clone(),
        IndexedTerm::App(f, a) => {
            IndexedTerm::app(relabel(f, kind, depth, perm), relabel(a, kind, depth, perm))
        }
        IndexedTerm::Abs(n, p, b) => {
            let (dp, db) = depths(kind, depth);
            IndexedTerm::abs(*n, relabel(p, kind, dp, perm), relabel(b, kind, db, perm))
        }
    }
}

fn depths(kind: IdxKind, depth: usize) -> (usize, usize) {
    match kind {
        IdxKind::Var => (depth, depth + 1),
        IdxKind::Match => (depth + 1, depth),
    }
}
