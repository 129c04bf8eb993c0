use std::collections::BTreeSet;

use super::subst::NamedSubst;
use super::term::{NamedTerm, Symbol};
use crate::error::{Error, Result};
use crate::outcome::{combine, MatchOutcome};

pub type NamedMatch = MatchOutcome<NamedSubst>;

/// Union of two matches; overlapping domains fail.
pub fn disjoint_union(m1: NamedMatch, m2: NamedMatch) -> NamedMatch {
    combine(m1, m2, |mut a, b| {
        for (x, u) in b.0 {
            if a.0.contains_key(&x) {
                return MatchOutcome::Fail;
            }
            a.0.insert(x, u);
        }
        MatchOutcome::Success(a)
    })
}

/// `m1 ∘ m2`: each symbol of either domain is sent to `m1(m2(x))`.
pub fn compose_match(m1: NamedMatch, m2: NamedMatch) -> NamedMatch {
    combine(m1, m2, |a, b| {
        let mut out = NamedSubst::new();
        for x in a.domain().union(&b.domain()) {
            let image = match b.get(x) {
                Some(u) => a.apply(u),
                None => a.get(x).cloned().expect("symbol from the domain union"),
            };
            out.insert(x.clone(), image);
        }
        MatchOutcome::Success(out)
    })
}

/// Matches `u` against the pattern `p` whose binders are `theta`.
pub fn match_named(theta: &[Symbol], p: &NamedTerm, u: &NamedTerm) -> NamedMatch {
    match raw_match(theta, p, u) {
        MatchOutcome::Success(sigma) => {
            let wanted: BTreeSet<&Symbol> = theta.iter().collect();
            let got: BTreeSet<&Symbol> = sigma.0.keys().collect();
            if wanted == got {
                MatchOutcome::Success(sigma)
            } else {
                MatchOutcome::Fail
            }
        }
        other => other,
    }
}

fn raw_match(theta: &[Symbol], p: &NamedTerm, u: &NamedTerm) -> NamedMatch {
    match (p, u) {
        (NamedTerm::Match(x), _) if theta.contains(x) => {
            MatchOutcome::Success(NamedSubst::single(x.clone(), u.clone()))
        }
        (NamedTerm::Match(x), NamedTerm::Match(y)) if x == y => {
            MatchOutcome::Success(NamedSubst::new())
        }
        (NamedTerm::App(p1, p2), NamedTerm::App(u1, u2))
            if p.is_matchable_form() && u.is_matchable_form() =>
        {
            disjoint_union(raw_match(theta, p1, u1), raw_match(theta, p2, u2))
        }
        _ if p.is_matchable_form() && u.is_matchable_form() => MatchOutcome::Fail,
        _ => MatchOutcome::Wait,
    }
}

/// `Success σ` applies σ; `Fail` yields the identity `\[x] ^x . x`.
pub fn apply_match_named(m: &NamedMatch, t: &NamedTerm) -> Result<NamedTerm> {
    match m {
        MatchOutcome::Success(sigma) => Ok(sigma.apply(t)),
        MatchOutcome::Fail => Ok(NamedTerm::identity()),
        MatchOutcome::Wait => Err(Error::WaitApplication),
    }
}
