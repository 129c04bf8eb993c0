use super::shift::LevelSubst;
use super::term::IndexedTerm;
use crate::error::{Error, Result};
use crate::outcome::{combine, MatchOutcome};

/// Successful indexed matches always substitute at level 1.
pub type IndexedMatch = MatchOutcome<LevelSubst>;

/// Union of two level-1 matches; overlapping secondaries fail.
pub fn disjoint_union_idx(m1: IndexedMatch, m2: IndexedMatch) -> IndexedMatch {
    combine(m1, m2, |mut a, b| {
        for (j, u) in b.map {
            if a.map.contains_key(&j) {
                return MatchOutcome::Fail;
            }
            a.map.insert(j, u);
        }
        MatchOutcome::Success(a)
    })
}

/// Lifts the variable indices of every substituted value.
pub fn finc_match(k: usize, m: &IndexedMatch) -> IndexedMatch {
    m.clone().map(|s| s.finc_values(k))
}

/// Matches `u` against the pattern `p` of an abstraction of arity `n`.
pub fn match_idx(n: usize, p: &IndexedTerm, u: &IndexedTerm) -> IndexedMatch {
    match raw_match(p, u) {
        MatchOutcome::Success(sigma) => {
            if sigma.map.len() == n && sigma.map.keys().copied().eq(1..=n) {
                MatchOutcome::Success(sigma)
            } else {
                MatchOutcome::Fail
            }
        }
        other => other,
    }
}

fn raw_match(p: &IndexedTerm, u: &IndexedTerm) -> IndexedMatch {
    match (p, u) {
        (IndexedTerm::Match(b), _) if b.primary == 1 => {
            MatchOutcome::Success(LevelSubst::single(1, b.secondary, u.clone()))
        }
        (IndexedTerm::Match(b), IndexedTerm::Match(c))
            if b.primary == c.primary + 1 && b.secondary == c.secondary =>
        {
            MatchOutcome::Success(LevelSubst::new(1))
        }
        (IndexedTerm::App(p1, p2), IndexedTerm::App(u1, u2))
            if p.is_matchable_form() && u.is_matchable_form() =>
        {
            disjoint_union_idx(raw_match(p1, u1), raw_match(p2, u2))
        }
        _ if p.is_matchable_form() && u.is_matchable_form() => MatchOutcome::Fail,
        _ => MatchOutcome::Wait,
    }
}

/// `Success σ` applies σ; `Fail` yields the identity `\{1} ^1.1 . 1.1`.
pub fn apply_match_idx(m: &IndexedMatch, t: &IndexedTerm) -> Result<IndexedTerm> {
    match m {
        MatchOutcome::Success(sigma) => {
            if sigma.level != 1 {
                return Err(Error::LevelMismatch(sigma.level));
            }
            sigma.apply(t)
        }
        MatchOutcome::Fail => Ok(IndexedTerm::identity()),
        MatchOutcome::Wait => Err(Error::WaitApplication),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_indexed;

    fn t(src: &str) -> IndexedTerm {
        parse_indexed(src).unwrap()
    }

    #[test]
    fn matching_examples() {
        assert_eq!(
            match_idx(1, &t("^2.1 ^1.1"), &t("^1.1 3.1")),
            MatchOutcome::Success(LevelSubst::single(1, 1, t("3.1")))
        );
        for u in ["1.1", "^4.1", r"\{0} ^1.1 . 2.1", "(^1.1 1.1) 1.1"] {
            assert_eq!(
                match_idx(1, &t("^1.1"), &t(u)),
                MatchOutcome::Success(LevelSubst::single(1, 1, t(u)))
            );
            assert_eq!(match_idx(2, &t("^1.1"), &t(u)), MatchOutcome::Fail);
        }
        assert_eq!(
            match_idx(1, &t("^1.1 ^1.1"), &t(r"(\{1} ^1.1 . 1.1) ^2.1")),
            MatchOutcome::Wait
        );
        assert_eq!(match_idx(0, &t("^2.1"), &t("^2.1")), MatchOutcome::Fail);
        assert_eq!(
            match_idx(0, &t(r"\{0} ^1.1 . ^1.1"), &t(r"\{0} ^1.1 . ^1.1")),
            MatchOutcome::Fail
        );
        // repeated matchables produce overlapping domains
        assert_eq!(
            match_idx(1, &t("^1.1 ^1.1"), &t("^1.1 ^1.1")),
            MatchOutcome::Fail
        );
    }

    #[test]
    fn lifting_matches() {
        assert_eq!(finc_match(0, &MatchOutcome::Fail), MatchOutcome::Fail);
        assert_eq!(finc_match(0, &MatchOutcome::Wait), MatchOutcome::Wait);
        assert_eq!(
            finc_match(
                0,
                &MatchOutcome::Success(LevelSubst::single(1, 1, t("1.1")))
            ),
            MatchOutcome::Success(LevelSubst::single(1, 1, t("2.1")))
        );
    }

    #[test]
    fn apply_match_cases() {
        assert_eq!(
            apply_match_idx(&MatchOutcome::Fail, &t("2.1")).unwrap(),
            t(r"\{1} ^1.1 . 1.1")
        );
        let m = MatchOutcome::Success(LevelSubst::single(1, 1, t("^7.1")));
        assert_eq!(apply_match_idx(&m, &t("1.1")).unwrap(), t("^7.1"));
        assert_eq!(
            apply_match_idx(&MatchOutcome::Wait, &t("1.1")),
            Err(Error::WaitApplication)
        );
    }
}
