use serde::Serialize;

/// Three-valued result of matching a pattern against an argument.
///
/// `Success` and `Fail` are *decided*; `Wait` means the pattern or argument
/// is not yet evaluated enough to decide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MatchOutcome<S> {
    Success(S),
    Fail,
    Wait,
}

impl<S> MatchOutcome<S> {
    pub fn is_decided(&self) -> bool {
        !matches!(self, MatchOutcome::Wait)
    }

    pub fn is_success(&self) -> bool {
        matches!(self, MatchOutcome::Success(_))
    }

    pub fn success(&self) -> Option<&S> {
        match self {
            MatchOutcome::Success(s) => Some(s),
            _ => None,
        }
    }

    pub fn map<T>(self, f: impl FnOnce(S) -> T) -> MatchOutcome<T> {
        match self {
            MatchOutcome::Success(s) => MatchOutcome::Success(f(s)),
            MatchOutcome::Fail => MatchOutcome::Fail,
            MatchOutcome::Wait => MatchOutcome::Wait,
        }
    }

    /// Short tag used in reports: `success`, `fail` or `wait`.
    pub fn tag(&self) -> &'static str {
        match self {
            MatchOutcome::Success(_) => "success",
            MatchOutcome::Fail => "fail",
            MatchOutcome::Wait => "wait",
        }
    }
}

/// Combines two outcomes the way both disjoint union and composition do
/// before looking at the substitutions: `fail` dominates, then `wait`.
pub(crate) fn combine<S>(
    left: MatchOutcome<S>,
    right: MatchOutcome<S>,
    both: impl FnOnce(S, S) -> MatchOutcome<S>,
) -> MatchOutcome<S> {
    match (left, right) {
        (MatchOutcome::Fail, _) | (_, MatchOutcome::Fail) => MatchOutcome::Fail,
        (MatchOutcome::Wait, _) | (_, MatchOutcome::Wait) => MatchOutcome::Wait,
        (MatchOutcome::Success(a), MatchOutcome::Success(b)) => both(a, b),
    }
}
