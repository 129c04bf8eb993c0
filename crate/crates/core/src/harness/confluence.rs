//! Exhaustive bounded exploration of reduction graphs.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Display;

use serde::Serialize;

use crate::reduce::Rewrite;

/// Exploration stops growing past this many distinct states.
pub const STATE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct Peak {
    pub source: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfluenceStatus {
    Confluent,
    /// No violation found, but some peak could not be resolved within budget.
    BudgetExceeded,
    Violation,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub term: String,
    pub depth: usize,
    pub states: usize,
    pub peaks: usize,
    pub joined: usize,
    /// Peaks whose reduction graphs were exhausted without meeting.
    pub unjoined: Vec<Peak>,
    /// Peaks left undecided because a join search hit its bound.
    pub undecided: Vec<Peak>,
    /// Distinct normal forms reached, as printed terms.
    pub normal_forms: Vec<String>,
    pub state_limit_hit: bool,
}

impl ConfluenceReport {
    pub fn status(&self) -> ConfluenceStatus {
        if !self.unjoined.is_empty() || self.normal_forms.len() > 1 {
            ConfluenceStatus::Violation
        } else if !self.undecided.is_empty() || self.state_limit_hit {
            ConfluenceStatus::BudgetExceeded
        } else {
            ConfluenceStatus::Confluent
        }
    }
}

struct Graph<T: Rewrite> {
    terms: HashMap<T::Key, T>,
    succ: HashMap<T::Key, Vec<T::Key>>,
    limit_hit: bool,
}

impl<T: Rewrite> Graph<T> {
    fn new() -> Self {
        Graph {
            terms: HashMap::new(),
            succ: HashMap::new(),
            limit_hit: false,
        }
    }

    fn add(&mut self, t: T) -> T::Key {
        let k = t.key();
        self.terms.entry(k.clone()).or_insert(t);
        k
    }

    /// Successor keys, deduplicated. Failing steps are skipped; both engines
    /// only fail on positions that are not redexes.
    fn successors(&mut self, k: &T::Key) -> Vec<T::Key> {
        if let Some(s) = self.succ.get(k) {
            return s.clone();
        }
        let t = self.terms[k].clone();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for pos in t.redexes() {
            if let Ok(t2) = t.step_at(&pos) {
                let k2 = t2.key();
                if seen.insert(k2.clone()) {
                    out.push(k2.clone());
                }
                self.terms.entry(k2).or_insert(t2);
            }
        }
        self.succ.insert(k.clone(), out.clone());
        out
    }

    /// Keys reachable from `k` in at most `budget` steps, and whether the
    /// search saw everything reachable.
    fn reach(&mut self, k: &T::Key, budget: usize) -> (HashSet<T::Key>, bool) {
        let mut seen = HashSet::from([k.clone()]);
        let mut frontier = vec![k.clone()];
        let mut complete = true;
        for level in 0..=budget {
            let mut next = Vec::new();
            for x in &frontier {
                if self.terms.len() >= STATE_LIMIT {
                    self.limit_hit = true;
                    return (seen, false);
                }
                let succ = self.successors(x);
                if level == budget {
                    if succ.iter().any(|y| !seen.contains(y)) {
                        complete = false;
                    }
                    continue;
                }
                for y in succ {
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        (seen, complete)
    }
}

/// Explores every reduction sequence of length at most `depth`, checks that
/// every peak met along the way joins within `join_budget` further steps on
/// each side, and collects the normal forms reached.
pub fn check_confluence_bounded<T>(t: &T, depth: usize, join_budget: usize) -> ConfluenceReport
where
    T: Rewrite + Display,
{
    let mut g: Graph<T> = Graph::new();
    let root = g.add(t.clone());
    let mut level: HashMap<T::Key, usize> = HashMap::from([(root.clone(), 0)]);
    let mut queue = VecDeque::from([root.clone()]);
    let mut order = Vec::new();
    while let Some(k) = queue.pop_front() {
        order.push(k.clone());
        let d = level[&k];
        if d == depth {
            continue;
        }
        if g.terms.len() >= STATE_LIMIT {
            g.limit_hit = true;
            continue;
        }
        for k2 in g.successors(&k) {
            if !level.contains_key(&k2) {
                level.insert(k2.clone(), d + 1);
                queue.push_back(k2);
            }
        }
    }

    let mut report = ConfluenceReport {
        term: t.to_string(),
        depth,
        states: order.len(),
        peaks: 0,
        joined: 0,
        unjoined: Vec::new(),
        undecided: Vec::new(),
        normal_forms: Vec::new(),
        state_limit_hit: false,
    };
    let mut reach_cache: HashMap<T::Key, (HashSet<T::Key>, bool)> = HashMap::new();
    for k in &order {
        if level[k] == depth {
            if g.terms[k].redexes().is_empty() {
                report.normal_forms.push(g.terms[k].to_string());
            }
            continue;
        }
        let succ = g.successors(k);
        if succ.is_empty() {
            report.normal_forms.push(g.terms[k].to_string());
            continue;
        }
        for (i, a) in succ.iter().enumerate() {
            for b in &succ[i + 1..] {
                report.peaks += 1;
                for x in [a, b] {
                    if !reach_cache.contains_key(x) {
                        let r = g.reach(x, join_budget);
                        reach_cache.insert(x.clone(), r);
                    }
                }
                let (ra, ca) = &reach_cache[a];
                let (rb, cb) = &reach_cache[b];
                let peak = || Peak {
                    source: g.terms[k].to_string(),
                    left: g.terms[a].to_string(),
                    right: g.terms[b].to_string(),
                };
                if ra.iter().any(|x| rb.contains(x)) {
                    report.joined += 1;
                } else if *ca && *cb {
                    report.unjoined.push(peak());
                } else {
                    report.undecided.push(peak());
                }
            }
        }
    }
    report.state_limit_hit = g.limit_hit;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_indexed, parse_named};

    #[test]
    fn motivating_example_has_one_normal_form() {
        let t = parse_named(r"(\[x,y] ^x ^y . y) ((\[w] ^w . ^z0 ^z1) ^z0)").unwrap();
        let r = check_confluence_bounded(&t, 4, 4);
        assert_eq!(r.status(), ConfluenceStatus::Confluent, "{r:?}");
        assert_eq!(r.normal_forms, ["^z1"]);
    }

    #[test]
    fn normal_form_is_trivially_confluent() {
        let t = parse_indexed(r"\{1} ^1.1 . 1.1").unwrap();
        let r = check_confluence_bounded(&t, 4, 4);
        assert_eq!(r.status(), ConfluenceStatus::Confluent);
        assert_eq!((r.states, r.peaks), (1, 0));
        assert_eq!(r.normal_forms.len(), 1);
    }

    #[test]
    fn diverging_peak_is_undecided_not_violated() {
        let omega = r"(\[x] ^x . x x) (\[x] ^x . x x)";
        let t = parse_named(&format!(r"(\[y] ^y . ^c) ({omega})")).unwrap();
        let r = check_confluence_bounded(&t, 3, 3);
        assert_ne!(r.status(), ConfluenceStatus::Violation, "{r:?}");
    }
}
