//! Seeded fuzz campaigns with deterministic, seed-ordered reports.

use std::fmt::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use super::bisim::{check_bisim_run, DiagramOutcome, DiagramReport, RelatedPair};
use super::confluence::{check_confluence_bounded, ConfluenceReport, ConfluenceStatus};
use super::gen::{gen_indexed, gen_named, GenConfig};
use super::lemmas::{check_lemma_suite, LabeledTerm};
use super::shrink::{shrink_indexed, shrink_named};
use crate::indexed::IndexedTerm;
use crate::named::NamedTerm;
use crate::reduce::Rewrite;

/// Leftmost-outermost steps followed from each generated pair.
pub const BISIM_RUN_STEPS: usize = 8;
pub const CONFLUENCE_DEPTH: usize = 4;
pub const CONFLUENCE_JOIN_BUDGET: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Bisim,
    Lemmas,
    Confluence,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bisim => "bisim",
            Suite::Lemmas => "lemmas",
            Suite::Confluence => "confluence",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStatus {
    Pass,
    Violation,
    BudgetExceeded,
}

impl fmt::Display for SampleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleStatus::Pass => "pass",
            SampleStatus::Violation => "violation",
            SampleStatus::BudgetExceeded => "budget_exceeded",
        })
    }
}

/// One non-passing sample.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub property: String,
    pub seed: u64,
    pub status: SampleStatus,
    pub detail: String,
    pub terms: Vec<LabeledTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub samples: usize,
    pub passed: usize,
    pub violations: usize,
    pub budget_exceeded: usize,
    /// Non-passing samples, ordered by property then seed.
    pub records: Vec<SampleRecord>,
}

impl FuzzReport {
    fn from_records(
        suite: Suite,
        cfg: &GenConfig,
        count: usize,
        samples: usize,
        records: Vec<SampleRecord>,
    ) -> Self {
        let violations = records
            .iter()
            .filter(|r| r.status == SampleStatus::Violation)
            .count();
        let budget_exceeded = records
            .iter()
            .filter(|r| r.status == SampleStatus::BudgetExceeded)
            .count();
        FuzzReport {
            suite,
            seed: cfg.seed,
            count,
            samples,
            passed: samples - violations - budget_exceeded,
            violations,
            budget_exceeded,
            records,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations == 0
    }

    /// Human-readable rendering: one line per non-passing sample, then a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} seed {} count {}",
            self.suite, self.seed, self.count
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{} seed {}: {}: {}",
                r.property, r.seed, r.status, r.detail
            );
            for t in &r.terms {
                let _ = writeln!(out, "  {}: {}", t.label, t.term);
            }
        }
        let _ = writeln!(
            out,
            "samples {} passed {} violations {} budget_exceeded {}",
            self.samples, self.passed, self.violations, self.budget_exceeded
        );
        out
    }
}

/// Even seeds start from an indexed term, odd seeds from a named one.
fn seed_term(cfg: &GenConfig, seed: u64) -> Result<IndexedTerm, NamedTerm> {
    let cfg = cfg.with_seed(seed);
    if seed.is_multiple_of(2) {
        Ok(gen_indexed(&cfg))
    } else {
        Err(gen_named(&cfg))
    }
}

fn bisim_violation(pair: Result<RelatedPair, String>) -> Option<(String, Vec<LabeledTerm>)> {
    let pair = match pair {
        Ok(p) => p,
        Err(e) => return Some((e, Vec::new())),
    };
    let reports: Vec<DiagramReport> = check_bisim_run(&pair, BISIM_RUN_STEPS);
    let bad = reports.into_iter().find(|r| !r.is_ok())?;
    let mut terms = vec![
        LabeledTerm {
            label: "indexed".into(),
            term: bad.indexed.clone(),
        },
        LabeledTerm {
            label: "named".into(),
            term: bad.named.clone(),
        },
    ];
    let mut detail = String::new();
    for e in &bad.entries {
        if let DiagramOutcome::Violation {
            reason,
            indexed_reduct,
            named_reduct,
        } = &e.outcome
        {
            if detail.is_empty() {
                detail = format!("at `{}`: {reason}", e.position);
            }
            for (label, t) in [
                ("indexed reduct", indexed_reduct),
                ("named reduct", named_reduct),
            ] {
                if let Some(t) = t {
                    terms.push(LabeledTerm {
                        label: format!("{label} at `{}`", e.position),
                        term: t.clone(),
                    });
                }
            }
        }
    }
    Some((detail, terms))
}

fn bisim_sample(cfg: &GenConfig, seed: u64) -> Option<SampleRecord> {
    let from_idx =
        |t: &IndexedTerm| RelatedPair::from_indexed(t.clone()).map_err(|e| e.to_string());
    let from_named = |s: &NamedTerm| RelatedPair::from_named(s.clone()).map_err(|e| e.to_string());
    let (detail, mut terms, original) = match seed_term(cfg, seed) {
        Ok(t) => {
            bisim_violation(from_idx(&t))?;
            let small = shrink_indexed(&t, |u| {
                u.is_well_formed() && bisim_violation(from_idx(u)).is_some()
            });
            let (d, ts) = bisim_violation(from_idx(&small)).expect("shrinking keeps the failure");
            (d, ts, t.to_string())
        }
        Err(s) => {
            bisim_violation(from_named(&s))?;
            let small = shrink_named(&s, |u| bisim_violation(from_named(u)).is_some());
            let (d, ts) = bisim_violation(from_named(&small)).expect("shrinking keeps the failure");
            (d, ts, s.to_string())
        }
    };
    terms.push(LabeledTerm {
        label: "generated".into(),
        term: original,
    });
    Some(SampleRecord {
        property: "bisimulation".into(),
        seed,
        status: SampleStatus::Violation,
        detail,
        terms,
    })
}

/// One-step diagrams along each generated pair's reduction.
pub fn fuzz_bisim(cfg: &GenConfig, count: usize) -> FuzzReport {
    let records = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| bisim_sample(cfg, cfg.seed.wrapping_add(i)))
        .collect();
    FuzzReport::from_records(Suite::Bisim, cfg, count, count, records)
}

fn confluence_record(seed: u64, r: ConfluenceReport) -> Option<SampleRecord> {
    let status = match r.status() {
        ConfluenceStatus::Confluent => return None,
        ConfluenceStatus::Violation => SampleStatus::Violation,
        ConfluenceStatus::BudgetExceeded => SampleStatus::BudgetExceeded,
    };
    let mut terms = vec![LabeledTerm {
        label: "term".into(),
        term: r.term.clone(),
    }];
    for nf in &r.normal_forms {
        terms.push(LabeledTerm {
            label: "normal form".into(),
            term: nf.clone(),
        });
    }
    for p in r.unjoined.iter().chain(&r.undecided).take(3) {
        terms.push(LabeledTerm {
            label: "peak source".into(),
            term: p.source.clone(),
        });
        terms.push(LabeledTerm {
            label: "peak left".into(),
            term: p.left.clone(),
        });
        terms.push(LabeledTerm {
            label: "peak right".into(),
            term: p.right.clone(),
        });
    }
    let detail = format!(
        "{} states, {} peaks, {} joined, {} unjoined, {} undecided, {} normal forms{}",
        r.states,
        r.peaks,
        r.joined,
        r.unjoined.len(),
        r.undecided.len(),
        r.normal_forms.len(),
        if r.state_limit_hit {
            ", state limit hit"
        } else {
            ""
        }
    );
    Some(SampleRecord {
        property: "confluence".into(),
        seed,
        status,
        detail,
        terms,
    })
}

/// Candidate draws per confluence sample.
pub const PEAK_ATTEMPTS: u64 = 4096;

/// The first of a deterministic sequence of candidates for `seed` that has at
/// least two redexes, or the candidate with the most redexes.
fn peak_rich_term(cfg: &GenConfig, seed: u64) -> Result<IndexedTerm, NamedTerm> {
    let mut best: Option<(usize, Result<IndexedTerm, NamedTerm>)> = None;
    for k in 0..PEAK_ATTEMPTS {
        let candidate = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k);
        let c = cfg.with_seed(candidate);
        let t = if seed.is_multiple_of(2) {
            Ok(gen_indexed(&c))
        } else {
            Err(gen_named(&c))
        };
        let redexes = match &t {
            Ok(t) => t.redexes().len(),
            Err(s) => s.redexes().len(),
        };
        if redexes >= 2 {
            return t;
        }
        if best.as_ref().is_none_or(|(r, _)| redexes > *r) {
            best = Some((redexes, t));
        }
    }
    best.expect("at least one attempt").1
}

pub fn confluence_sample(cfg: &GenConfig, seed: u64) -> ConfluenceReport {
    match peak_rich_term(cfg, seed) {
        Ok(t) => check_confluence_bounded(&t, CONFLUENCE_DEPTH, CONFLUENCE_JOIN_BUDGET),
        Err(s) => check_confluence_bounded(&s, CONFLUENCE_DEPTH, CONFLUENCE_JOIN_BUDGET),
    }
}

/// Bounded confluence of one generated term per seed, each chosen to contain
/// at least two redexes when the generator allows it.
pub fn fuzz_confluence(cfg: &GenConfig, count: usize) -> FuzzReport {
    let records = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            confluence_record(seed, confluence_sample(cfg, seed))
        })
        .collect();
    FuzzReport::from_records(Suite::Confluence, cfg, count, count, records)
}

/// Every lemma property on `count` instances each.
pub fn fuzz_lemmas(cfg: &GenConfig, count: usize) -> FuzzReport {
    let report = check_lemma_suite(cfg, count);
    let samples = report.properties.iter().map(|p| p.samples).sum();
    let records = report
        .properties
        .into_iter()
        .flat_map(|p| {
            p.failures.into_iter().map(move |c| SampleRecord {
                property: p.property.to_string(),
                seed: c.seed,
                status: SampleStatus::Violation,
                detail: c.detail,
                terms: c.terms,
            })
        })
        .collect();
    FuzzReport::from_records(Suite::Lemmas, cfg, count, samples, records)
}

pub fn fuzz(suite: Suite, cfg: &GenConfig, count: usize) -> FuzzReport {
    match suite {
        Suite::Bisim => fuzz_bisim(cfg, count),
        Suite::Lemmas => fuzz_lemmas(cfg, count),
        Suite::Confluence => fuzz_confluence(cfg, count),
    }
}
