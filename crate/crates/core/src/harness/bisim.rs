//! The correspondence between indexed and named terms, and one-step
//! simulation diagrams over it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indexed::{eq_mod_secondary, IndexedTerm};
use crate::named::{alpha_eq, NamedTerm};
use crate::path::Path;
use crate::reduce::Rewrite;
use crate::translate::{
    default_slot, default_table, to_indexed, to_indexed_default, to_named, to_named_default,
    FreshGen, NameTable,
};

/// `t` and `s` denote the same term under the default tables.
///
/// Both directions are computed; a disagreement that cannot be explained by
/// `s` using free symbols outside the `x<k>` namespace is an engine bug and
/// surfaces as [`Error::RelationMismatch`].
pub fn related(t: &IndexedTerm, s: &NamedTerm) -> Result<bool> {
    t.check_well_formed()?;
    let forward = alpha_eq(&to_named_default(t)?, s);
    let backward = eq_mod_secondary(&to_indexed_default(s), t)?;
    let default_names = s.free_symbols().iter().all(|x| default_slot(x).is_some());
    if forward != backward && (forward || default_names) {
        return Err(Error::RelationMismatch(format!(
            "{t} vs {s}: named side {forward}, indexed side {backward}"
        )));
    }
    Ok(forward)
}

/// [`related`] relative to one singleton-row table used for both kinds.
pub fn related_in(t: &IndexedTerm, s: &NamedTerm, table: &NameTable) -> Result<bool> {
    t.check_well_formed()?;
    let mut gen = FreshGen::for_tables(table, table);
    let forward = alpha_eq(&to_named(t, table, table, &mut gen)?, s);
    let backward = match to_indexed(s, table, table) {
        Ok(u) => eq_mod_secondary(&u, t)?,
        Err(Error::UnboundSymbol(_)) => false,
        Err(e) => return Err(e),
    };
    if forward != backward {
        return Err(Error::RelationMismatch(format!(
            "{t} vs {s}: named side {forward}, indexed side {backward}"
        )));
    }
    Ok(forward)
}

/// An indexed term together with a named term it is related to, under the
/// table that interprets their free names.
///
/// Reduction never introduces free names, so both reducts of a step are
/// checked against the same table.
#[derive(Debug, Clone)]
pub struct RelatedPair {
    indexed: IndexedTerm,
    named: NamedTerm,
    table: NameTable,
}

impl RelatedPair {
    /// Fails unless the two terms are [`related`].
    pub fn new(indexed: IndexedTerm, named: NamedTerm) -> Result<Self> {
        if related(&indexed, &named)? {
            let table = NameTable::default_rows(indexed.max_free_primary());
            Ok(RelatedPair {
                indexed,
                named,
                table,
            })
        } else {
            Err(Error::RelationMismatch(format!(
                "{indexed} and {named} are not related"
            )))
        }
    }

    pub fn from_indexed(t: IndexedTerm) -> Result<Self> {
        let s = to_named_default(&t)?;
        RelatedPair::new(t, s)
    }

    /// Pairs `s` with its translation under [`default_table`], so free names
    /// outside the `x<k>` namespace are allowed.
    pub fn from_named(s: NamedTerm) -> Result<Self> {
        let table = default_table(&s);
        let t = to_indexed(&s, &table, &table)?;
        if related_in(&t, &s, &table)? {
            Ok(RelatedPair {
                indexed: t,
                named: s,
                table,
            })
        } else {
            Err(Error::RelationMismatch(format!(
                "{t} and {s} are not related"
            )))
        }
    }

    pub fn table(&self) -> &NameTable {
        &self.table
    }

    pub fn indexed(&self) -> &IndexedTerm {
        &self.indexed
    }

    pub fn named(&self) -> &NamedTerm {
        &self.named
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiagramOutcome {
    Commutes,
    Violation {
        reason: String,
        indexed_reduct: Option<String>,
        named_reduct: Option<String>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramEntry {
    pub position: String,
    #[serde(flatten)]
    pub outcome: DiagramOutcome,
}

/// Every one-step diagram out of a related pair.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub seed: Option<u64>,
    pub indexed: String,
    pub named: String,
    pub entries: Vec<DiagramEntry>,
    pub commutes: usize,
    pub violations: usize,
}

impl DiagramReport {
    pub fn is_ok(&self) -> bool {
        self.violations == 0
    }
}

/// Redex sets must coincide, and stepping both sides at each shared position
/// must land in a related pair.
pub fn check_bisim_step(pair: &RelatedPair) -> DiagramReport {
    let t = &pair.indexed;
    let s = &pair.named;
    let idx: BTreeSet<Path> = t.redexes().into_iter().collect();
    let nm: BTreeSet<Path> = s.redexes().into_iter().collect();
    let mut entries = Vec::new();
    for pos in idx.union(&nm) {
        let outcome = if !idx.contains(pos) || !nm.contains(pos) {
            let side = if idx.contains(pos) {
                "indexed"
            } else {
                "named"
            };
            DiagramOutcome::Violation {
                reason: format!("redex only on the {side} side"),
                indexed_reduct: None,
                named_reduct: None,
            }
        } else {
            diagram(t, s, pos, &pair.table)
        };
        entries.push(DiagramEntry {
            position: pos.to_string(),
            outcome,
        });
    }
    let violations = entries
        .iter()
        .filter(|e| matches!(e.outcome, DiagramOutcome::Violation { .. }))
        .count();
    DiagramReport {
        seed: None,
        indexed: t.to_string(),
        named: s.to_string(),
        commutes: entries.len() - violations,
        violations,
        entries,
    }
}

fn diagram(t: &IndexedTerm, s: &NamedTerm, pos: &Path, table: &NameTable) -> DiagramOutcome {
    let (t2, s2) = match (t.step_at(pos), s.step_at(pos)) {
        (Ok(t2), Ok(s2)) => (t2, s2),
        (t2, s2) => {
            return DiagramOutcome::Violation {
                reason: "step failed".into(),
                indexed_reduct: Some(show(t2)),
                named_reduct: Some(show(s2)),
            }
        }
    };
    match related_in(&t2, &s2, table) {
        Ok(true) => DiagramOutcome::Commutes,
        Ok(false) => DiagramOutcome::Violation {
            reason: "reducts are not related".into(),
            indexed_reduct: Some(t2.to_string()),
            named_reduct: Some(s2.to_string()),
        },
        Err(e) => DiagramOutcome::Violation {
            reason: e.to_string(),
            indexed_reduct: Some(t2.to_string()),
            named_reduct: Some(s2.to_string()),
        },
    }
}

fn show<T: std::fmt::Display>(r: Result<T>) -> String {
    match r {
        Ok(t) => t.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Checks the diagrams at the pair and at each term along its leftmost-outermost
/// reduction, for at most `max_steps` steps. Stops early on a violation.
pub fn check_bisim_run(pair: &RelatedPair, max_steps: usize) -> Vec<DiagramReport> {
    let mut reports = Vec::new();
    let mut current = pair.clone();
    for _ in 0..=max_steps {
        let report = check_bisim_step(&current);
        let ok = report.is_ok();
        reports.push(report);
        if !ok {
            break;
        }
        let Some(pos) = current.indexed.first_redex() else {
            break;
        };
        let (Ok(t), Ok(s)) = (current.indexed.step_at(&pos), current.named.step_at(&pos)) else {
            break;
        };
        current = RelatedPair {
            indexed: t,
            named: s,
            table: current.table,
        };
    }
    reports
}
