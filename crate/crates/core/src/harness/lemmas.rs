//! Property suite over the index arithmetic, the indexed engine and the
//! translations.
//!
//! Each property draws its instance from `(seed, property name)`, so any
//! failure is reproducible from the pair alone.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{
    gen_indexed_pattern, gen_indexed_with, gen_named_pattern, gen_named_with, FreeShape, GenConfig,
    FREE_ROWS,
};
use super::shrink::{shrink_indexed, shrink_named};
use crate::error::Result;
use crate::indexed::{
    canonicalize_secondary, eq_mod_secondary, fdec, finc, finc_match, match_idx, IdxKind,
    IndexedMatch, IndexedTerm, LevelSubst,
};
use crate::named::{alpha_eq, match_named, NamedMatch, NamedSubst, NamedTerm, Symbol};
use crate::outcome::MatchOutcome;
use crate::reduce::Rewrite;
use crate::translate::{
    to_indexed, to_indexed_default, to_named, to_named_default, translate_match_to_idx,
    translate_match_to_named, translate_subst_to_idx, translate_subst_to_named, FreshGen,
    NameTable,
};

#[derive(Debug, Clone, Serialize)]
pub struct LabeledTerm {
    pub label: String,
    pub term: String,
}

fn labeled(label: &str, term: impl ToString) -> LabeledTerm {
    LabeledTerm {
        label: label.into(),
        term: term.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub detail: String,
    /// Shrunk instance first, then the original.
    pub terms: Vec<LabeledTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub samples: usize,
    pub failures: Vec<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub count: usize,
    pub properties: Vec<PropertyReport>,
}

impl LemmaReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures.len()).sum()
    }

    pub fn is_ok(&self) -> bool {
        self.failures() == 0
    }
}

struct Failure {
    detail: String,
    terms: Vec<LabeledTerm>,
}

enum Verdict {
    Pass,
    Fail(String),
    /// The instance does not meet the property's preconditions.
    Skip(String),
}

use Verdict::{Fail, Pass, Skip};

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Pass
    } else {
        Fail(detail())
    }
}

fn skip_on_err<T>(r: Result<T>) -> std::result::Result<T, Verdict> {
    r.map_err(|e| Skip(e.to_string()))
}

macro_rules! tri {
    ($e:expr) => {
        match skip_on_err($e) {
            Ok(v) => v,
            Err(v) => return v,
        }
    };
}

type Runner = fn(&GenConfig, &mut ChaCha8Rng) -> Option<Failure>;

/// A named property of the suite.
pub struct Property {
    pub name: &'static str,
    run: Runner,
}

fn finish(
    label: &str,
    original: String,
    shrunk: String,
    first: Verdict,
    again: impl FnOnce() -> Verdict,
    mut context: Vec<LabeledTerm>,
) -> Option<Failure> {
    let detail = match first {
        Pass => return None,
        Skip(why) => {
            return Some(Failure {
                detail: format!("generated instance violates preconditions: {why}"),
                terms: {
                    context.insert(0, labeled(label, original));
                    context
                },
            })
        }
        Fail(why) => match again() {
            Fail(d) => d,
            _ => why,
        },
    };
    let mut terms = vec![labeled(label, &shrunk)];
    terms.extend(context);
    if shrunk != original {
        terms.push(labeled(&format!("{label} (unshrunk)"), original));
    }
    Some(Failure { detail, terms })
}

fn on_idx(
    label: &str,
    t: IndexedTerm,
    context: Vec<LabeledTerm>,
    check: impl Fn(&IndexedTerm) -> Verdict,
) -> Option<Failure> {
    let first = check(&t);
    let small = match first {
        Fail(_) => shrink_indexed(&t, |u| matches!(check(u), Fail(_))),
        _ => t.clone(),
    };
    finish(
        label,
        t.to_string(),
        small.to_string(),
        first,
        || check(&small),
        context,
    )
}

fn on_named(
    label: &str,
    t: NamedTerm,
    context: Vec<LabeledTerm>,
    check: impl Fn(&NamedTerm) -> Verdict,
) -> Option<Failure> {
    let first = check(&t);
    let small = match first {
        Fail(_) => shrink_named(&t, |u| matches!(check(u), Fail(_))),
        _ => t.clone(),
    };
    finish(
        label,
        t.to_string(),
        small.to_string(),
        first,
        || check(&small),
        context,
    )
}

fn s(name: &str) -> Symbol {
    Symbol::new(name).expect("valid symbol")
}

fn default_free() -> Vec<Symbol> {
    (1..=FREE_ROWS).map(|k| s(&format!("x{k}"))).collect()
}

fn idx_term(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> IndexedTerm {
    let shape = FreeShape::singletons(FREE_ROWS);
    gen_indexed_with(cfg, rng, &shape, &shape)
}

fn named_term(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> NamedTerm {
    let free = default_free();
    gen_named_with(cfg, rng, &free, &free, &[])
}

fn small(cfg: &GenConfig) -> GenConfig {
    GenConfig {
        max_size: cfg.max_size.clamp(1, 6),
        ..cfg.clone()
    }
}

fn kind(rng: &mut ChaCha8Rng) -> IdxKind {
    if rng.gen_bool(0.5) {
        IdxKind::Var
    } else {
        IdxKind::Match
    }
}

/// A table with the given row lengths, symbols `<prefix><row>c<col>`.
fn table(prefix: &str, lens: &[usize]) -> NameTable {
    NameTable::new(
        lens.iter()
            .enumerate()
            .map(|(r, &len)| {
                (1..=len)
                    .map(|c| s(&format!("{prefix}{}c{c}", r + 1)))
                    .collect()
            })
            .collect(),
    )
}

fn row_lens(rng: &mut ChaCha8Rng, rows: usize) -> Vec<usize> {
    (0..rows).map(|_| rng.gen_range(1..=2)).collect()
}

fn lens(t: &NameTable) -> Vec<usize> {
    t.rows.iter().map(Vec::len).collect()
}

fn concat(parts: &[&NameTable]) -> NameTable {
    NameTable::new(parts.iter().flat_map(|t| t.rows.iter().cloned()).collect())
}

/// Replaces the bound matchables of an abstraction-free pattern by values,
/// yielding an argument likely to match it.
fn instantiate_idx(
    p: &IndexedTerm,
    n: usize,
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
) -> Option<IndexedTerm> {
    fn go(p: &IndexedTerm, vals: &[IndexedTerm]) -> Option<IndexedTerm> {
        Some(match p {
            IndexedTerm::Var(b) => IndexedTerm::Var(*b),
            IndexedTerm::Match(b) if b.primary == 1 => vals.get(b.secondary - 1)?.clone(),
            IndexedTerm::Match(b) => IndexedTerm::matchable(b.primary - 1, b.secondary),
            IndexedTerm::App(f, a) => IndexedTerm::app(go(f, vals)?, go(a, vals)?),
            IndexedTerm::Abs(..) => return None,
        })
    }
    let vals: Vec<IndexedTerm> = (0..n).map(|_| idx_term(&small(cfg), rng)).collect();
    go(p, &vals)
}

fn instantiate_named(
    p: &NamedTerm,
    theta: &[Symbol],
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
) -> Option<NamedTerm> {
    fn go(p: &NamedTerm, theta: &[Symbol], vals: &[NamedTerm]) -> Option<NamedTerm> {
        Some(match p {
            NamedTerm::Match(x) => match theta.iter().position(|y| y == x) {
                Some(j) => vals[j].clone(),
                None => p.clone(),
            },
            NamedTerm::Var(_) => p.clone(),
            NamedTerm::App(f, a) => NamedTerm::app(go(f, theta, vals)?, go(a, theta, vals)?),
            NamedTerm::Abs(..) => return None,
        })
    }
    let vals: Vec<NamedTerm> = theta.iter().map(|_| named_term(&small(cfg), rng)).collect();
    go(p, theta, &vals)
}

/// Pattern and argument for an abstraction of arity `n`.
fn idx_match_instance(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> (usize, IndexedTerm, IndexedTerm) {
    let n = rng.gen_range(0..=cfg.max_arity);
    let shape = FreeShape::singletons(FREE_ROWS);
    let p = gen_indexed_pattern(cfg, rng, n, &shape, &shape);
    let u = if rng.gen_bool(0.5) {
        instantiate_idx(&p, n, cfg, rng)
    } else {
        None
    };
    let u = u.unwrap_or_else(|| idx_term(cfg, rng));
    (n, p, u)
}

fn iterate_finc(kind: IdxKind, k: usize, times: usize, t: &IndexedTerm) -> IndexedTerm {
    (0..times).fold(t.clone(), |acc, _| finc(kind, k, &acc))
}

// --- index arithmetic ---

fn finc_var_var(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let k = rng.gen_range(1..=4);
    let l = rng.gen_range(0..k);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let a = finc(IdxKind::Var, k, &finc(IdxKind::Var, l, t));
        let b = finc(IdxKind::Var, l, &finc(IdxKind::Var, k - 1, t));
        verdict(a == b, || format!("k={k} l={l}: {a} vs {b}"))
    })
}

fn finc_match_match(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let k = rng.gen_range(1..=4);
    let l = rng.gen_range(0..k);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let a = finc(IdxKind::Match, k, &finc(IdxKind::Match, l, t));
        let b = finc(IdxKind::Match, l, &finc(IdxKind::Match, k - 1, t));
        verdict(a == b, || format!("k={k} l={l}: {a} vs {b}"))
    })
}

fn finc_var_match(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let k = rng.gen_range(0..=4);
    let l = rng.gen_range(0..=4);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let a = finc(IdxKind::Var, k, &finc(IdxKind::Match, l, t));
        let b = finc(IdxKind::Match, l, &finc(IdxKind::Var, k, t));
        verdict(a == b, || format!("k={k} l={l}: {a} vs {b}"))
    })
}

fn fdec_after_finc(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let kind = kind(rng);
    let k = rng.gen_range(0..=4);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| match fdec(kind, k, &finc(kind, k, t)) {
        Ok(back) => verdict(back == *t, || format!("{kind:?} k={k}: got {back}")),
        Err(e) => Fail(format!("{kind:?} k={k}: {e}")),
    })
}

fn finc_leaves_gap(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let kind = kind(rng);
    let k = rng.gen_range(0..=4);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let u = finc(kind, k, t);
        verdict(u.free(kind).iter().all(|b| b.primary != k + 1), || {
            format!(
                "{kind:?} k={k}: {u} has a free index with primary {}",
                k + 1
            )
        })
    })
}

fn finc_after_fdec(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let kind = kind(rng);
    let k = rng.gen_range(0..=3);
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let blocked = t.free(kind).iter().any(|b| b.primary == k + 1);
        match fdec(kind, k, t) {
            Err(e) => verdict(blocked, || format!("{kind:?} k={k}: unexpected {e}")),
            Ok(d) if blocked => Fail(format!("{kind:?} k={k}: decrement succeeded with {d}")),
            Ok(d) => {
                let back = finc(kind, k, &d);
                verdict(back == *t, || format!("{kind:?} k={k}: got {back}"))
            }
        }
    })
}

// --- indexed engine ---

fn finc_lifting(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let (n, p, u) = idx_match_instance(cfg, rng);
    let k = rng.gen_range(0..=2);
    let ctx = vec![labeled("pattern", &p), labeled("arity", n)];
    on_idx("argument", u, ctx, |u| {
        let lifted = match_idx(n, &p, &finc(IdxKind::Var, k, u));
        let expect = finc_match(k, &match_idx(n, &p, u));
        verdict(lifted == expect, || {
            format!("k={k}: {lifted:?} vs {expect:?}")
        })
    })
}

fn match_domain(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let (n, p, u) = idx_match_instance(cfg, rng);
    let ctx = vec![labeled("pattern", &p), labeled("arity", n)];
    on_idx("argument", u, ctx, |u| match match_idx(n, &p, u) {
        MatchOutcome::Success(sigma) => {
            let dom: Vec<usize> = sigma.map.keys().copied().collect();
            verdict(
                sigma.level == 1 && dom == (1..=n).collect::<Vec<_>>(),
                || format!("domain {dom:?} at level {}", sigma.level),
            )
        }
        _ => Pass,
    })
}

fn step_preserves_well_formedness(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        if !t.is_well_formed() {
            return Skip("ill-formed".into());
        }
        for pos in t.redexes() {
            match t.step_at(&pos) {
                Ok(u) if u.is_well_formed() => {}
                Ok(u) => return Fail(format!("step at `{pos}` gives ill-formed {u}")),
                Err(e) => return Fail(format!("step at `{pos}`: {e}")),
            }
        }
        Pass
    })
}

fn closed_stays_closed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let cfg = GenConfig {
        closed: true,
        ..cfg.clone()
    };
    let t = idx_term(&cfg, rng);
    on_idx("t", t, vec![], |t| {
        if !t.is_closed() || !t.is_well_formed() {
            return Skip("open or ill-formed".into());
        }
        for pos in t.redexes() {
            match t.step_at(&pos) {
                Ok(u) if u.is_closed() => {}
                Ok(u) => return Fail(format!("step at `{pos}` gives open {u}")),
                Err(e) => return Fail(format!("step at `{pos}`: {e}")),
            }
        }
        Pass
    })
}

fn canonical_idempotent(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let c = tri!(canonicalize_secondary(t));
        let cc = tri!(canonicalize_secondary(&c));
        let eq = tri!(eq_mod_secondary(t, &c));
        verdict(c == cc && eq, || {
            format!("canonical {c}, twice {cc}, related {eq}")
        })
    })
}

/// Permutes the slots of the abstraction at the root of `t`.
fn permute_slots(t: &IndexedTerm, perm: &[usize]) -> IndexedTerm {
    fn relabel(t: &IndexedTerm, kind: IdxKind, depth: usize, perm: &[usize]) -> IndexedTerm {
        match t {
            IndexedTerm::Var(b) if kind == IdxKind::Var && b.primary == depth + 1 => {
                IndexedTerm::var(b.primary, perm[b.secondary - 1])
            }
            IndexedTerm::Match(b) if kind == IdxKind::Match && b.primary == depth + 1 => {
                IndexedTerm::matchable(b.primary, perm[b.secondary - 1])
            }
            IndexedTerm::Var(_) | IndexedTerm::Match(_) => t.clone(),
            IndexedTerm::App(f, a) => {
                IndexedTerm::app(relabel(f, kind, depth, perm), relabel(a, kind, depth, perm))
            }
            IndexedTerm::Abs(n, p, b) => {
                let (dp, db) = match kind {
                    IdxKind::Match => (depth + 1, depth),
                    IdxKind::Var => (depth, depth + 1),
                };
                IndexedTerm::abs(*n, relabel(p, kind, dp, perm), relabel(b, kind, db, perm))
            }
        }
    }
    match t {
        IndexedTerm::Abs(n, p, b) => IndexedTerm::abs(
            *n,
            relabel(p, IdxKind::Match, 0, perm),
            relabel(b, IdxKind::Var, 0, perm),
        ),
        _ => t.clone(),
    }
}

fn eq_mod_secondary_permutation(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let cfg = GenConfig {
        max_arity: cfg.max_arity.max(2),
        ..cfg.clone()
    };
    let n = rng.gen_range(2..=cfg.max_arity);
    let shape = FreeShape::singletons(FREE_ROWS);
    let p = gen_indexed_pattern(&cfg, rng, n, &shape, &shape);
    let body = idx_term(&cfg, rng);
    // Mentions every slot of the outer binder in its body.
    let body = (1..=n).fold(body, |acc, j| IndexedTerm::app(acc, IndexedTerm::var(1, j)));
    let t = IndexedTerm::abs(n, p, body);
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    on_idx(
        "t",
        t,
        vec![labeled("permutation", format!("{perm:?}"))],
        |t| {
            if !matches!(t, IndexedTerm::Abs(m, ..) if *m == n) {
                return Skip("root is not the permuted binder".into());
            }
            let u = permute_slots(t, &perm);
            let there = tri!(eq_mod_secondary(t, &u));
            let back = tri!(eq_mod_secondary(&u, t));
            let refl = tri!(eq_mod_secondary(t, t));
            verdict(there && back && refl, || {
                format!("permuted {u}: {there}/{back}/{refl}")
            })
        },
    )
}

fn step_commutes_with_canonical(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        if !t.is_well_formed() {
            return Skip("ill-formed".into());
        }
        let c = tri!(canonicalize_secondary(t));
        if c.redexes() != t.redexes() {
            return Fail(format!("canonical form {c} has different redexes"));
        }
        for pos in t.redexes() {
            let a = tri!(t.step_at(&pos).and_then(|u| canonicalize_secondary(&u)));
            let b = tri!(c.step_at(&pos).and_then(|u| canonicalize_secondary(&u)));
            if a != b {
                return Fail(format!("at `{pos}`: {a} vs {b}"));
            }
        }
        Pass
    })
}

// --- translations ---

fn data_biased_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> NamedTerm {
    if rng.gen_bool(0.5) {
        return named_term(cfg, rng);
    }
    let head = NamedTerm::Match(default_free().choose(rng).unwrap().clone());
    let args = rng.gen_range(0..=2);
    (0..args).fold(head, |acc, _| {
        NamedTerm::app(acc, named_term(&small(cfg), rng))
    })
}

fn data_biased_idx(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> IndexedTerm {
    if rng.gen_bool(0.5) {
        return idx_term(cfg, rng);
    }
    let head = IndexedTerm::matchable(rng.gen_range(1..=FREE_ROWS), 1);
    let args = rng.gen_range(0..=2);
    (0..args).fold(head, |acc, _| {
        IndexedTerm::app(acc, idx_term(&small(cfg), rng))
    })
}

fn matchable_form_to_indexed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = data_biased_named(cfg, rng);
    on_named("t", t, vec![], |t| {
        let u = to_indexed_default(t);
        verdict(
            t.is_data() == u.is_data() && t.is_matchable_form() == u.is_matchable_form(),
            || format!("translation {u} disagrees on data/matchable form"),
        )
    })
}

fn matchable_form_to_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = data_biased_idx(cfg, rng);
    on_idx("t", t, vec![], |t| {
        let u = tri!(to_named_default(t));
        verdict(
            t.is_data() == u.is_data() && t.is_matchable_form() == u.is_matchable_form(),
            || format!("translation {u} disagrees on data/matchable form"),
        )
    })
}

fn theta_from_pool(rng: &mut ChaCha8Rng, n: usize) -> Vec<Symbol> {
    let pool = ["a", "b", "c", "d", "x1", "x2"];
    pool.choose_multiple(rng, n).map(|x| s(x)).collect()
}

fn match_preservation_to_indexed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let n = rng.gen_range(0..=cfg.max_arity.min(6));
    let theta = theta_from_pool(rng, n);
    let free = default_free();
    let p = gen_named_pattern(cfg, rng, &theta, &free, &free);
    let u = if rng.gen_bool(0.5) {
        instantiate_named(&p, &theta, cfg, rng)
    } else {
        None
    };
    let u = u.unwrap_or_else(|| named_term(cfg, rng));
    let table = NameTable::default_rows(FREE_ROWS);
    let theta_text = theta
        .iter()
        .map(Symbol::as_str)
        .collect::<Vec<_>>()
        .join(",");
    let ctx = vec![labeled("pattern", &p), labeled("theta", theta_text)];
    on_named("argument", u, ctx, |u| {
        let translated = tri!(translate_match_to_idx(&theta, &p, u, &table, &table));
        let direct: NamedMatch = match_named(&theta, &p, u);
        let expect: IndexedMatch = match direct {
            MatchOutcome::Success(sigma) => {
                MatchOutcome::Success(tri!(translate_subst_to_idx(&sigma, &theta, &table, &table)))
            }
            MatchOutcome::Fail => MatchOutcome::Fail,
            MatchOutcome::Wait => MatchOutcome::Wait,
        };
        verdict(translated == expect, || {
            format!("translated match {translated:?}, named match maps to {expect:?}")
        })
    })
}

fn match_preservation_to_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let (n, p, u) = idx_match_instance(cfg, rng);
    let table = NameTable::default_rows(FREE_ROWS);
    let ctx = vec![labeled("pattern", &p), labeled("arity", n)];
    on_idx("argument", u, ctx, |u| {
        let mut gen = FreshGen::for_tables(&table, &table);
        let theta: Vec<Symbol> = (0..n).map(|_| gen.fresh()).collect();
        let translated = tri!(translate_match_to_named(
            n, &p, u, &theta, &table, &table, &mut gen
        ));
        let direct = match_idx(n, &p, u);
        match (&translated, direct) {
            (MatchOutcome::Fail, MatchOutcome::Fail) | (MatchOutcome::Wait, MatchOutcome::Wait) => {
                Pass
            }
            (MatchOutcome::Success(a), MatchOutcome::Success(sigma)) => {
                let b = tri!(translate_subst_to_named(
                    &sigma, &theta, &table, &table, &mut gen
                ));
                let same = a.domain() == b.domain()
                    && a.iter()
                        .all(|(x, v)| b.get(x).is_some_and(|w| alpha_eq(v, w)));
                verdict(same, || format!("substitutions differ: {a:?} vs {b:?}"))
            }
            (t, d) => Fail(format!("translated {}, direct {}", t.tag(), d.tag())),
        }
    })
}

fn var_table() -> NameTable {
    NameTable::new(vec![vec![s("p1"), s("p2")], vec![s("q1")]])
}

fn match_table() -> NameTable {
    NameTable::new(vec![vec![s("m1")], vec![s("n1"), s("n2")]])
}

fn subst_lemma_to_indexed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let i = rng.gen_range(1..=3);
    let y = table("y", &row_lens(rng, i - 1));
    let m = rng.gen_range(1..=cfg.max_arity.max(1));
    let theta: Vec<Symbol> = (1..=m).map(|j| s(&format!("t{j}"))).collect();
    let (x, mt) = (var_table(), match_table());
    let inner = concat(&[&y, &NameTable::new(vec![theta.clone()]), &x]);
    let outer = concat(&[&y, &x]);
    let free_s: Vec<Symbol> = inner.symbols().into_iter().collect();
    let free_m: Vec<Symbol> = mt.symbols().into_iter().collect();
    let binders = ["a", "b", "p1", "m1", "t1", "y1c1"].map(s);
    let body = gen_named_with(cfg, rng, &free_s, &free_m, &binders);
    let x_syms: Vec<Symbol> = x.symbols().into_iter().collect();
    let sigma: NamedSubst = theta
        .iter()
        .map(|t| {
            (
                t.clone(),
                gen_named_with(&small(cfg), rng, &x_syms, &free_m, &binders),
            )
        })
        .collect();
    let ctx = sigma
        .iter()
        .map(|(x, v)| labeled(&format!("sigma({x})"), v))
        .collect();
    on_named("s", body, ctx, |body| {
        let lhs = tri!(to_indexed(&sigma.apply(body), &outer, &mt));
        let mut level = LevelSubst::new(i);
        for (j, t) in theta.iter().enumerate() {
            let v = tri!(to_indexed(
                sigma.get(t).expect("total on theta"),
                &outer,
                &mt
            ));
            level.map.insert(j + 1, finc(IdxKind::Var, i - 1, &v));
        }
        let inner_s = tri!(to_indexed(body, &inner, &mt));
        let rhs = tri!(level
            .apply(&inner_s)
            .and_then(|r| fdec(IdxKind::Var, i - 1, &r)));
        verdict(lhs == rhs, || format!("level {i}: {lhs} vs {rhs}"))
    })
}

fn subst_lemma_to_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let i = rng.gen_range(1..=3);
    let y = table("y", &row_lens(rng, i - 1));
    let m = rng.gen_range(1..=cfg.max_arity.max(1));
    let theta: Vec<Symbol> = (1..=m).map(|j| s(&format!("t{j}"))).collect();
    let (x, mt) = (var_table(), match_table());
    let inner = concat(&[&y, &NameTable::new(vec![theta.clone()]), &x]);
    let outer = concat(&[&y, &x]);
    let body = gen_indexed_with(
        cfg,
        rng,
        &FreeShape { rows: lens(&inner) },
        &FreeShape { rows: lens(&mt) },
    );
    let values: Vec<IndexedTerm> = (0..m)
        .map(|_| {
            gen_indexed_with(
                &small(cfg),
                rng,
                &FreeShape { rows: lens(&outer) },
                &FreeShape { rows: lens(&mt) },
            )
        })
        .collect();
    let reserved: Vec<Symbol> = inner.symbols().into_iter().chain(mt.symbols()).collect();
    let ctx = values
        .iter()
        .enumerate()
        .map(|(j, v)| labeled(&format!("sigma({i}.{})", j + 1), v))
        .collect();
    on_idx("s", body, ctx, |body| {
        let mut level = LevelSubst::new(i);
        for (j, v) in values.iter().enumerate() {
            level.map.insert(j + 1, finc(IdxKind::Var, i - 1, v));
        }
        let reduced = tri!(level
            .apply(body)
            .and_then(|r| fdec(IdxKind::Var, i - 1, &r)));
        let mut gen = FreshGen::new(reserved.iter().cloned());
        let lhs = tri!(to_named(&reduced, &outer, &mt, &mut gen));
        let mut gen = FreshGen::new(reserved.iter().cloned());
        let named_body = tri!(to_named(body, &inner, &mt, &mut gen));
        let mut sigma = NamedSubst::new();
        for (t, v) in theta.iter().zip(&values) {
            sigma.insert(t.clone(), tri!(to_named(v, &outer, &mt, &mut gen)));
        }
        let rhs = sigma.apply(&named_body);
        verdict(alpha_eq(&lhs, &rhs), || {
            format!("level {i}: {lhs} vs {rhs}")
        })
    })
}

/// Table of `n` rows and the same table with rows `k+1 .. k+i-1` deleted.
fn increment_tables(rng: &mut ChaCha8Rng, prefix: &str) -> (usize, usize, NameTable, NameTable) {
    let n = rng.gen_range(2..=5);
    let k = rng.gen_range(0..n);
    let i = rng.gen_range(1..=n - k);
    let full = table(prefix, &row_lens(rng, n));
    let mut rows = full.rows[..k].to_vec();
    rows.extend(full.rows[k + i - 1..].iter().cloned());
    (k, i, full, NameTable::new(rows))
}

fn increment_to_indexed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let kind = kind(rng);
    let (k, i, full, short) = increment_tables(rng, "r");
    let (vars_full, vars_short, matches_full, matches_short) = match kind {
        IdxKind::Var => (full, short, match_table(), match_table()),
        IdxKind::Match => (var_table(), var_table(), full, short),
    };
    let fv: Vec<Symbol> = vars_short.symbols().into_iter().collect();
    let fm: Vec<Symbol> = matches_short.symbols().into_iter().collect();
    let t = gen_named_with(cfg, rng, &fv, &fm, &[]);
    let ctx = vec![labeled("shift", format!("{kind:?} k={k} i={i}"))];
    on_named("t", t, ctx, |t| {
        let lhs = tri!(to_indexed(t, &vars_full, &matches_full));
        let short = tri!(to_indexed(t, &vars_short, &matches_short));
        let rhs = iterate_finc(kind, k, i - 1, &short);
        verdict(lhs == rhs, || format!("{lhs} vs {rhs}"))
    })
}

fn increment_to_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let kind = kind(rng);
    let (k, i, full, short) = increment_tables(rng, "r");
    let (vars_full, vars_short, matches_full, matches_short) = match kind {
        IdxKind::Var => (full, short, match_table(), match_table()),
        IdxKind::Match => (var_table(), var_table(), full, short),
    };
    let t = gen_indexed_with(
        cfg,
        rng,
        &FreeShape {
            rows: lens(&vars_short),
        },
        &FreeShape {
            rows: lens(&matches_short),
        },
    );
    let ctx = vec![labeled("shift", format!("{kind:?} k={k} i={i}"))];
    on_idx("t", t, ctx, |t| {
        let mut gen = FreshGen::for_tables(&vars_full, &matches_full);
        let lhs = tri!(to_named(
            &iterate_finc(kind, k, i - 1, t),
            &vars_full,
            &matches_full,
            &mut gen
        ));
        let mut gen = FreshGen::for_tables(&vars_full, &matches_full);
        let rhs = tri!(to_named(t, &vars_short, &matches_short, &mut gen));
        verdict(alpha_eq(&lhs, &rhs), || format!("{lhs} vs {rhs}"))
    })
}

fn invertibility_indexed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = idx_term(cfg, rng);
    on_idx("t", t, vec![], |t| {
        if !t.is_well_formed() {
            return Skip("ill-formed".into());
        }
        let named = tri!(to_named_default(t));
        let back = to_indexed_default(&named);
        let eq = tri!(eq_mod_secondary(&back, t));
        verdict(eq, || format!("via {named} back to {back}"))
    })
}

fn invertibility_named(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let t = named_term(cfg, rng);
    on_named("s", t, vec![], |t| {
        let idx = to_indexed_default(t);
        let back = tri!(to_named_default(&idx));
        verdict(alpha_eq(&back, t), || format!("via {idx} back to {back}"))
    })
}

fn binder_lists(t: &NamedTerm, out: &mut Vec<Vec<Symbol>>) {
    match t {
        NamedTerm::Var(_) | NamedTerm::Match(_) => {}
        NamedTerm::App(f, a) => {
            binder_lists(f, out);
            binder_lists(a, out);
        }
        NamedTerm::Abs(theta, p, b) => {
            out.push(theta.clone());
            binder_lists(p, out);
            binder_lists(b, out);
        }
    }
}

fn freshness(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Failure> {
    let vars = table("v", &row_lens(rng, 2));
    let matches = table("x", &row_lens(rng, 2));
    let t = gen_indexed_with(
        cfg,
        rng,
        &FreeShape { rows: lens(&vars) },
        &FreeShape {
            rows: lens(&matches),
        },
    );
    on_idx("t", t, vec![], |t| {
        let mut gen = FreshGen::for_tables(&vars, &matches);
        let named = tri!(to_named(t, &vars, &matches, &mut gen));
        let mut lists = Vec::new();
        binder_lists(&named, &mut lists);
        let mut seen: BTreeSet<Symbol> = vars
            .symbols()
            .into_iter()
            .chain(matches.symbols())
            .collect();
        for x in lists.iter().flatten() {
            if !seen.insert(x.clone()) {
                return Fail(format!("binder `{x}` in {named} is not fresh"));
            }
        }
        Pass
    })
}

/// Every property, in report order.
pub fn properties() -> Vec<Property> {
    let list: [(&'static str, Runner); 24] = [
        ("finc-var-var-commute", finc_var_var),
        ("finc-match-match-commute", finc_match_match),
        ("finc-var-match-commute", finc_var_match),
        ("fdec-after-finc-identity", fdec_after_finc),
        ("finc-leaves-gap", finc_leaves_gap),
        ("finc-after-fdec-iff", finc_after_fdec),
        ("finc-lifting-over-match", finc_lifting),
        ("match-domain", match_domain),
        (
            "step-preserves-well-formedness",
            step_preserves_well_formedness,
        ),
        ("closed-stays-closed", closed_stays_closed),
        ("canonical-idempotent", canonical_idempotent),
        ("eq-mod-secondary-permutation", eq_mod_secondary_permutation),
        ("step-commutes-with-canonical", step_commutes_with_canonical),
        ("matchable-form-to-indexed", matchable_form_to_indexed),
        ("matchable-form-to-named", matchable_form_to_named),
        (
            "match-preservation-to-indexed",
            match_preservation_to_indexed,
        ),
        ("match-preservation-to-named", match_preservation_to_named),
        ("substitution-to-indexed", subst_lemma_to_indexed),
        ("substitution-to-named", subst_lemma_to_named),
        ("increment-to-indexed", increment_to_indexed),
        ("increment-to-named", increment_to_named),
        ("invertibility-indexed", invertibility_indexed),
        ("invertibility-named", invertibility_named),
        ("freshness", freshness),
    ];
    list.into_iter()
        .map(|(name, run)| Property { name, run })
        .collect()
}

fn stream(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

impl Property {
    /// Runs one instance; `None` means it passed.
    pub fn check(&self, cfg: &GenConfig, seed: u64) -> Option<Counterexample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream(self.name));
        (self.run)(&cfg.with_seed(seed), &mut rng).map(|f| Counterexample {
            seed,
            detail: f.detail,
            terms: f.terms,
        })
    }

    /// Seeds `cfg.seed .. cfg.seed + count`, evaluated in parallel.
    pub fn run(&self, cfg: &GenConfig, count: usize) -> PropertyReport {
        let failures: Vec<Counterexample> = (0..count as u64)
            .into_par_iter()
            .filter_map(|i| self.check(cfg, cfg.seed.wrapping_add(i)))
            .collect();
        PropertyReport {
            property: self.name,
            samples: count,
            failures,
        }
    }
}

/// Runs the whole suite with `count` instances per property.
pub fn check_lemma_suite(cfg: &GenConfig, count: usize) -> LemmaReport {
    check_lemma_properties(cfg, count, |_| true)
}

/// Runs the properties whose name satisfies `select`.
pub fn check_lemma_properties(
    cfg: &GenConfig,
    count: usize,
    select: impl Fn(&str) -> bool,
) -> LemmaReport {
    let properties = properties()
        .iter()
        .filter(|p| select(p.name))
        .map(|p| p.run(cfg, count))
        .collect();
    LemmaReport {
        seed: cfg.seed,
        count,
        properties,
    }
}
