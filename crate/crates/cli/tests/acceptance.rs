//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use ppc_core::harness::{
    check_confluence_bounded, check_lemma_suite, fuzz_bisim, fuzz_confluence, gen_indexed,
    gen_named, GenConfig,
};
use ppc_core::indexed::{canonicalize_secondary, eq_mod_secondary};
use ppc_core::named::alpha_eq;
use ppc_core::syntax::{parse_indexed, parse_named};
use ppc_core::translate::{to_indexed, to_indexed_default, to_named, to_named_default};
use ppc_core::{normalize, FreshGen, IndexedTerm, NameTable, NamedTerm, NormalizeStatus, Rewrite};

const GOLDEN_BUDGET: Duration = Duration::from_millis(1);
const INVERTIBILITY_BUDGET: Duration = Duration::from_secs(10);
const BISIM_BUDGET: Duration = Duration::from_secs(30);
const LEMMA_BUDGET: Duration = Duration::from_secs(60);
const CONFLUENCE_BUDGET: Duration = Duration::from_secs(60);

const SAMPLES: usize = 1000;
const INVERTIBILITY_MAX_SIZE: usize = 25;
const BISIM_MAX_SIZE: usize = 20;
const CONFLUENCE_TERMS: usize = 200;
const CONFLUENCE_MAX_SIZE: usize = 12;
const CONFLUENCE_DEPTH: usize = 4;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn named(src: &str) -> NamedTerm {
    parse_named(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn indexed(src: &str) -> IndexedTerm {
    parse_indexed(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn rows(rows: &[&[&str]]) -> NameTable {
    NameTable::new(
        rows.iter()
            .map(|r| r.iter().map(|x| ppc_core::named::sym(x)).collect())
            .collect(),
    )
}

/// Median wall time of `runs` executions, after one warm-up.
fn median_time(runs: usize, mut f: impl FnMut()) -> Duration {
    f();
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

fn ppc(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ppc"))
        .args(args)
        .output()
        .expect("ppc binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

fn golden_named() -> Verdict {
    let src = r"(\[x] ^x . (\[y] x ^y . y)) (\[z] ^z . (^c z) ^n)";
    let expected = named(r"\[y] (^c ^y) ^n . y");
    let t = named(src);
    let n = normalize(&t, 1000, false).expect("normalizes");
    let time = median_time(11, || {
        normalize(&t, 1000, false).expect("normalizes");
    });
    let (out, code) = ppc(&["normalize", "--trace", src]);
    let trace_end = out.lines().rev().nth(1).unwrap_or("");
    let cli_ok = code == 0 && out.lines().count() == 4 && trace_end.ends_with(r"\[y] ^c ^y ^n . y");
    verdict(
        n.steps == 2
            && n.status == NormalizeStatus::Normal
            && alpha_eq(&n.term, &expected)
            && cli_ok
            && time < GOLDEN_BUDGET,
        format!(
            "{} steps to {}, cli trace ok {cli_ok}, {time:?} (< {GOLDEN_BUDGET:?})",
            n.steps, n.term
        ),
    )
}

fn golden_indexed() -> Verdict {
    let t = indexed(r"(\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)) (\{1} ^1.1 . (^1.1 1.1) ^2.1)");
    let expected = indexed(r"\{1} (^2.1 ^1.1) ^3.1 . 1.1");
    let n = normalize(&t, 1000, false).expect("normalizes");
    let time = median_time(11, || {
        normalize(&t, 1000, false).expect("normalizes");
    });
    let same = canonicalize_secondary(&n.term).ok() == canonicalize_secondary(&expected).ok();
    verdict(
        n.steps == 2 && n.status == NormalizeStatus::Normal && same && time < GOLDEN_BUDGET,
        format!(
            "{} steps to {}, {time:?} (< {GOLDEN_BUDGET:?})",
            n.steps, n.term
        ),
    )
}

fn translation_example() -> Verdict {
    let src = r"(\[x] ^y ^x . x) (^y z)";
    let s = named(src);
    let expected = indexed(r"(\{1} ^2.1 ^1.1 . 1.1) (^1.1 2.1)");
    let table = rows(&[&["y"], &["z"]]);
    let run = || {
        let t = to_indexed(&s, &table, &table).expect("tables cover the term");
        let mut gen = FreshGen::for_tables(&table, &table);
        let back = to_named(&t, &table, &table, &mut gen).expect("tables cover the term");
        (t, back)
    };
    let (t, back) = run();
    let time = median_time(11, || {
        run();
    });
    let (out, code) = ppc(&[
        "translate",
        "--to",
        "indexed",
        "--vtable",
        r#"[["y"],["z"]]"#,
        "--mtable",
        r#"[["y"],["z"]]"#,
        src,
    ]);
    let cli_ok = code == 0 && out.trim() == expected.to_string();
    verdict(
        t == expected && alpha_eq(&back, &s) && cli_ok && time < GOLDEN_BUDGET,
        format!("{t} and back {back}, cli ok {cli_ok}, {time:?} (< {GOLDEN_BUDGET:?})"),
    )
}

fn invertibility() -> Verdict {
    let cfg = GenConfig {
        seed: 4000,
        max_size: INVERTIBILITY_MAX_SIZE,
        max_arity: 3,
        ..GenConfig::default()
    };
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut ill_formed = 0;
    for k in 0..SAMPLES as u64 {
        let c = cfg.with_seed(cfg.seed + k);
        let t = gen_indexed(&c);
        if !t.is_well_formed() {
            ill_formed += 1;
            continue;
        }
        let ok = to_named_default(&t)
            .map(|s| to_indexed_default(&s))
            .and_then(|back| eq_mod_secondary(&back, &t))
            .unwrap_or(false);
        if !ok {
            failures.push(format!("indexed seed {}", c.seed));
        }
        let s = gen_named(&c);
        let ok = to_named_default(&to_indexed_default(&s))
            .map(|back| alpha_eq(&back, &s))
            .unwrap_or(false);
        if !ok {
            failures.push(format!("named seed {}", c.seed));
        }
    }
    let time = start.elapsed();
    verdict(
        failures.is_empty() && ill_formed == 0 && time < INVERTIBILITY_BUDGET,
        format!(
            "{SAMPLES}+{SAMPLES} terms (size <= {INVERTIBILITY_MAX_SIZE}), {} failures {:?}, {ill_formed} ill-formed, {time:?} (< {INVERTIBILITY_BUDGET:?})",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn bisimulation() -> Verdict {
    let cfg = GenConfig {
        seed: 100,
        max_size: BISIM_MAX_SIZE,
        ..GenConfig::default()
    };
    let start = Instant::now();
    let report = fuzz_bisim(&cfg, SAMPLES);
    let time = start.elapsed();
    verdict(
        report.samples >= SAMPLES && report.violations == 0 && time < BISIM_BUDGET,
        format!(
            "{} pairs, {} violations, {time:?} (< {BISIM_BUDGET:?})",
            report.samples, report.violations
        ),
    )
}

fn lemma_suite() -> Verdict {
    let cfg = GenConfig {
        seed: 1,
        max_size: 20,
        ..GenConfig::default()
    };
    let start = Instant::now();
    let report = check_lemma_suite(&cfg, SAMPLES);
    let time = start.elapsed();
    let short: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| p.samples < SAMPLES)
        .map(|p| p.property)
        .collect();
    let failing: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| !p.failures.is_empty())
        .map(|p| p.property)
        .collect();
    verdict(
        short.is_empty() && failing.is_empty() && time < LEMMA_BUDGET,
        format!(
            "{} properties x {SAMPLES} instances, failing {failing:?}, under-sampled {short:?}, {time:?} (< {LEMMA_BUDGET:?})",
            report.properties.len()
        ),
    )
}

/// Every term reachable from `t` in at most `depth` steps, modulo `key`.
fn reachable<T: Rewrite>(t: &T, depth: usize) -> Vec<T> {
    let mut seen: HashSet<T::Key> = HashSet::from([t.key()]);
    let mut all = vec![t.clone()];
    let mut frontier = vec![t.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for pos in u.redexes() {
                let v = u.step_at(&pos).expect("redex steps");
                if seen.insert(v.key()) {
                    all.push(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    all
}

fn confluence() -> Verdict {
    let cfg = GenConfig {
        seed: 7,
        max_size: CONFLUENCE_MAX_SIZE,
        ..GenConfig::default()
    };
    let start = Instant::now();
    let report = fuzz_confluence(&cfg, CONFLUENCE_TERMS);
    let time = start.elapsed();

    let motivating = named(r"(\[x,y] ^x ^y . y) ((\[w] ^w . ^z0 ^z1) ^z0)");
    let local = check_confluence_bounded(&motivating, CONFLUENCE_DEPTH, CONFLUENCE_DEPTH);
    let premature = named("^z0");
    let premature_reached = reachable(&motivating, CONFLUENCE_DEPTH)
        .iter()
        .any(|u| alpha_eq(u, &premature));
    let forms: BTreeSet<&str> = local.normal_forms.iter().map(String::as_str).collect();
    verdict(
        report.samples >= CONFLUENCE_TERMS
            && report.violations == 0
            && report.budget_exceeded == 0
            && forms == BTreeSet::from(["^z1"])
            && !premature_reached
            && time < CONFLUENCE_BUDGET,
        format!(
            "{} terms (size <= {CONFLUENCE_MAX_SIZE}, depth {CONFLUENCE_DEPTH}), {} violations, {} undecided; example normal forms {forms:?}, ^z0 reachable {premature_reached}, {time:?} (< {CONFLUENCE_BUDGET:?})",
            report.samples, report.violations, report.budget_exceeded
        ),
    )
}

/// Arguments covering every matching rule: bound and free matchables,
/// variables, data, abstractions and a stuck application.
const ARGUMENTS: [&str; 7] = [
    "^1.1",
    "^2.1",
    "1.1",
    "^1.1 ^2.1",
    r"\{1} ^1.1 . 1.1",
    "1.1 ^1.1",
    r"(\{1} ^1.1 . 1.1) 1.1",
];

fn matching_post_condition() -> Verdict {
    let mut not_fail = Vec::new();
    let mut redexes = Vec::new();
    for u in ARGUMENTS {
        let (out, code) = ppc(&["match", "--arity", "2", "^1.1", u]);
        if code != 0 || out.trim() != "Fail" {
            not_fail.push(u);
        }
        let app = IndexedTerm::app(indexed(r"\{2} ^1.1 . 1.2"), indexed(u));
        if app.is_redex() {
            redexes.push(u);
        }
    }
    verdict(
        not_fail.is_empty() && redexes.is_empty(),
        format!(
            "match reports Fail for {}/{} arguments; application is a redex for {}/{} arguments (expected none)",
            ARGUMENTS.len() - not_fail.len(),
            ARGUMENTS.len(),
            redexes.len(),
            ARGUMENTS.len()
        ),
    )
}

fn secondary_index_equality() -> Verdict {
    let a = indexed(r"\{2} ^1.1 ^1.2 . 1.1");
    let b = indexed(r"\{2} ^1.2 ^1.1 . 1.2");
    let pair_eq = eq_mod_secondary(&a, &b).expect("well-formed");
    let (out, code) = ppc(&["eq-mod2", &a.to_string(), &b.to_string()]);
    let cli_ok = code == 0 && out.trim() == "true";

    let t = indexed(r"\{2} ((\{2} ^1.1 ^1.2 . 1.2 1.1) (^1.1 ^1.2)) . 1.1");
    let reduct = match t.first_redex() {
        Some(pos) => t.step_at(&pos).ok(),
        None => None,
    };
    let stepped_eq = reduct
        .as_ref()
        .map(|r| eq_mod_secondary(r, &a).unwrap_or(false))
        .unwrap_or(false);
    verdict(
        pair_eq && cli_ok && stepped_eq,
        format!(
            "pair eq-mod2 {pair_eq}, cli ok {cli_ok}; example steps to {}, eq-mod2 to {a}: {stepped_eq}",
            reduct.map_or_else(|| "nothing".to_string(), |r| r.to_string())
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden trace (named)", golden_named),
        ("golden trace (indexed)", golden_indexed),
        ("translation example", translation_example),
        ("invertibility", invertibility),
        ("strong bisimulation", bisimulation),
        ("lemma suite", lemma_suite),
        ("bounded confluence", confluence),
        ("matching post-condition", matching_post_condition),
        ("secondary-index equality", secondary_index_equality),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {} {name}: {} ({})",
            n + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
