use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};
use std::io::Read;

use thiserror::Error;

use ppc_core::harness::{fuzz, GenConfig, Suite};
use ppc_core::indexed::{eq_mod_secondary, match_idx};
use ppc_core::named::{alpha_eq, match_named};
use ppc_core::syntax::{any_to_json, read_term, ReadError};
use ppc_core::translate::{default_table, to_indexed, to_named, to_named_default};
use ppc_core::{
    normalize, AnyTerm, FreshGen, IndexedTerm, MatchOutcome, NameTable, NamedTerm, Path, Rewrite,
    Side, Symbol,
};

use crate::args::{Cli, Command};

/// What to print on stdout and the exit code to return.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn verdict(holds: bool) -> Self {
        Output {
            text: format!("{holds}\n"),
            code: if holds { 0 } else { 2 },
        }
    }
}

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] ppc_core::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Read(_) | Failure::Usage(_) => 1,
            Failure::Engine(_) => 3,
        }
    }
}

type Run = Result<Output, Failure>;

fn source(arg: Option<&str>) -> Result<String, Failure> {
    match arg {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

struct Reader {
    side: Option<Side>,
}

impl Reader {
    fn any(&self, arg: Option<&str>) -> Result<AnyTerm, Failure> {
        Ok(read_term(&source(arg)?, self.side)?)
    }

    fn side(&self, arg: Option<&str>, wanted: Side) -> Result<AnyTerm, Failure> {
        Ok(read_term(&source(arg)?, Some(self.side.unwrap_or(wanted)))?)
    }

    fn named(&self, arg: &str) -> Result<NamedTerm, Failure> {
        match self.side(Some(arg), Side::Named)? {
            AnyTerm::Named(t) => Ok(t),
            AnyTerm::Indexed(_) => Err(wrong_side(Side::Named)),
        }
    }

    fn indexed(&self, arg: &str) -> Result<IndexedTerm, Failure> {
        match self.side(Some(arg), Side::Indexed)? {
            AnyTerm::Indexed(t) => Ok(t),
            AnyTerm::Named(_) => Err(wrong_side(Side::Indexed)),
        }
    }
}

fn wrong_side(wanted: Side) -> Failure {
    Failure::Usage(format!("this command takes {wanted} terms"))
}

pub fn run(cli: &Cli) -> Run {
    let reader = Reader {
        side: cli.side.map(Side::from),
    };
    match &cli.command {
        Command::Parse { json, term } => {
            let t = reader.any(term.as_deref())?;
            Ok(Output::ok(if *json {
                format!("{}\n", any_to_json(&t))
            } else {
                format!("{t}\n")
            }))
        }
        Command::Fv { term } => free(reader.any(term.as_deref())?, true),
        Command::Fm { term } => free(reader.any(term.as_deref())?, false),
        Command::Wf { term } => match reader.any(term.as_deref())? {
            AnyTerm::Named(_) => Ok(Output::verdict(true)),
            AnyTerm::Indexed(t) => match t.check_well_formed() {
                Ok(()) => Ok(Output::verdict(true)),
                Err(e) => Ok(Output {
                    text: format!("false: {e}\n"),
                    code: 2,
                }),
            },
        },
        Command::Step { pos, term } => {
            let pos = match pos {
                Some(p) => Some(
                    p.parse::<Path>()
                        .map_err(|e| Failure::Usage(e.to_string()))?,
                ),
                None => None,
            };
            match reader.any(term.as_deref())? {
                AnyTerm::Named(t) => step(&t, pos),
                AnyTerm::Indexed(t) => step(&t, pos),
            }
        }
        Command::Normalize {
            max_steps,
            trace,
            term,
        } => reduce(reader.any(term.as_deref())?, *max_steps, *trace),
        Command::Trace { max_steps, term } => {
            reduce(reader.any(term.as_deref())?, *max_steps, true)
        }
        Command::Translate {
            to,
            vtable,
            mtable,
            term,
        } => {
            let target = Side::from(*to);
            let from = match target {
                Side::Named => Side::Indexed,
                Side::Indexed => Side::Named,
            };
            let vtable = vtable.as_deref().map(table).transpose()?;
            let mtable = mtable.as_deref().map(table).transpose()?;
            match reader.side(term.as_deref(), from)? {
                AnyTerm::Named(s) if target == Side::Indexed => {
                    let fallback = default_table(&s);
                    let t = to_indexed(
                        &s,
                        vtable.as_ref().unwrap_or(&fallback),
                        mtable.as_ref().unwrap_or(&fallback),
                    )?;
                    Ok(Output::ok(format!("{t}\n")))
                }
                AnyTerm::Indexed(t) if target == Side::Named => {
                    let s = if vtable.is_none() && mtable.is_none() {
                        to_named_default(&t)?
                    } else {
                        let fallback = NameTable::default_rows(t.max_free_primary());
                        let vars = vtable.unwrap_or_else(|| fallback.clone());
                        let matches = mtable.unwrap_or(fallback);
                        if !vars.is_distinct() || !matches.is_distinct() {
                            return Err(Failure::Usage(
                                "tables for indexed-to-named must not repeat a symbol".into(),
                            ));
                        }
                        let mut gen = FreshGen::for_tables(&vars, &matches);
                        to_named(&t, &vars, &matches, &mut gen)?
                    };
                    Ok(Output::ok(format!("{s}\n")))
                }
                _ => Err(Failure::Usage(format!("the term is already {target}"))),
            }
        }
        Command::AlphaEq { left, right } => Ok(Output::verdict(alpha_eq(
            &reader.named(left)?,
            &reader.named(right)?,
        ))),
        Command::EqMod2 { left, right } => Ok(Output::verdict(eq_mod_secondary(
            &reader.indexed(left)?,
            &reader.indexed(right)?,
        )?)),
        Command::Match {
            theta,
            arity,
            pattern,
            argument,
        } => match (theta, arity) {
            (Some(theta), _) => {
                let theta = symbols(theta)?;
                let p = reader.named(pattern)?;
                let u = reader.named(argument)?;
                let m = match_named(&theta, &p, &u);
                Ok(Output::ok(outcome(m.map(|s| {
                    s.iter()
                        .map(|(x, u)| format!("{x} := {u}"))
                        .collect::<Vec<_>>()
                }))))
            }
            (None, Some(n)) => {
                let p = reader.indexed(pattern)?;
                let u = reader.indexed(argument)?;
                let m = match_idx(*n, &p, &u);
                Ok(Output::ok(outcome(m.map(|s| {
                    s.map
                        .iter()
                        .map(|(j, u)| format!("{}.{j} := {u}", s.level))
                        .collect::<Vec<_>>()
                }))))
            }
            (None, None) => Err(Failure::Usage(
                "one of --theta or --arity is required".into(),
            )),
        },
        Command::Fuzz {
            suite,
            seed,
            count,
            jobs,
            json,
            max_size,
            max_arity,
            theta_in_pattern,
            closed,
        } => {
            let suite = Suite::from(*suite);
            let default_size = if suite == Suite::Confluence { 12 } else { 20 };
            let cfg = GenConfig {
                seed: *seed,
                max_size: max_size.map_or(default_size, |n| n as usize),
                max_arity: *max_arity,
                require_theta_in_pattern: *theta_in_pattern,
                closed: *closed,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(usize::from(*jobs))
                .build()
                .map_err(|e| Failure::Usage(format!("cannot start workers: {e}")))?;
            let report = pool.install(|| fuzz(suite, &cfg, *count));
            let text = if *json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.to_text()
            };
            Ok(Output {
                text,
                code: if report.is_ok() { 0 } else { 2 },
            })
        }
    }
}

fn free(t: AnyTerm, vars: bool) -> Run {
    let names: Vec<String> = match (&t, vars) {
        (AnyTerm::Named(t), true) => t.free_vars().iter().map(|x| x.to_string()).collect(),
        (AnyTerm::Named(t), false) => t.free_matchables().iter().map(|x| x.to_string()).collect(),
        (AnyTerm::Indexed(t), true) => t.free_vars().iter().map(|b| b.to_string()).collect(),
        (AnyTerm::Indexed(t), false) => t.free_matchables().iter().map(|b| b.to_string()).collect(),
    };
    Ok(Output::ok(format!("{}\n", names.join(" "))))
}

fn step<T: Rewrite + Display>(t: &T, pos: Option<Path>) -> Run {
    let pos = match pos.or_else(|| t.first_redex()) {
        Some(p) => p,
        None => return Err(ppc_core::Error::NotARedex(Path::root()).into()),
    };
    Ok(Output::ok(format!("{}\n", t.step_at(&pos)?)))
}

fn reduce(t: AnyTerm, max_steps: usize, trace: bool) -> Run {
    match t {
        AnyTerm::Named(t) => reduce_with(&t, max_steps, trace),
        AnyTerm::Indexed(t) => reduce_with(&t, max_steps, trace),
    }
}

/// Prints the optional trace, the final term and a status line.
fn reduce_with<T: Rewrite + Display>(t: &T, max_steps: usize, trace: bool) -> Run {
    let n = normalize(t, max_steps, trace)?;
    let mut out = String::new();
    if trace {
        let _ = writeln!(out, "0 {t}");
        for (k, (pos, u)) in n.trace.iter().enumerate() {
            let _ = writeln!(out, "{} [{pos}] {u}", k + 1);
        }
    } else {
        let _ = writeln!(out, "{}", n.term);
    }
    let _ = writeln!(out, "status {} steps {}", n.status, n.steps);
    Ok(Output::ok(out))
}

fn outcome(m: MatchOutcome<Vec<String>>) -> String {
    match m {
        MatchOutcome::Success(pairs) => format!("Success {{{}}}\n", pairs.join(", ")),
        MatchOutcome::Fail => "Fail\n".into(),
        MatchOutcome::Wait => "Wait\n".into(),
    }
}

fn symbols(names: &[String]) -> Result<Vec<Symbol>, Failure> {
    let mut seen = BTreeSet::new();
    names
        .iter()
        .map(|x| {
            let s = Symbol::new(x.trim())
                .ok_or_else(|| Failure::Usage(format!("invalid symbol `{x}`")))?;
            if !seen.insert(s.clone()) {
                return Err(Failure::Usage(format!("duplicate binder `{x}`")));
            }
            Ok(s)
        })
        .collect()
}

fn table(json: &str) -> Result<NameTable, Failure> {
    let rows: Vec<Vec<String>> = serde_json::from_str(json)
        .map_err(|e| Failure::Usage(format!("table must be an array of arrays of symbols: {e}")))?;
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    Symbol::new(x).ok_or_else(|| Failure::Usage(format!("invalid symbol `{x}`")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(NameTable::new)
}
