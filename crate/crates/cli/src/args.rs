use clap::{Parser, Subcommand, ValueEnum};

use ppc_core::harness::Suite;
use ppc_core::Side;

/// Terms are read from the positional argument, or from stdin when it is
/// absent or `-`. Input starting with `{` is read as a JSON AST.
#[derive(Debug, Parser)]
#[command(
    name = "ppc",
    version,
    about = "Pure pattern calculus: named and indexed engines"
)]
pub struct Cli {
    /// Read terms as this side instead of detecting it.
    #[arg(long, global = true, value_enum)]
    pub side: Option<SideArg>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Named,
    Indexed,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Named => Side::Named,
            SideArg::Indexed => Side::Indexed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Bisim,
    Lemmas,
    Confluence,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Bisim => Suite::Bisim,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Confluence => Suite::Confluence,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pretty-print a term.
    Parse {
        /// Print the JSON AST instead.
        #[arg(long)]
        json: bool,
        term: Option<String>,
    },
    /// Free variables.
    Fv { term: Option<String> },
    /// Free matchables.
    Fm { term: Option<String> },
    /// Well-formedness (secondary indices within range).
    Wf { term: Option<String> },
    /// Contract one redex.
    Step {
        /// Slash-separated `f`/`a`/`p`/`b` path; `""` is the root.
        /// Defaults to the leftmost-outermost redex.
        #[arg(long)]
        pos: Option<String>,
        term: Option<String>,
    },
    /// Leftmost-outermost normalisation.
    Normalize {
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Print every intermediate term.
        #[arg(long)]
        trace: bool,
        term: Option<String>,
    },
    /// Same as `normalize --trace`.
    Trace {
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        term: Option<String>,
    },
    /// Translate to the other side.
    Translate {
        #[arg(long, value_enum)]
        to: SideArg,
        /// Variable table as a JSON array of arrays of symbols.
        #[arg(long)]
        vtable: Option<String>,
        /// Matchable table as a JSON array of arrays of symbols.
        #[arg(long)]
        mtable: Option<String>,
        term: Option<String>,
    },
    /// Alpha-equivalence of two named terms.
    AlphaEq { left: String, right: String },
    /// Equality of two indexed terms up to secondary-index permutation.
    #[command(name = "eq-mod2")]
    EqMod2 { left: String, right: String },
    /// Match an argument against a pattern.
    Match {
        /// Binders of a named pattern, comma-separated.
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "arity",
            conflicts_with = "arity"
        )]
        theta: Option<Vec<String>>,
        /// Arity of an indexed pattern.
        #[arg(long)]
        arity: Option<usize>,
        pattern: String,
        argument: String,
    },
    /// Run a differential-testing campaign.
    Fuzz {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Generated term size bound [default: 12 for confluence, 20 otherwise].
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_size: Option<u32>,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
        /// Every binder occurs as a matchable of its own pattern.
        #[arg(long)]
        theta_in_pattern: bool,
        /// Generate closed terms only.
        #[arg(long)]
        closed: bool,
    },
}
