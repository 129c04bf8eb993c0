//! Fixed workloads shared by the benchmarks.

use ppc_core::harness::{gen_indexed, gen_named, GenConfig};
use ppc_core::syntax::{parse_indexed, parse_named};
use ppc_core::{IndexedTerm, NamedTerm};

/// `elim` applied to a constructor pattern, named binders.
pub const ELIM_NAMED: &str = r"(\[x] ^x . (\[y] x ^y . y)) (\[z] ^z . (^c z) ^n)";

/// The same term with bidimensional indices.
pub const ELIM_INDEXED: &str = r"(\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)) (\{1} ^1.1 . (^1.1 1.1) ^2.1)";

/// Peels `depth` constructor layers with a recursive-looking chain of
/// pattern abstractions.
pub fn nested_named(depth: usize) -> NamedTerm {
    let mut data = String::from("^nil");
    for k in 0..depth {
        data = format!("^cons x{} ({data})", k + 1);
    }
    let mut t = data;
    for k in 0..depth {
        t = format!(r"(\[h{k},t{k}] ^cons ^h{k} ^t{k} . t{k}) ({t})");
    }
    parse_named(&t).expect("fixture parses")
}

pub fn elim_named() -> NamedTerm {
    parse_named(ELIM_NAMED).expect("fixture parses")
}

pub fn elim_indexed() -> IndexedTerm {
    parse_indexed(ELIM_INDEXED).expect("fixture parses")
}

/// `n` generated terms of size at most `max_size`, seeds `0..n`.
pub fn corpus_indexed(n: u64, max_size: usize) -> Vec<IndexedTerm> {
    let cfg = GenConfig {
        max_size,
        ..GenConfig::default()
    };
    (0..n).map(|s| gen_indexed(&cfg.with_seed(s))).collect()
}

pub fn corpus_named(n: u64, max_size: usize) -> Vec<NamedTerm> {
    let cfg = GenConfig {
        max_size,
        ..GenConfig::default()
    };
    (0..n).map(|s| gen_named(&cfg.with_seed(s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppc_core::{normalize, NormalizeStatus};

    #[test]
    fn fixtures_normalize() {
        let n = normalize(&nested_named(4), 100, false).unwrap();
        assert_eq!(n.status, NormalizeStatus::Normal);
        assert_eq!(n.steps, 4);
        assert_eq!(n.term.to_string(), "^nil");
        assert_eq!(normalize(&elim_indexed(), 10, false).unwrap().steps, 2);
        assert_eq!(normalize(&elim_named(), 10, false).unwrap().steps, 2);
        assert_eq!(corpus_indexed(5, 10).len(), 5);
        assert_eq!(corpus_named(5, 10).len(), 5);
    }
}
