//! Seeded random terms.
//!
//! Node mix: 40% application, 25% abstraction, 35% leaves. Patterns and the
//! arguments of abstractions are biased towards data structures so that
//! generated redexes often decide.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::indexed::{BIndex, IndexedTerm};
use crate::named::{NamedTerm, Symbol};
use crate::syntax::Side;

#[derive(Debug, Clone, Serialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on the node count.
    pub max_size: usize,
    /// Upper bound on the arity of each abstraction.
    pub max_arity: usize,
    /// Every binder slot occurs as a matchable of its own pattern.
    pub require_theta_in_pattern: bool,
    /// No free variables.
    pub closed: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_size: 20,
            max_arity: 2,
            require_theta_in_pattern: false,
            closed: false,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Number of free rows used by default generators (`x1 … x3`).
pub const FREE_ROWS: usize = 3;

/// A generated term of either side.
#[derive(Debug, Clone)]
pub enum Generated {
    Named(NamedTerm),
    Indexed(IndexedTerm),
}

pub fn gen_term(cfg: &GenConfig, side: Side) -> Generated {
    match side {
        Side::Named => Generated::Named(gen_named(cfg)),
        Side::Indexed => Generated::Indexed(gen_indexed(cfg)),
    }
}

/// A well-formed indexed term whose free indices are `1.1 … 3.1`.
pub fn gen_indexed(cfg: &GenConfig) -> IndexedTerm {
    let shape = FreeShape::singletons(FREE_ROWS);
    gen_indexed_with(cfg, &mut cfg.rng(), &shape, &shape)
}

/// A named term whose free symbols are among `x1 … x3`.
pub fn gen_named(cfg: &GenConfig) -> NamedTerm {
    let free: Vec<Symbol> = (1..=FREE_ROWS)
        .map(|k| Symbol::new(&format!("x{k}")).unwrap())
        .collect();
    gen_named_with(cfg, &mut cfg.rng(), &free, &free, &[])
}

/// Row lengths of the table that interprets free indices.
#[derive(Debug, Clone)]
pub struct FreeShape {
    pub rows: Vec<usize>,
}

impl FreeShape {
    pub fn singletons(n: usize) -> Self {
        FreeShape { rows: vec![1; n] }
    }

    fn pick(&self, rng: &mut impl Rng) -> Option<(usize, usize)> {
        let slots: Vec<(usize, usize)> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
            .collect();
        slots.choose(rng).copied()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Leaf,
    App,
    Abs,
}

fn pick_node(rng: &mut impl Rng, budget: usize) -> Node {
    if budget < 3 {
        return Node::Leaf;
    }
    match rng.gen_range(0..100) {
        0..=39 => Node::App,
        40..=64 => Node::Abs,
        _ => Node::Leaf,
    }
}

/// Splits `budget - 1` nodes between two children, each getting at least 1.
fn split(rng: &mut impl Rng, budget: usize) -> (usize, usize) {
    let rest = budget - 1;
    let left = rng.gen_range(1..rest);
    (left, rest - left)
}

/// Node budget, drawn from the upper half of `1..=max_size`.
fn draw_size(cfg: &GenConfig, rng: &mut impl Rng) -> usize {
    let max = cfg.max_size.max(1);
    rng.gen_range(max.div_ceil(2)..=max)
}

/// Redraws until the term has between three quarters of its budget and `max_size`
/// nodes, falling back to the largest admissible attempt.
fn sized<T>(cfg: &GenConfig, mut attempt: impl FnMut(usize) -> (T, usize)) -> T {
    let max = cfg.max_size.max(1);
    let mut best: Option<(T, usize)> = None;
    for round in 0..64 {
        let budget = max.div_ceil(2) + round % (max - max.div_ceil(2) + 1);
        let (t, size) = attempt(budget);
        if size <= max && 4 * size >= 3 * budget {
            return t;
        }
        if size <= max && best.as_ref().is_none_or(|(_, b)| size > *b) {
            best = Some((t, size));
        }
    }
    match best {
        Some((t, _)) => t,
        None => attempt(1).0,
    }
}

struct IdxGen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    free_vars: &'a FreeShape,
    free_matches: &'a FreeShape,
    /// Arities of the binders whose bodies enclose the current position.
    vars: Vec<usize>,
    /// Arities of the binders whose patterns enclose the current position.
    matches: Vec<usize>,
}

impl<R: Rng> IdxGen<'_, R> {
    fn index(&mut self, var: bool) -> Option<BIndex> {
        let (scope, free) = if var {
            (&self.vars, self.free_vars)
        } else {
            (&self.matches, self.free_matches)
        };
        let bound: Vec<(usize, usize)> = scope
            .iter()
            .rev()
            .enumerate()
            .flat_map(|(d, &n)| (1..=n).map(move |j| (d + 1, j)))
            .collect();
        let allow_free = !(var && self.cfg.closed);
        let use_free = allow_free && (bound.is_empty() || self.rng.gen_bool(0.3));
        let (i, j) = if use_free {
            let (i, j) = free.pick(self.rng)?;
            (i + scope.len(), j)
        } else {
            *bound.choose(self.rng)?
        };
        BIndex::new(i, j)
    }

    fn leaf(&mut self) -> IndexedTerm {
        let want_var = self.rng.gen_bool(0.5);
        if want_var {
            if let Some(b) = self.index(true) {
                return IndexedTerm::Var(b);
            }
        }
        match self.index(false) {
            Some(b) => IndexedTerm::Match(b),
            None => match self.index(true) {
                Some(b) => IndexedTerm::Var(b),
                // Nothing in scope: a closed binder-free leaf is impossible,
                // so fall back to an arity-0 abstraction-free matchable row.
                None => IndexedTerm::Match(BIndex::new(self.matches.len() + 1, 1).unwrap()),
            },
        }
    }

    fn term(&mut self, budget: usize) -> IndexedTerm {
        match pick_node(self.rng, budget) {
            Node::Leaf => self.leaf(),
            Node::App => {
                let (l, r) = split(self.rng, budget);
                if l >= 3 && self.rng.gen_bool(0.7) {
                    let f = self.abs(l);
                    let a = match &f {
                        IndexedTerm::Abs(n, p, _) if self.rng.gen_bool(0.5) => {
                            self.instance(p, *n, r)
                        }
                        _ => None,
                    };
                    let a = a.unwrap_or_else(|| self.argument(r));
                    IndexedTerm::app(f, a)
                } else {
                    let f = self.term(l);
                    IndexedTerm::app(f, self.term(r))
                }
            }
            Node::Abs => self.abs(budget),
        }
    }

    fn abs(&mut self, budget: usize) -> IndexedTerm {
        let n = self.rng.gen_range(0..=self.cfg.max_arity);
        let (pb, bb) = split(self.rng, budget);
        self.matches.push(n);
        let mut p = self.pattern(pb);
        if self.cfg.require_theta_in_pattern {
            let present = p.free_matchables();
            for j in 1..=n {
                let m = BIndex::new(1, j).unwrap();
                if !present.contains(&m) {
                    p = if p.is_data() {
                        IndexedTerm::app(p, IndexedTerm::Match(m))
                    } else {
                        IndexedTerm::app(IndexedTerm::Match(m), p)
                    };
                }
            }
        }
        self.matches.pop();
        self.vars.push(n);
        let b = self.term(bb);
        self.vars.pop();
        IndexedTerm::abs(n, p, b)
    }

    /// An argument built from an abstraction-free pattern of arity `n` by
    /// filling its slots, so that matching it tends to succeed.
    fn instance(&mut self, p: &IndexedTerm, n: usize, budget: usize) -> Option<IndexedTerm> {
        let each = (budget / (n + 1)).max(1);
        let mut vals: Vec<Option<IndexedTerm>> = vec![None; n];
        self.fill_idx(p, each, &mut vals)
    }

    fn fill_idx(
        &mut self,
        p: &IndexedTerm,
        each: usize,
        vals: &mut [Option<IndexedTerm>],
    ) -> Option<IndexedTerm> {
        Some(match p {
            IndexedTerm::Var(_) => p.clone(),
            IndexedTerm::Match(b) if b.primary == 1 => {
                let slot = vals.get_mut(b.secondary - 1)?;
                if slot.is_none() {
                    *slot = Some(self.argument(each));
                }
                vals[b.secondary - 1].clone()?
            }
            IndexedTerm::Match(b) => IndexedTerm::matchable(b.primary - 1, b.secondary),
            IndexedTerm::App(f, a) => {
                let f = self.fill_idx(f, each, vals)?;
                IndexedTerm::app(f, self.fill_idx(a, each, vals)?)
            }
            IndexedTerm::Abs(..) => return None,
        })
    }

    /// Usually a matchable form, so that the enclosing redex can decide.
    fn argument(&mut self, budget: usize) -> IndexedTerm {
        if self.rng.gen_bool(0.6) {
            self.pattern(budget)
        } else {
            self.term(budget)
        }
    }

    /// Mostly data structures headed by a matchable.
    fn pattern(&mut self, budget: usize) -> IndexedTerm {
        if budget < 3 || self.rng.gen_bool(0.3) {
            return if budget < 3 || self.rng.gen_bool(0.8) {
                match self.index(false) {
                    Some(b) => IndexedTerm::Match(b),
                    None => self.leaf(),
                }
            } else {
                self.term(budget)
            };
        }
        let (l, r) = split(self.rng, budget);
        let f = self.pattern(l);
        let a = if self.rng.gen_bool(0.7) {
            self.pattern(r)
        } else {
            self.term(r)
        };
        IndexedTerm::app(f, a)
    }
}

/// Indexed generation with free indices drawn from the given table shapes.
pub fn gen_indexed_with(
    cfg: &GenConfig,
    rng: &mut impl Rng,
    free_vars: &FreeShape,
    free_matches: &FreeShape,
) -> IndexedTerm {
    sized(cfg, |budget| {
        let mut g = IdxGen {
            rng: &mut *rng,
            cfg,
            free_vars,
            free_matches,
            vars: Vec::new(),
            matches: Vec::new(),
        };
        let t = g.term(budget);
        let size = t.size();
        (t, size)
    })
}

/// A pattern under a binder of arity `n`: its matchables `^1.j` are bound
/// for `j <= n`, other free indices follow the given shapes.
pub fn gen_indexed_pattern(
    cfg: &GenConfig,
    rng: &mut impl Rng,
    n: usize,
    free_vars: &FreeShape,
    free_matches: &FreeShape,
) -> IndexedTerm {
    let size = draw_size(cfg, rng);
    let mut g = IdxGen {
        rng,
        cfg,
        free_vars,
        free_matches,
        vars: Vec::new(),
        matches: vec![n],
    };
    g.pattern(size)
}

const BINDER_POOL: [&str; 6] = ["a", "b", "c", "d", "x1", "x2"];

struct NamedGen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    free_vars: &'a [Symbol],
    free_matches: &'a [Symbol],
    binder_pool: Vec<Symbol>,
    vars: Vec<Vec<Symbol>>,
    matches: Vec<Vec<Symbol>>,
}

impl<R: Rng> NamedGen<'_, R> {
    fn symbol(&mut self, var: bool) -> Option<Symbol> {
        let (scope, free) = if var {
            (&self.vars, self.free_vars)
        } else {
            (&self.matches, self.free_matches)
        };
        let bound: Vec<&Symbol> = scope.iter().flatten().collect();
        let allow_free = !(var && self.cfg.closed) && !free.is_empty();
        if allow_free && (bound.is_empty() || self.rng.gen_bool(0.3)) {
            return free.choose(self.rng).cloned();
        }
        bound.choose(self.rng).map(|x| (*x).clone())
    }

    fn leaf(&mut self) -> NamedTerm {
        if self.rng.gen_bool(0.5) {
            if let Some(x) = self.symbol(true) {
                return NamedTerm::Var(x);
            }
        }
        match self.symbol(false) {
            Some(x) => NamedTerm::Match(x),
            None => match self.symbol(true) {
                Some(x) => NamedTerm::Var(x),
                None => NamedTerm::Match(self.binder_pool[0].clone()),
            },
        }
    }

    fn term(&mut self, budget: usize) -> NamedTerm {
        match pick_node(self.rng, budget) {
            Node::Leaf => self.leaf(),
            Node::App => {
                let (l, r) = split(self.rng, budget);
                if l >= 3 && self.rng.gen_bool(0.7) {
                    let f = self.abs(l);
                    let a = match &f {
                        NamedTerm::Abs(theta, p, _) if self.rng.gen_bool(0.5) => {
                            let each = (r / (theta.len() + 1)).max(1);
                            let mut vals = vec![None; theta.len()];
                            self.fill_named(p, theta, each, &mut vals)
                        }
                        _ => None,
                    };
                    let a = a.unwrap_or_else(|| self.argument(r));
                    NamedTerm::app(f, a)
                } else {
                    let f = self.term(l);
                    NamedTerm::app(f, self.term(r))
                }
            }
            Node::Abs => self.abs(budget),
        }
    }

    fn abs(&mut self, budget: usize) -> NamedTerm {
        let n = self
            .rng
            .gen_range(0..=self.cfg.max_arity.min(self.binder_pool.len()));
        let theta: Vec<Symbol> = self
            .binder_pool
            .choose_multiple(self.rng, n)
            .cloned()
            .collect();
        let (pb, bb) = split(self.rng, budget);
        self.matches.push(theta.clone());
        let mut p = self.pattern(pb);
        if self.cfg.require_theta_in_pattern {
            for x in &theta {
                if !p.free_matchables().contains(x) {
                    let m = NamedTerm::Match(x.clone());
                    p = if p.is_data() {
                        NamedTerm::app(p, m)
                    } else {
                        NamedTerm::app(m, p)
                    };
                }
            }
        }
        self.matches.pop();
        self.vars.push(theta.clone());
        let b = self.term(bb);
        self.vars.pop();
        NamedTerm::Abs(theta, Box::new(p), Box::new(b))
    }

    fn fill_named(
        &mut self,
        p: &NamedTerm,
        theta: &[Symbol],
        each: usize,
        vals: &mut [Option<NamedTerm>],
    ) -> Option<NamedTerm> {
        Some(match p {
            NamedTerm::Match(x) => match theta.iter().position(|y| y == x) {
                Some(j) => {
                    if vals[j].is_none() {
                        vals[j] = Some(self.argument(each));
                    }
                    vals[j].clone()?
                }
                None => p.clone(),
            },
            NamedTerm::Var(_) => p.clone(),
            NamedTerm::App(f, a) => {
                let f = self.fill_named(f, theta, each, vals)?;
                NamedTerm::app(f, self.fill_named(a, theta, each, vals)?)
            }
            NamedTerm::Abs(..) => return None,
        })
    }

    fn argument(&mut self, budget: usize) -> NamedTerm {
        if self.rng.gen_bool(0.6) {
            self.pattern(budget)
        } else {
            self.term(budget)
        }
    }

    fn pattern(&mut self, budget: usize) -> NamedTerm {
        if budget < 3 || self.rng.gen_bool(0.3) {
            return if budget < 3 || self.rng.gen_bool(0.8) {
                match self.symbol(false) {
                    Some(x) => NamedTerm::Match(x),
                    None => self.leaf(),
                }
            } else {
                self.term(budget)
            };
        }
        let (l, r) = split(self.rng, budget);
        let f = self.pattern(l);
        let a = if self.rng.gen_bool(0.7) {
            self.pattern(r)
        } else {
            self.term(r)
        };
        NamedTerm::app(f, a)
    }
}

/// Named generation with the given free symbols. Binder names come from a
/// small pool (shadowing and reuse are intended) unless `binders` is given.
pub fn gen_named_with(
    cfg: &GenConfig,
    rng: &mut impl Rng,
    free_vars: &[Symbol],
    free_matches: &[Symbol],
    binders: &[Symbol],
) -> NamedTerm {
    let binder_pool = if binders.is_empty() {
        BINDER_POOL
            .iter()
            .map(|x| Symbol::new(x).unwrap())
            .collect()
    } else {
        binders.to_vec()
    };
    sized(cfg, |budget| {
        let mut g = NamedGen {
            rng: &mut *rng,
            cfg,
            free_vars,
            free_matches,
            binder_pool: binder_pool.clone(),
            vars: Vec::new(),
            matches: Vec::new(),
        };
        let t = g.term(budget);
        let size = t.size();
        (t, size)
    })
}

/// A pattern in which the symbols of `theta` are bound matchables.
pub fn gen_named_pattern(
    cfg: &GenConfig,
    rng: &mut impl Rng,
    theta: &[Symbol],
    free_vars: &[Symbol],
    free_matches: &[Symbol],
) -> NamedTerm {
    let binder_pool = BINDER_POOL
        .iter()
        .map(|x| Symbol::new(x).unwrap())
        .collect();
    let size = draw_size(cfg, rng);
    let mut g = NamedGen {
        rng,
        cfg,
        free_vars,
        free_matches,
        binder_pool,
        vars: Vec::new(),
        matches: vec![theta.to_vec()],
    };
    g.pattern(size)
}
