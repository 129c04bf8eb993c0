use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path::{Path, Step};

/// A name drawn from `[a-zA-Z][a-zA-Z0-9_']*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Builds a symbol, rejecting names outside the surface grammar.
    pub fn new(name: &str) -> Option<Symbol> {
        Symbol::is_valid(name).then(|| Symbol(Arc::from(name)))
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Shorthand for tests and fixed tables; panics on an invalid name.
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).unwrap_or_else(|| panic!("invalid symbol `{name}`"))
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A term of the named pattern calculus.
///
/// `Abs(theta, pattern, body)` binds each symbol of `theta` as a matchable in
/// `pattern` and as a variable in `body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedTerm {
    Var(Symbol),
    Match(Symbol),
    App(Box<NamedTerm>, Box<NamedTerm>),
    Abs(Vec<Symbol>, Box<NamedTerm>, Box<NamedTerm>),
}

impl NamedTerm {
    pub fn var(name: &str) -> NamedTerm {
        NamedTerm::Var(sym(name))
    }

    pub fn matchable(name: &str) -> NamedTerm {
        NamedTerm::Match(sym(name))
    }

    pub fn app(fun: NamedTerm, arg: NamedTerm) -> NamedTerm {
        NamedTerm::App(Box::new(fun), Box::new(arg))
    }

    /// Builds an abstraction, rejecting binder lists with repeated symbols.
    pub fn abs(theta: Vec<Symbol>, pattern: NamedTerm, body: NamedTerm) -> Result<NamedTerm> {
        let mut seen = HashSet::new();
        for x in &theta {
            if !seen.insert(x) {
                return Err(Error::DuplicateBinder(x.to_string()));
            }
        }
        Ok(NamedTerm::Abs(theta, Box::new(pattern), Box::new(body)))
    }

    /// The identity function `\[x] ^x . x`, the result of applying `fail`.
    pub fn identity() -> NamedTerm {
        NamedTerm::Abs(
            vec![sym("x")],
            Box::new(NamedTerm::matchable("x")),
            Box::new(NamedTerm::var("x")),
        )
    }

    pub fn size(&self) -> usize {
        match self {
            NamedTerm::Var(_) | NamedTerm::Match(_) => 1,
            NamedTerm::App(f, a) => 1 + f.size() + a.size(),
            NamedTerm::Abs(_, p, b) => 1 + p.size() + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        collect_free(self, Kind::Var, &mut Vec::new(), &mut out);
        out
    }

    pub fn free_matchables(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        collect_free(self, Kind::Match, &mut Vec::new(), &mut out);
        out
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = self.free_vars();
        out.extend(self.free_matchables());
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every symbol occurring anywhere, bound or free, including binder lists.
    pub fn all_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            NamedTerm::Var(x) | NamedTerm::Match(x) => {
                out.insert(x.clone());
            }
            NamedTerm::App(f, a) => {
                f.all_symbols(out);
                a.all_symbols(out);
            }
            NamedTerm::Abs(theta, p, b) => {
                out.extend(theta.iter().cloned());
                p.all_symbols(out);
                b.all_symbols(out);
            }
        }
    }

    /// `d ::= ^x | d t`
    pub fn is_data(&self) -> bool {
        match self {
            NamedTerm::Match(_) => true,
            NamedTerm::App(f, _) => f.is_data(),
            _ => false,
        }
    }

    /// `m ::= d | \[θ] t . t`
    pub fn is_matchable_form(&self) -> bool {
        matches!(self, NamedTerm::Abs(..)) || self.is_data()
    }

    pub fn subterm(&self, path: &Path) -> Option<&NamedTerm> {
        let mut cur = self;
        for step in path.steps() {
            cur = match (step, cur) {
                (Step::AppFun, NamedTerm::App(f, _)) => f,
                (Step::AppArg, NamedTerm::App(_, a)) => a,
                (Step::AbsPattern, NamedTerm::Abs(_, p, _)) => p,
                (Step::AbsBody, NamedTerm::Abs(_, _, b)) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replaces the subterm at `path` by `f(subterm)`.
    pub fn replace_at(
        &self,
        path: &[Step],
        f: &mut dyn FnMut(&NamedTerm) -> Result<NamedTerm>,
    ) -> Option<Result<NamedTerm>> {
        let Some((step, rest)) = path.split_first() else {
            return Some(f(self));
        };
        Some(Ok(match (step, self) {
            (Step::AppFun, NamedTerm::App(g, a)) => match g.replace_at(rest, f)? {
                Ok(g) => NamedTerm::App(Box::new(g), a.clone()),
                Err(e) => return Some(Err(e)),
            },
            (Step::AppArg, NamedTerm::App(g, a)) => match a.replace_at(rest, f)? {
                Ok(a) => NamedTerm::App(g.clone(), Box::new(a)),
                Err(e) => return Some(Err(e)),
            },
            (Step::AbsPattern, NamedTerm::Abs(th, p, b)) => match p.replace_at(rest, f)? {
                Ok(p) => NamedTerm::Abs(th.clone(), Box::new(p), b.clone()),
                Err(e) => return Some(Err(e)),
            },
            (Step::AbsBody, NamedTerm::Abs(th, p, b)) => match b.replace_at(rest, f)? {
                Ok(b) => NamedTerm::Abs(th.clone(), p.clone(), Box::new(b)),
                Err(e) => return Some(Err(e)),
            },
            _ => return None,
        }))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Var,
    Match,
}

fn collect_free<'a>(
    t: &'a NamedTerm,
    kind: Kind,
    bound: &mut Vec<&'a [Symbol]>,
    out: &mut BTreeSet<Symbol>,
) {
    match t {
        NamedTerm::Var(x) if kind == Kind::Var => {
            if !bound.iter().any(|th| th.contains(x)) {
                out.insert(x.clone());
            }
        }
        NamedTerm::Match(x) if kind == Kind::Match => {
            if !bound.iter().any(|th| th.contains(x)) {
                out.insert(x.clone());
            }
        }
        NamedTerm::Var(_) | NamedTerm::Match(_) => {}
        NamedTerm::App(f, a) => {
            collect_free(f, kind, bound, out);
            collect_free(a, kind, bound, out);
        }
        NamedTerm::Abs(theta, p, b) => {
            // θ scopes over the pattern for matchables and over the body for
            // variables.
            let (scoped, unscoped) = match kind {
                Kind::Var => (b, p),
                Kind::Match => (p, b),
            };
            collect_free(unscoped, kind, bound, out);
            bound.push(theta);
            collect_free(scoped, kind, bound, out);
            bound.pop();
        }
    }
}

/// Per-binder bijection built while comparing two abstractions.
struct Frame<'a> {
    left: &'a [Symbol],
    right: &'a [Symbol],
    l2r: BTreeMap<&'a Symbol, &'a Symbol>,
    r2l: BTreeMap<&'a Symbol, &'a Symbol>,
}

struct AlphaEnv<'a> {
    frames: Vec<Frame<'a>>,
    var_scope: Vec<usize>,
    match_scope: Vec<usize>,
}

impl<'a> AlphaEnv<'a> {
    fn occurrence(&mut self, kind: Kind, x: &'a Symbol, y: &'a Symbol) -> bool {
        let scope = match kind {
            Kind::Var => &self.var_scope,
            Kind::Match => &self.match_scope,
        };
        let lx = scope
            .iter()
            .rev()
            .copied()
            .find(|&f| self.frames[f].left.contains(x));
        let ry = scope
            .iter()
            .rev()
            .copied()
            .find(|&f| self.frames[f].right.contains(y));
        match (lx, ry) {
            (None, None) => x == y,
            (Some(f), Some(g)) if f == g => {
                let frame = &mut self.frames[f];
                match (frame.l2r.get(x), frame.r2l.get(y)) {
                    (None, None) => {
                        frame.l2r.insert(x, y);
                        frame.r2l.insert(y, x);
                        true
                    }
                    (Some(&y2), Some(&x2)) => y2 == y && x2 == x,
                    _ => false,
                }
            }
            _ => false,
        }
    }

    fn eq(&mut self, t: &'a NamedTerm, u: &'a NamedTerm) -> bool {
        match (t, u) {
            (NamedTerm::Var(x), NamedTerm::Var(y)) => self.occurrence(Kind::Var, x, y),
            (NamedTerm::Match(x), NamedTerm::Match(y)) => self.occurrence(Kind::Match, x, y),
            (NamedTerm::App(f1, a1), NamedTerm::App(f2, a2)) => self.eq(f1, f2) && self.eq(a1, a2),
            (NamedTerm::Abs(th1, p1, b1), NamedTerm::Abs(th2, p2, b2)) => {
                if th1.len() != th2.len() {
                    return false;
                }
                let id = self.frames.len();
                self.frames.push(Frame {
                    left: th1,
                    right: th2,
                    l2r: BTreeMap::new(),
                    r2l: BTreeMap::new(),
                });
                self.match_scope.push(id);
                let pat = self.eq(p1, p2);
                self.match_scope.pop();
                if !pat {
                    return false;
                }
                self.var_scope.push(id);
                let body = self.eq(b1, b2);
                self.var_scope.pop();
                body
            }
            _ => false,
        }
    }
}

/// Equality up to a bijective renaming of bound symbols.
///
/// Binder lists are compared as unordered sets: `\[x,y] ^x ^y . y` and
/// `\[b,a] ^a ^b . b` are equivalent.
pub fn alpha_eq(t: &NamedTerm, u: &NamedTerm) -> bool {
    let mut env = AlphaEnv {
        frames: Vec::new(),
        var_scope: Vec::new(),
        match_scope: Vec::new(),
    };
    env.eq(t, u)
}

/// A representative of the alpha-class of `t`: every binder is renamed to
/// fresh names `b0, b1, …` (skipping the free symbols of `t`) in preorder, and
/// each binder list is reordered by first occurrence (pattern matchables, then
/// body variables, then unused symbols).
pub fn alpha_canonical(t: &NamedTerm) -> NamedTerm {
    let free = t.free_symbols();
    let mut next = 0usize;
    canon(t, &free, &mut next, &BTreeMap::new(), &BTreeMap::new())
}

fn canon(
    t: &NamedTerm,
    free: &BTreeSet<Symbol>,
    next: &mut usize,
    vars: &BTreeMap<Symbol, Symbol>,
    matches: &BTreeMap<Symbol, Symbol>,
) -> NamedTerm {
    match t {
        NamedTerm::Var(x) => NamedTerm::Var(vars.get(x).unwrap_or(x).clone()),
        NamedTerm::Match(x) => NamedTerm::Match(matches.get(x).unwrap_or(x).clone()),
        NamedTerm::App(f, a) => NamedTerm::app(
            canon(f, free, next, vars, matches),
            canon(a, free, next, vars, matches),
        ),
        NamedTerm::Abs(theta, p, b) => {
            let mut order: Vec<Symbol> = Vec::with_capacity(theta.len());
            first_occurrences(p, Kind::Match, theta, &mut Vec::new(), &mut order);
            first_occurrences(b, Kind::Var, theta, &mut Vec::new(), &mut order);
            for x in theta {
                if !order.contains(x) {
                    order.push(x.clone());
                }
            }
            let mut renaming = BTreeMap::new();
            let mut new_theta = Vec::with_capacity(order.len());
            for x in order {
                let fresh = loop {
                    let candidate = sym(&format!("b{next}"));
                    *next += 1;
                    if !free.contains(&candidate) {
                        break candidate;
                    }
                };
                new_theta.push(fresh.clone());
                renaming.insert(x, fresh);
            }
            let mut pm = matches.clone();
            let mut bv = vars.clone();
            for (old, new) in &renaming {
                pm.insert(old.clone(), new.clone());
                bv.insert(old.clone(), new.clone());
            }
            let p = canon(p, free, next, vars, &pm);
            let b = canon(b, free, next, &bv, matches);
            NamedTerm::Abs(new_theta, Box::new(p), Box::new(b))
        }
    }
}

/// Appends, in preorder, the symbols of `theta` occurring free (as `kind`)
/// in `t`, skipping inner rebindings.
fn first_occurrences<'a>(
    t: &'a NamedTerm,
    kind: Kind,
    theta: &[Symbol],
    shadow: &mut Vec<&'a [Symbol]>,
    order: &mut Vec<Symbol>,
) {
    match t {
        NamedTerm::Var(x) | NamedTerm::Match(x) => {
            let is_kind = matches!(
                (kind, t),
                (Kind::Var, NamedTerm::Var(_)) | (Kind::Match, NamedTerm::Match(_))
            );
            if is_kind
                && theta.contains(x)
                && !shadow.iter().any(|th| th.contains(x))
                && !order.contains(x)
            {
                order.push(x.clone());
            }
        }
        NamedTerm::App(f, a) => {
            first_occurrences(f, kind, theta, shadow, order);
            first_occurrences(a, kind, theta, shadow, order);
        }
        NamedTerm::Abs(th, p, b) => {
            let (scoped_first, scoped) = match kind {
                Kind::Match => (true, p),
                Kind::Var => (false, b),
            };
            if scoped_first {
                shadow.push(th);
                first_occurrences(scoped, kind, theta, shadow, order);
                shadow.pop();
                first_occurrences(b, kind, theta, shadow, order);
            } else {
                first_occurrences(p, kind, theta, shadow, order);
                shadow.push(th);
                first_occurrences(scoped, kind, theta, shadow, order);
                shadow.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_named;

    fn t(src: &str) -> NamedTerm {
        parse_named(src).unwrap()
    }

    fn names(xs: &[&str]) -> BTreeSet<Symbol> {
        xs.iter().map(|x| sym(x)).collect()
    }

    #[test]
    fn free_symbols_follow_binding_scopes() {
        let elim = t(r"\[x] ^x . (\[y] x ^y . y)");
        assert!(elim.free_vars().is_empty());
        assert!(elim.free_matchables().is_empty());
        assert_eq!(t(r"\[y] x ^y . y").free_vars(), names(&["x"]));
        assert_eq!(t("x").free_vars(), names(&["x"]));
        assert!(t("^x").free_vars().is_empty());
        assert_eq!(t("^x").free_matchables(), names(&["x"]));
        assert_eq!(
            t(r"\[z] ^z . (^c z) ^n").free_matchables(),
            names(&["c", "n"])
        );
    }

    #[test]
    fn alpha_equivalence_examples() {
        assert!(alpha_eq(&t(r"\[x] ^x . x"), &t(r"\[y] ^y . y")));
        assert!(!alpha_eq(&t(r"\[x] ^x . x"), &t(r"\[x] ^x . ^x")));
        assert!(alpha_eq(&t(r"\[x,y] ^x ^y . y"), &t(r"\[a,b] ^a ^b . b")));
        // binder order is not observable
        assert!(alpha_eq(&t(r"\[x,y] ^x ^y . y"), &t(r"\[b,a] ^a ^b . b")));
        // projection of the first vs the second component
        assert!(!alpha_eq(&t(r"\[x,y] ^x ^y . x"), &t(r"\[x,y] ^x ^y . y")));
        // free symbols must agree literally
        assert!(!alpha_eq(&t("x"), &t("y")));
        // a bound symbol never equals a free one
        assert!(!alpha_eq(&t(r"\[x] ^x . x"), &t(r"\[y] ^y . x")));
    }

    #[test]
    fn matchable_forms() {
        assert!(t("^z0 ^z1").is_data());
        assert!(!t(r"(\[w] ^w . ^z0 ^z1) ^z0").is_matchable_form());
        assert!(t(r"\[x] ^x . x").is_matchable_form());
        assert!(!t("x ^y").is_matchable_form());
    }

    #[test]
    fn canonical_form_agrees_with_alpha_eq() {
        let a = t(r"\[x,y] ^y ^x . (\[z] ^z . x z)");
        let b = t(r"\[q,p] ^p ^q . (\[x] ^x . q x)");
        assert!(alpha_eq(&a, &b));
        assert_eq!(alpha_canonical(&a), alpha_canonical(&b));
        let c = t(r"\[x,y] ^y ^x . (\[z] ^z . y z)");
        assert!(!alpha_eq(&a, &c));
        assert_ne!(alpha_canonical(&a), alpha_canonical(&c));
    }

    #[test]
    fn duplicate_binders_are_rejected() {
        let err = NamedTerm::abs(vec![sym("x"), sym("x")], t("^x"), t("x")).unwrap_err();
        assert_eq!(err, Error::DuplicateBinder("x".into()));
    }
}
