//! Translations between the named and the indexed calculus.
//!
//! Both directions are steered by a pair of name tables: `vars` interprets
//! variable indices, `matches` interprets matchable indices. Row `i` (1-based)
//! holds the symbols at binder distance `i`; column `j` selects the slot.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexed::{match_idx, BIndex, IndexedMatch, IndexedTerm, LevelSubst};
use crate::named::{match_named, NamedMatch, NamedSubst, NamedTerm, Symbol};

/// A list of lists of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameTable {
    pub rows: Vec<Vec<Symbol>>,
}

impl NameTable {
    pub fn new(rows: Vec<Vec<Symbol>>) -> Self {
        NameTable { rows }
    }

    /// One singleton row per symbol.
    pub fn singletons(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        NameTable {
            rows: symbols.into_iter().map(|x| vec![x]).collect(),
        }
    }

    /// `x1 … xn` as singleton rows.
    pub fn default_rows(n: usize) -> Self {
        NameTable::singletons((1..=n).map(default_name))
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// `theta : self`
    pub fn push_front(&self, theta: &[Symbol]) -> NameTable {
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(theta.to_vec());
        rows.extend(self.rows.iter().cloned());
        NameTable { rows }
    }

    /// True if no symbol appears twice, as the indexed-to-named direction
    /// requires.
    pub fn is_distinct(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.rows.iter().flatten().all(|x| seen.insert(x))
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Symbol::new(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid symbol `{s}`")))
    }
}

/// Draws binder names `v1, v2, …`, never emitting a reserved symbol.
#[derive(Debug, Clone, Default)]
pub struct FreshGen {
    reserved: BTreeSet<Symbol>,
    counter: usize,
}

impl FreshGen {
    pub fn new(reserved: impl IntoIterator<Item = Symbol>) -> Self {
        FreshGen {
            reserved: reserved.into_iter().collect(),
            counter: 0,
        }
    }

    /// A generator reserving every symbol of both tables.
    pub fn for_tables(vars: &NameTable, matches: &NameTable) -> Self {
        FreshGen::new(vars.symbols().into_iter().chain(matches.symbols()))
    }

    pub fn reserve(&mut self, x: Symbol) {
        self.reserved.insert(x);
    }

    pub fn counter(&self) -> usize {
        self.counter
    }

    pub fn fresh(&mut self) -> Symbol {
        loop {
            self.counter += 1;
            let x = Symbol::new(&format!("v{}", self.counter)).expect("valid symbol");
            if !self.reserved.contains(&x) {
                return x;
            }
        }
    }
}

/// Table lookup by stacking binder rows in front of a base table.
struct Scope<'a> {
    base: &'a NameTable,
    pushed: Vec<Vec<Symbol>>,
}

impl<'a> Scope<'a> {
    fn new(base: &'a NameTable) -> Self {
        Scope {
            base,
            pushed: Vec::new(),
        }
    }

    fn row(&self, i: usize) -> Option<&[Symbol]> {
        let depth = self.pushed.len();
        if i == 0 {
            None
        } else if i <= depth {
            Some(&self.pushed[depth - i])
        } else {
            self.base.rows.get(i - depth - 1).map(|r| r.as_slice())
        }
    }

    fn position(&self, x: &Symbol) -> Option<BIndex> {
        let rows = self.pushed.iter().rev().chain(self.base.rows.iter());
        for (i, row) in rows.enumerate() {
            if let Some(j) = row.iter().position(|y| y == x) {
                return BIndex::new(i + 1, j + 1);
            }
        }
        None
    }
}

/// Named to indexed, relative to the given tables.
pub fn to_indexed(t: &NamedTerm, vars: &NameTable, matches: &NameTable) -> Result<IndexedTerm> {
    to_idx(t, &mut Scope::new(vars), &mut Scope::new(matches))
}

fn to_idx(t: &NamedTerm, vars: &mut Scope, matches: &mut Scope) -> Result<IndexedTerm> {
    Ok(match t {
        NamedTerm::Var(x) => IndexedTerm::Var(
            vars.position(x)
                .ok_or_else(|| Error::UnboundSymbol(x.to_string()))?,
        ),
        NamedTerm::Match(x) => IndexedTerm::Match(
            matches
                .position(x)
                .ok_or_else(|| Error::UnboundSymbol(format!("^{x}")))?,
        ),
        NamedTerm::App(f, a) => {
            IndexedTerm::app(to_idx(f, vars, matches)?, to_idx(a, vars, matches)?)
        }
        NamedTerm::Abs(theta, p, b) => {
            matches.pushed.push(theta.clone());
            let p = to_idx(p, vars, matches);
            matches.pushed.pop();
            vars.pushed.push(theta.clone());
            let b = to_idx(b, vars, matches);
            vars.pushed.pop();
            IndexedTerm::abs(theta.len(), p?, b?)
        }
    })
}

/// `x<k>` with `k >= 1` written without leading zeros.
pub(crate) fn default_slot(x: &Symbol) -> Option<usize> {
    let digits = x.as_str().strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn default_name(k: usize) -> Symbol {
    Symbol::new(&format!("x{k}")).expect("valid symbol")
}

/// The singleton-row table used by [`to_indexed_default`].
///
/// A free symbol `x<k>` occupies row `k`; the remaining free symbols, sorted,
/// fill the lowest empty rows; any row still empty holds `x<k>`.
pub fn default_table(t: &NamedTerm) -> NameTable {
    let mut slots: BTreeMap<usize, Symbol> = BTreeMap::new();
    let mut others = Vec::new();
    for x in t.free_symbols() {
        match default_slot(&x) {
            Some(k) => {
                slots.insert(k, x);
            }
            None => others.push(x),
        }
    }
    let mut k = 1;
    for x in others {
        while slots.contains_key(&k) {
            k += 1;
        }
        slots.insert(k, x);
    }
    let n = slots.keys().next_back().copied().unwrap_or(0);
    NameTable::singletons((1..=n).map(|k| slots.remove(&k).unwrap_or_else(|| default_name(k))))
}

pub fn to_indexed_default(t: &NamedTerm) -> IndexedTerm {
    let table = default_table(t);
    to_indexed(t, &table, &table).expect("default table covers every free symbol")
}

/// Indexed to named, relative to the given tables; each abstraction draws
/// fresh binders from `gen`, the `j`-th one naming slot `j`.
pub fn to_named(
    t: &IndexedTerm,
    vars: &NameTable,
    matches: &NameTable,
    gen: &mut FreshGen,
) -> Result<NamedTerm> {
    to_nm(t, &mut Scope::new(vars), &mut Scope::new(matches), gen)
}

fn lookup(scope: &Scope, b: &BIndex) -> Result<Symbol> {
    match scope
        .row(b.primary)
        .and_then(|row| row.get(b.secondary - 1))
    {
        Some(x) => Ok(x.clone()),
        None if b.primary <= scope.pushed.len() => Err(Error::IllFormed(format!(
            "index {b} exceeds the arity of its binder"
        ))),
        None => Err(Error::MissingName {
            primary: b.primary - scope.pushed.len(),
            secondary: b.secondary,
        }),
    }
}

fn to_nm(
    t: &IndexedTerm,
    vars: &mut Scope,
    matches: &mut Scope,
    gen: &mut FreshGen,
) -> Result<NamedTerm> {
    Ok(match t {
        IndexedTerm::Var(b) => NamedTerm::Var(lookup(vars, b)?),
        IndexedTerm::Match(b) => NamedTerm::Match(lookup(matches, b)?),
        IndexedTerm::App(f, a) => {
            let f = to_nm(f, vars, matches, gen)?;
            NamedTerm::app(f, to_nm(a, vars, matches, gen)?)
        }
        IndexedTerm::Abs(n, p, b) => {
            let theta: Vec<Symbol> = (0..*n).map(|_| gen.fresh()).collect();
            matches.pushed.push(theta.clone());
            let p = to_nm(p, vars, matches, gen);
            matches.pushed.pop();
            let p = p?;
            vars.pushed.push(theta.clone());
            let b = to_nm(b, vars, matches, gen);
            vars.pushed.pop();
            NamedTerm::Abs(theta, Box::new(p), Box::new(b?))
        }
    })
}

/// Indexed to named with the table `x1 … xn`, `n` the largest free primary.
pub fn to_named_default(t: &IndexedTerm) -> Result<NamedTerm> {
    t.check_well_formed()?;
    let table = NameTable::default_rows(t.max_free_primary());
    let mut gen = FreshGen::for_tables(&table, &table);
    to_named(t, &table, &table, &mut gen)
}

/// Maps `x_j := u` to `1.j := [u]`, `j` being the position of `x_j` in `theta`.
pub fn translate_subst_to_idx(
    sigma: &NamedSubst,
    theta: &[Symbol],
    vars: &NameTable,
    matches: &NameTable,
) -> Result<LevelSubst> {
    let mut out = LevelSubst::new(1);
    for (x, u) in sigma.iter() {
        let j = theta
            .iter()
            .position(|y| y == x)
            .ok_or_else(|| Error::DomainNotEnumerated(x.to_string()))?;
        out.map.insert(j + 1, to_indexed(u, vars, matches)?);
    }
    Ok(out)
}

/// Maps `1.j := u` to `theta_j := [u]`.
pub fn translate_subst_to_named(
    sigma: &LevelSubst,
    theta: &[Symbol],
    vars: &NameTable,
    matches: &NameTable,
    gen: &mut FreshGen,
) -> Result<NamedSubst> {
    if sigma.level != 1 {
        return Err(Error::LevelMismatch(sigma.level));
    }
    if let Some((&needed, _)) = sigma.map.iter().next_back() {
        if needed > theta.len() {
            return Err(Error::ThetaTooShort {
                len: theta.len(),
                needed,
            });
        }
    }
    let mut out = NamedSubst::new();
    for (j, u) in &sigma.map {
        out.insert(theta[j - 1].clone(), to_named(u, vars, matches, gen)?);
    }
    Ok(out)
}

/// The indexed image of `match(theta, p, u)`: the pattern is read with
/// `theta` pushed onto the matchable table.
pub fn translate_match_to_idx(
    theta: &[Symbol],
    p: &NamedTerm,
    u: &NamedTerm,
    vars: &NameTable,
    matches: &NameTable,
) -> Result<IndexedMatch> {
    let p = to_indexed(p, vars, &matches.push_front(theta))?;
    let u = to_indexed(u, vars, matches)?;
    Ok(match_idx(theta.len(), &p, &u))
}

/// The named image of `match(n, p, u)` using the binder list `theta`.
pub fn translate_match_to_named(
    n: usize,
    p: &IndexedTerm,
    u: &IndexedTerm,
    theta: &[Symbol],
    vars: &NameTable,
    matches: &NameTable,
    gen: &mut FreshGen,
) -> Result<NamedMatch> {
    if theta.len() < n {
        return Err(Error::ThetaTooShort {
            len: theta.len(),
            needed: n,
        });
    }
    let theta = &theta[..n];
    let p = to_named(p, vars, &matches.push_front(theta), gen)?;
    let u = to_named(u, vars, matches, gen)?;
    Ok(match_named(theta, &p, &u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexed::eq_mod_secondary;
    use crate::named::{alpha_eq, sym};
    use crate::outcome::MatchOutcome;
    use crate::syntax::{parse_indexed, parse_named};

    fn n(src: &str) -> NamedTerm {
        parse_named(src).unwrap()
    }

    fn i(src: &str) -> IndexedTerm {
        parse_indexed(src).unwrap()
    }

    fn table(rows: &[&[&str]]) -> NameTable {
        NameTable::new(
            rows.iter()
                .map(|r| r.iter().map(|x| sym(x)).collect())
                .collect(),
        )
    }

    const ELIM: &str = r"\[x] ^x . (\[y] x ^y . y)";
    const ELIM_DB: &str = r"\{1} ^1.1 . (\{1} 1.1 ^1.1 . 1.1)";

    #[test]
    fn worked_example_both_ways() {
        let yz = table(&[&["y"], &["z"]]);
        let s1 = n(r"(\[x] ^y ^x . x) (^y z)");
        let t1 = i(r"(\{1} ^2.1 ^1.1 . 1.1) (^1.1 2.1)");
        assert_eq!(to_indexed(&s1, &yz, &yz).unwrap(), t1);
        assert_eq!(to_indexed_default(&s1), t1);
        let mut gen = FreshGen::for_tables(&yz, &yz);
        assert!(alpha_eq(&to_named(&t1, &yz, &yz, &mut gen).unwrap(), &s1));
    }

    #[test]
    fn elim_pair() {
        assert_eq!(to_indexed_default(&n(ELIM)), i(ELIM_DB));
        assert!(alpha_eq(&to_named_default(&i(ELIM_DB)).unwrap(), &n(ELIM)));
    }

    #[test]
    fn base_cases() {
        let empty = NameTable::default();
        assert_eq!(
            to_indexed(&n("^x"), &empty, &table(&[&["x"]])).unwrap(),
            i("^1.1")
        );
        let mut gen = FreshGen::default();
        assert_eq!(
            to_named(&i("^1.1"), &empty, &table(&[&["y"]]), &mut gen).unwrap(),
            n("^y")
        );
        assert_eq!(to_named_default(&i("1.1")).unwrap(), n("x1"));
        assert_eq!(to_indexed_default(&n("x")), i("1.1"));
        assert!(alpha_eq(
            &to_named_default(&i(r"\{2} ^1.1 ^1.2 . 1.1")).unwrap(),
            &n(r"\[a,b] ^a ^b . a")
        ));
    }

    #[test]
    fn lookup_failures() {
        let empty = NameTable::default();
        assert_eq!(
            to_indexed(&n("q"), &empty, &empty),
            Err(Error::UnboundSymbol("q".into()))
        );
        let mut gen = FreshGen::default();
        assert_eq!(
            to_named(&i(r"\{1} ^1.1 . 3.1"), &table(&[&["a"]]), &empty, &mut gen),
            Err(Error::MissingName {
                primary: 2,
                secondary: 1
            })
        );
        assert!(matches!(
            to_named_default(&i("^1.2")),
            Err(Error::IllFormed(_))
        ));
    }

    #[test]
    fn minimum_row_and_column_win() {
        let v = table(&[&["a", "b", "a"], &["b"]]);
        assert_eq!(
            to_indexed(&n("a b"), &v, &NameTable::default()).unwrap(),
            i("1.1 1.2")
        );
    }

    #[test]
    fn default_table_layout() {
        let t = n("x3 b a ^x1");
        let rows: Vec<String> = default_table(&t)
            .rows
            .iter()
            .map(|r| r[0].to_string())
            .collect();
        assert_eq!(rows, ["x1", "a", "x3", "b"]);
        let t = n("x2 x05");
        let rows: Vec<String> = default_table(&t)
            .rows
            .iter()
            .map(|r| r[0].to_string())
            .collect();
        assert_eq!(rows, ["x05", "x2"]);
    }

    #[test]
    fn default_round_trips() {
        let t = n(r"x2 (\[v1,x1] ^x1 ^v1 ^x3 . v1 x2)");
        let back = to_named_default(&to_indexed_default(&t)).unwrap();
        assert!(alpha_eq(&back, &t), "{back}");
        let u = i(r"\{2} ^1.2 ^1.1 . 1.1 3.1");
        let again = to_indexed_default(&to_named_default(&u).unwrap());
        assert!(eq_mod_secondary(&again, &u).unwrap());
    }

    #[test]
    fn fresh_binders_avoid_tables_and_each_other() {
        let v = table(&[&["v1"], &["v3"]]);
        let mut gen = FreshGen::for_tables(&v, &v);
        let t = to_named(
            &i(r"\{2} ^1.1 ^1.2 . (\{1} ^1.1 . 2.1 3.1)"),
            &v,
            &v,
            &mut gen,
        )
        .unwrap();
        match t {
            NamedTerm::Abs(theta, _, body) => {
                assert_eq!(theta, vec![sym("v2"), sym("v4")]);
                assert!(matches!(*body, NamedTerm::Abs(ref th, _, _) if th == &vec![sym("v5")]));
            }
            _ => panic!("expected an abstraction"),
        }
    }

    #[test]
    fn substitution_translations() {
        let xy = [sym("x"), sym("y")];
        let z = table(&[&["z0"], &["z1"]]);
        let sigma: NamedSubst = [(sym("x"), n("^z0")), (sym("y"), n("^z1"))]
            .into_iter()
            .collect();
        let level = translate_subst_to_idx(&sigma, &xy, &z, &z).unwrap();
        assert_eq!(level.map.get(&1), Some(&i("^1.1")));
        assert_eq!(level.map.get(&2), Some(&i("^2.1")));
        let mut gen = FreshGen::for_tables(&z, &z);
        let back = translate_subst_to_named(&level, &xy, &z, &z, &mut gen).unwrap();
        assert_eq!(back, sigma);
        assert_eq!(
            translate_subst_to_idx(&sigma, &[sym("x")], &z, &z),
            Err(Error::DomainNotEnumerated("y".into()))
        );
        assert_eq!(
            translate_subst_to_named(&level, &[sym("x")], &z, &z, &mut gen),
            Err(Error::ThetaTooShort { len: 1, needed: 2 })
        );
    }

    #[test]
    fn match_translations() {
        let v = table(&[&["a"]]);
        let m = translate_match_to_idx(&[sym("x")], &n("^x"), &n("a"), &v, &v).unwrap();
        assert_eq!(m, MatchOutcome::Success(LevelSubst::single(1, 1, i("1.1"))));
        let fail =
            translate_match_to_idx(&[sym("x"), sym("y")], &n("^x"), &n("a"), &v, &v).unwrap();
        assert_eq!(fail, MatchOutcome::Fail);
        let wait = translate_match_to_idx(&[sym("x")], &n("^x ^x"), &n("a"), &v, &v).unwrap();
        assert_eq!(wait, MatchOutcome::Wait);
        let mut gen = FreshGen::for_tables(&v, &v);
        let named =
            translate_match_to_named(1, &i("^1.1"), &i("1.1"), &[sym("q")], &v, &v, &mut gen)
                .unwrap();
        assert_eq!(
            named,
            MatchOutcome::Success(NamedSubst::single(sym("q"), n("a")))
        );
    }
}
