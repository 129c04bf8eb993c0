use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::term::{NamedTerm, Symbol};

/// A finite map from variable symbols to terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NamedSubst(pub BTreeMap<Symbol, NamedTerm>);

impl NamedSubst {
    pub fn new() -> Self {
        NamedSubst(BTreeMap::new())
    }

    pub fn single(x: Symbol, u: NamedTerm) -> Self {
        NamedSubst(BTreeMap::from([(x, u)]))
    }

    pub fn domain(&self) -> BTreeSet<Symbol> {
        self.0.keys().cloned().collect()
    }

    pub fn get(&self, x: &Symbol) -> Option<&NamedTerm> {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: Symbol, u: NamedTerm) {
        self.0.insert(x, u);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &NamedTerm)> {
        self.0.iter()
    }

    /// Domain symbols plus the free symbols of every image.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = self.domain();
        for u in self.0.values() {
            out.extend(u.free_symbols());
        }
        out
    }

    /// Applies the substitution, renaming any binder that would capture.
    pub fn apply(&self, t: &NamedTerm) -> NamedTerm {
        if self.is_empty() {
            return t.clone();
        }
        let clash = self.symbols();
        let mut avoid = clash.clone();
        t.all_symbols(&mut avoid);
        for u in self.0.values() {
            u.all_symbols(&mut avoid);
        }
        subst(self, &clash, &mut avoid, t)
    }
}

impl FromIterator<(Symbol, NamedTerm)> for NamedSubst {
    fn from_iter<I: IntoIterator<Item = (Symbol, NamedTerm)>>(iter: I) -> Self {
        NamedSubst(iter.into_iter().collect())
    }
}

/// Shorthand for [`NamedSubst::apply`].
pub fn apply_subst(sigma: &NamedSubst, t: &NamedTerm) -> NamedTerm {
    sigma.apply(t)
}

/// Picks `base0`, `base1`, … until one is outside `avoid`, then reserves it.
pub fn fresh_like(base: &Symbol, avoid: &mut BTreeSet<Symbol>) -> Symbol {
    let mut k = 0usize;
    loop {
        let candidate = Symbol::new(&format!("{}{k}", base.as_str())).expect("valid base");
        if avoid.insert(candidate.clone()) {
            return candidate;
        }
        k += 1;
    }
}

fn subst(
    sigma: &NamedSubst,
    clash: &BTreeSet<Symbol>,
    avoid: &mut BTreeSet<Symbol>,
    t: &NamedTerm,
) -> NamedTerm {
    match t {
        NamedTerm::Var(x) => sigma.get(x).cloned().unwrap_or_else(|| t.clone()),
        NamedTerm::Match(_) => t.clone(),
        NamedTerm::App(f, a) => {
            NamedTerm::app(subst(sigma, clash, avoid, f), subst(sigma, clash, avoid, a))
        }
        NamedTerm::Abs(theta, p, b) => {
            if theta.iter().any(|x| clash.contains(x)) {
                let mut renaming = BTreeMap::new();
                let new_theta: Vec<Symbol> = theta
                    .iter()
                    .map(|x| {
                        if clash.contains(x) {
                            let y = fresh_like(x, avoid);
                            renaming.insert(x.clone(), y.clone());
                            y
                        } else {
                            x.clone()
                        }
                    })
                    .collect();
                let p = rename_free(p, &renaming, Occ::Match);
                let b = rename_free(b, &renaming, Occ::Var);
                NamedTerm::Abs(
                    new_theta,
                    Box::new(subst(sigma, clash, avoid, &p)),
                    Box::new(subst(sigma, clash, avoid, &b)),
                )
            } else {
                NamedTerm::Abs(
                    theta.clone(),
                    Box::new(subst(sigma, clash, avoid, p)),
                    Box::new(subst(sigma, clash, avoid, b)),
                )
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Occ {
    Var,
    Match,
}

/// Renames free occurrences of one kind, respecting inner rebinding.
pub(crate) fn rename_free(
    t: &NamedTerm,
    renaming: &BTreeMap<Symbol, Symbol>,
    occ: Occ,
) -> NamedTerm {
    if renaming.is_empty() {
        return t.clone();
    }
    match t {
        NamedTerm::Var(x) if occ == Occ::Var => {
            NamedTerm::Var(renaming.get(x).unwrap_or(x).clone())
        }
        NamedTerm::Match(x) if occ == Occ::Match => {
            NamedTerm::Match(renaming.get(x).unwrap_or(x).clone())
        }
        NamedTerm::Var(_) | NamedTerm::Match(_) => t.clone(),
        NamedTerm::App(f, a) => {
            NamedTerm::app(rename_free(f, renaming, occ), rename_free(a, renaming, occ))
        }
        NamedTerm::Abs(theta, p, b) => {
            let shadowed: BTreeMap<Symbol, Symbol> = renaming
                .iter()
                .filter(|(k, _)| !theta.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            let (p_map, b_map) = match occ {
                Occ::Match => (&shadowed, renaming),
                Occ::Var => (renaming, &shadowed),
            };
            NamedTerm::Abs(
                theta.clone(),
                Box::new(rename_free(p, p_map, occ)),
                Box::new(rename_free(b, b_map, occ)),
            )
        }
    }
}
