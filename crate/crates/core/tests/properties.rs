use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ppc_core::harness::{gen_indexed, gen_named, gen_named_pattern, GenConfig};
use ppc_core::indexed::{canonicalize_secondary, eq_mod_secondary};
use ppc_core::named::{alpha_canonical, alpha_eq, match_named};
use ppc_core::syntax::{any_from_json, any_to_json, parse_indexed, parse_named, AnyTerm};
use ppc_core::{IndexedTerm, MatchOutcome, NamedSubst, NamedTerm, Rewrite, Symbol};

fn cfg(seed: u64) -> GenConfig {
    GenConfig {
        seed,
        max_size: 20,
        max_arity: 3,
        ..GenConfig::default()
    }
}

fn named() -> impl Strategy<Value = NamedTerm> {
    any::<u64>().prop_map(|s| gen_named(&cfg(s)))
}

fn indexed() -> impl Strategy<Value = IndexedTerm> {
    any::<u64>().prop_map(|s| gen_indexed(&cfg(s)))
}

fn closed_named() -> impl Strategy<Value = NamedTerm> {
    any::<u64>().prop_map(|s| {
        gen_named(&GenConfig {
            closed: true,
            ..cfg(s)
        })
    })
}

/// Renames every binder to a globally fresh `r<k>`, respecting scope.
fn rename_binders(t: &NamedTerm) -> NamedTerm {
    fn go(
        t: &NamedTerm,
        vars: &BTreeMap<Symbol, Symbol>,
        matches: &BTreeMap<Symbol, Symbol>,
        next: &mut usize,
    ) -> NamedTerm {
        match t {
            NamedTerm::Var(x) => NamedTerm::Var(vars.get(x).cloned().unwrap_or_else(|| x.clone())),
            NamedTerm::Match(x) => {
                NamedTerm::Match(matches.get(x).cloned().unwrap_or_else(|| x.clone()))
            }
            NamedTerm::App(f, a) => {
                NamedTerm::app(go(f, vars, matches, next), go(a, vars, matches, next))
            }
            NamedTerm::Abs(theta, p, b) => {
                let fresh: Vec<Symbol> = theta
                    .iter()
                    .map(|_| {
                        *next += 1;
                        Symbol::new(&format!("r{next}")).unwrap()
                    })
                    .collect();
                let mut m2 = matches.clone();
                let mut v2 = vars.clone();
                for (x, y) in theta.iter().zip(&fresh) {
                    m2.insert(x.clone(), y.clone());
                    v2.insert(x.clone(), y.clone());
                }
                let p = go(p, vars, &m2, next);
                let b = go(b, &v2, matches, next);
                NamedTerm::Abs(fresh, Box::new(p), Box::new(b))
            }
        }
    }
    go(t, &BTreeMap::new(), &BTreeMap::new(), &mut 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn named_print_parse_round_trip(t in named()) {
        prop_assert_eq!(parse_named(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn indexed_print_parse_round_trip(t in indexed()) {
        prop_assert_eq!(parse_indexed(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn json_round_trip(t in named(), u in indexed()) {
        for any in [AnyTerm::Named(t), AnyTerm::Indexed(u)] {
            prop_assert_eq!(any_from_json(&any_to_json(&any)).unwrap(), any);
        }
    }

    #[test]
    fn empty_substitution_is_identity(t in named()) {
        prop_assert_eq!(NamedSubst::new().apply(&t), t);
    }

    #[test]
    fn alpha_eq_is_an_equivalence(t in named(), u in named()) {
        let r = rename_binders(&t);
        let rr = rename_binders(&r);
        prop_assert!(alpha_eq(&t, &t));
        prop_assert!(alpha_eq(&t, &r) && alpha_eq(&r, &t));
        prop_assert!(alpha_eq(&r, &rr) && alpha_eq(&t, &rr));
        prop_assert_eq!(alpha_eq(&t, &u), alpha_eq(&u, &t));
        if alpha_eq(&t, &u) {
            prop_assert_eq!(t.free_vars(), u.free_vars());
            prop_assert_eq!(t.free_matchables(), u.free_matchables());
        }
    }

    #[test]
    fn alpha_canonical_decides_alpha_eq(t in named(), u in named()) {
        let r = rename_binders(&t);
        prop_assert_eq!(alpha_canonical(&t), alpha_canonical(&r));
        prop_assert!(alpha_eq(&alpha_canonical(&t), &t));
        prop_assert_eq!(alpha_eq(&t, &u), alpha_canonical(&t) == alpha_canonical(&u));
    }

    #[test]
    fn step_commutes_with_renaming(t in named()) {
        let r = rename_binders(&t);
        prop_assert_eq!(t.redexes(), r.redexes());
        for pos in t.redexes() {
            let a = t.step_at(&pos).unwrap();
            let b = r.step_at(&pos).unwrap();
            prop_assert!(alpha_eq(&a, &b), "at {}: {} vs {}", pos, a, b);
        }
    }

    #[test]
    fn closed_named_terms_stay_closed(t in closed_named()) {
        prop_assert!(t.is_closed());
        for pos in t.redexes() {
            let u = t.step_at(&pos).unwrap();
            prop_assert!(u.free_vars().is_empty(), "{} -> {}", t, u);
        }
    }

    #[test]
    fn named_matching_is_deterministic_with_full_domain(seed in any::<u64>(), u in named()) {
        let theta: Vec<Symbol> = ["a", "b"].iter().map(|x| Symbol::new(x).unwrap()).collect();
        let free: Vec<Symbol> = ["x1", "x2"].iter().map(|x| Symbol::new(x).unwrap()).collect();
        let mut rng = cfg(seed).rng();
        let p = gen_named_pattern(&cfg(seed), &mut rng, &theta, &free, &free);
        let m1 = match_named(&theta, &p, &u);
        prop_assert_eq!(&m1, &match_named(&theta, &p, &u));
        if let MatchOutcome::Success(sigma) = m1 {
            prop_assert_eq!(sigma.domain(), theta.iter().cloned().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn eq_mod_secondary_is_an_equivalence(t in indexed(), u in indexed()) {
        let c = canonicalize_secondary(&t).unwrap();
        prop_assert_eq!(canonicalize_secondary(&c).unwrap(), c.clone());
        prop_assert!(eq_mod_secondary(&t, &t).unwrap());
        prop_assert!(eq_mod_secondary(&t, &c).unwrap() && eq_mod_secondary(&c, &t).unwrap());
        prop_assert_eq!(eq_mod_secondary(&t, &u).unwrap(), eq_mod_secondary(&u, &t).unwrap());
    }

    #[test]
    fn indexed_steps_preserve_well_formedness(t in indexed()) {
        for pos in t.redexes() {
            let u = t.step_at(&pos).unwrap();
            prop_assert!(u.is_well_formed(), "{} -> {}", t, u);
        }
    }
}
