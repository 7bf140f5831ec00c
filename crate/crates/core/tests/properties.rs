mod common;

use multibounds::derivation::{check, infer_via_trace, skeleton_eq};
use multibounds::reduction::{beta_step_at, normalize, redex_positions};
use multibounds::types::parse_linear;
use multibounds::{LinearType, MultiType, Strategy as Eval, Term, TyVar, TypeSubstitution};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn closed_term(budget: usize) -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(move |seed| common::random_closed(&mut ChaCha8Rng::seed_from_u64(seed), budget))
}

/// Terms with named binders, substituted the textbook way.
#[derive(Clone, Debug)]
enum Named {
    Var(String),
    Lam(String, Box<Named>),
    App(Box<Named>, Box<Named>),
}

impl Named {
    fn to_term(&self) -> Term {
        match self {
            Named::Var(x) => Term::var(x.clone()),
            Named::Lam(x, b) => Term::lam(x, b.to_term()),
            Named::App(f, a) => Term::app(f.to_term(), a.to_term()),
        }
    }

    fn free(&self) -> Vec<String> {
        match self {
            Named::Var(x) => vec![x.clone()],
            Named::Lam(x, b) => b.free().into_iter().filter(|y| y != x).collect(),
            Named::App(f, a) => {
                let mut v = f.free();
                v.extend(a.free());
                v
            }
        }
    }

    fn names(&self) -> Vec<String> {
        match self {
            Named::Var(x) => vec![x.clone()],
            Named::Lam(x, b) => {
                let mut v = b.names();
                v.push(x.clone());
                v
            }
            Named::App(f, a) => {
                let mut v = f.names();
                v.extend(a.names());
                v
            }
        }
    }

    fn subst(&self, x: &str, u: &Named) -> Named {
        match self {
            Named::Var(y) if y == x => u.clone(),
            Named::Var(_) => self.clone(),
            Named::App(f, a) => Named::App(Box::new(f.subst(x, u)), Box::new(a.subst(x, u))),
            Named::Lam(y, _) if y == x => self.clone(),
            Named::Lam(y, b) if u.free().contains(y) => {
                let mut taken = b.names();
                taken.extend(u.names());
                taken.push(x.to_string());
                let mut fresh = format!("{y}'");
                while taken.contains(&fresh) {
                    fresh.push('\'');
                }
                let renamed = b.subst(y, &Named::Var(fresh.clone()));
                Named::Lam(fresh, Box::new(renamed.subst(x, u)))
            }
            Named::Lam(y, b) => Named::Lam(y.clone(), Box::new(b.subst(x, u))),
        }
    }
}

fn named() -> impl Strategy<Value = Named> {
    let leaf = prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Named::Var(s.to_string()));
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["x", "y", "z"]), inner.clone())
                .prop_map(|(x, b)| Named::Lam(x.to_string(), Box::new(b))),
            (inner.clone(), inner).prop_map(|(f, a)| Named::App(Box::new(f), Box::new(a))),
        ]
    })
}

fn linear() -> impl Strategy<Value = LinearType> {
    let leaf = (0u32..3).prop_map(|n| LinearType::Var(TyVar::x(n)));
    leaf.prop_recursive(4, 16, 3, |inner| {
        (prop::collection::vec(inner.clone(), 0..3), inner)
            .prop_map(|(dom, cod)| LinearType::arrow(MultiType::new(dom), cod))
    })
}

fn substitution() -> impl Strategy<Value = TypeSubstitution> {
    prop::collection::vec((0u32..3, linear()), 0..3)
        .prop_map(|v| TypeSubstitution::from_pairs(v.into_iter().map(|(n, l)| (TyVar::x(n), l))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn substitution_agrees_with_the_named_reference(t in named(), u in named()) {
        let reference = t.subst("x", &u).to_term();
        prop_assert_eq!(t.to_term().subst("x", &u.to_term()), reference);
    }

    #[test]
    fn any_step_keeps_the_normal_form(t in closed_term(12), pick in any::<prop::sample::Index>()) {
        let nf = normalize(&t, Eval::Leftmost, 40);
        prop_assume!(nf.terminated());
        let positions = redex_positions(&t);
        prop_assume!(!positions.is_empty());
        let pos = pick.get(&positions);
        let stepped = beta_step_at(&t, pos).unwrap();
        let again = normalize(&stepped, Eval::Leftmost, 400);
        prop_assert!(again.terminated());
        prop_assert_eq!(again.final_term(), nf.final_term());
    }

    #[test]
    fn head_trace_is_a_prefix_of_the_leftmost_one(t in closed_term(12)) {
        let lo = normalize(&t, Eval::Leftmost, 40);
        let h = normalize(&t, Eval::Head, 40);
        prop_assume!(h.terminated());
        prop_assert!(h.len() <= lo.len() || !lo.terminated());
        for (a, b) in h.steps.iter().zip(&lo.steps) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn substitution_composes(l in linear(), s in substitution(), r in substitution()) {
        prop_assert_eq!(r.linear(&s.linear(&l)), s.then(&r).linear(&l));
    }

    #[test]
    fn types_print_and_parse_back(l in linear()) {
        prop_assert_eq!(parse_linear(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn substituted_derivations_stay_valid(t in closed_term(10), s in substitution()) {
        let inf = infer_via_trace(&t, 40).unwrap();
        prop_assume!(inf.is_some());
        let d = inf.unwrap().derivation;
        let ds = d.subst(&s);
        prop_assert!(check(&ds).is_ok());
        prop_assert!(skeleton_eq(&d, &ds));
        prop_assert_eq!(ds.size(), d.size());
    }
}
