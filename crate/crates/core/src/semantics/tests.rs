use super::*;
use crate::syntax::{delta, identity, parse};
use crate::types::{parse_linear, parse_multi};

fn t(s: &str) -> Term {
    parse(s).unwrap()
}

fn pair(l: &str, m: &str, kind: PairKind) -> ComposablePair {
    ComposablePair::new(parse_linear(l).unwrap(), parse_multi(m).unwrap(), kind)
}

#[test]
fn pair_of_delta_i() {
    let p = pair_from_application(&delta(), &identity(), 10).unwrap().unwrap();
    assert_eq!(p.left.size(), 6);
    assert_eq!(p.right.size(), 4);
    assert_eq!(p.size(), 10);
    assert!(is_composable_pair(&p, &delta(), &identity(), 10).unwrap().is_yes());
    let r = lax_bound_check(&delta(), &identity(), &p, 10, Strategy::Leftmost).unwrap();
    assert_eq!((r.steps, r.result_size, r.pair_size), (2, 1, 11));
    assert!(r.holds);
}

#[test]
fn exact_pair_of_delta_i_needs_its_witness() {
    let e = exact_pair(&delta(), &identity(), 10, Strategy::Leftmost).unwrap();
    assert_eq!(e.pair.size(), 4);
    assert_eq!((e.report.measure(), e.report.pair_size), (5, 5));
    assert!(e.report.holds);
    let mut bare = e.pair.clone();
    let s = bare.witness.take().unwrap();
    assert!(matches!(is_composable_pair(&bare, &delta(), &identity(), 10).unwrap(), Verdict::No(_)));
    assert!(is_composable_up_to_subst(&bare, &s, &delta(), &identity(), 10).unwrap().is_yes());
    let r = lax_bound_check(&delta(), &identity(), &e.pair, 10, Strategy::Leftmost).unwrap();
    assert!(r.holds);
    assert_eq!(r.theorem, "T24.2");
}

#[test]
fn identity_applied_to_itself() {
    let p = pair_from_application(&identity(), &identity(), 10).unwrap().unwrap();
    assert_eq!(p.to_string(), "([[X0] -o X0] -o [X0] -o X0, [[X0] -o X0])");
    assert_eq!(p.size(), 4);
    let r = lax_bound_check(&identity(), &identity(), &p, 10, Strategy::Leftmost).unwrap();
    assert_eq!((r.measure(), r.pair_size), (3, 5));
    let e = exact_pair(&identity(), &identity(), 10, Strategy::Leftmost).unwrap();
    assert_eq!(e.report.pair_size, 3);
    assert!(e.report.holds);
}

#[test]
fn variable_left_type_is_not_composable() {
    let p = pair("X0", "[X0]", PairKind::Shrinking);
    assert!(matches!(is_composable_pair(&p, &identity(), &identity(), 10).unwrap(), Verdict::No(_)));
    let p = pair("[X0] -o X0", "[X0]", PairKind::Shrinking);
    assert!(matches!(is_composable_pair(&p, &delta(), &identity(), 10).unwrap(), Verdict::No(_)));
    assert!(matches!(
        lax_bound_check(&delta(), &identity(), &p, 10, Strategy::Leftmost),
        Err(SemanticsError::Membership(_))
    ));
}

#[test]
fn shrinking_pairs_need_a_right_codomain() {
    let k = t("\\x. \\y. y x");
    let p = pair("0 -o [0 -o X0] -o X0", "0", PairKind::Shrinking);
    assert!(matches!(is_composable_pair(&p, &k, &identity(), 10).unwrap(), Verdict::No(_)));
    let p = ComposablePair { kind: PairKind::Plain, ..p };
    assert!(is_composable_pair(&p, &k, &identity(), 10).unwrap().is_yes());
}

#[test]
fn head_exact_pair() {
    let f = t("\\x. \\y. x y y");
    let e = exact_pair(&f, &identity(), 20, Strategy::Head).unwrap();
    assert_eq!(e.report.steps, 2);
    assert_eq!(e.report.result_size, 2);
    assert_eq!(e.report.pair_size, 6);
    assert!(e.report.holds);
    assert!(e.pair.witness.is_none());
    let p = pair_from_head_application(&f, &identity(), 20).unwrap().unwrap();
    let r = lax_bound_check(&f, &identity(), &p, 20, Strategy::Head).unwrap();
    assert!(r.holds);
}

#[test]
fn preconditions() {
    let di = Term::app(delta(), identity());
    assert!(matches!(
        exact_pair(&di, &identity(), 10, Strategy::Leftmost),
        Err(SemanticsError::NotNormal(_))
    ));
    let err = pair_from_application(&t("x"), &identity(), 10).unwrap_err();
    assert!(matches!(err, SemanticsError::Open(_)));
    assert!(err.to_string().contains("\\x."));
    let phi = crate::derivation::Derivation::ax("x", parse_linear("X0").unwrap());
    assert!(matches!(compose(&phi, &phi), Err(SemanticsError::Open(_))));
}

#[test]
fn compose_joins_premises() {
    let p = pair_from_application(&delta(), &identity(), 10).unwrap().unwrap();
    let e = TypeContext::empty();
    let b = SearchBudget::default();
    let l = member(&e, &delta(), &Type::Linear(p.left.clone()), 10, b);
    let r = member(&e, &identity(), &Type::Multi(p.right.clone()), 10, b);
    let d = compose(l.witness().unwrap(), r.witness().unwrap()).unwrap();
    assert!(crate::derivation::check(&d).is_ok());
    assert_eq!(d.size(), 5);
}

#[test]
fn report_serializes_relation() {
    let e = exact_pair(&identity(), &identity(), 10, Strategy::Leftmost).unwrap();
    let v = serde_json::to_value(&e.report).unwrap();
    assert_eq!(v["relation"], "exact");
    assert_eq!(v["pass"], true);
}
