use super::*;
use crate::reduction::{normalize, Strategy};
use crate::syntax::{delta, identity, omega, parse, Position};
use crate::types::{parse_linear, parse_multi};
use crate::types::TyVarSupply;

fn t(s: &str) -> Term {
    parse(s).unwrap()
}

fn lin(s: &str) -> LinearType {
    parse_linear(s).unwrap()
}

fn delta_i() -> Derivation {
    infer_via_trace(&Term::app(delta(), identity()), 10).unwrap().unwrap().derivation
}

#[test]
fn inferred_derivation_of_delta_i() {
    let d = delta_i();
    assert!(check(&d).is_ok());
    assert_eq!(d.size(), 5);
    assert_eq!(d.conclusion.to_string(), "⊢ (\\x. x x) \\z. z : [X0] -o X0");
    assert!(d.is_unitary_shrinking());
    let w2 = "[X0] -o X0";
    assert_eq!(d.premises[0].rhs_linear().unwrap(), &lin(&format!("[[{w2}] -o {w2}, {w2}] -o {w2}")));
    assert_eq!(d.premises[1].rhs_multi().unwrap(), &parse_multi(&format!("[[{w2}] -o {w2}, {w2}]")).unwrap());
}

#[test]
fn subject_reduction_follows_the_trace() {
    let d = delta_i();
    let d1 = reduce_derivation(&d, &Position::root()).unwrap();
    assert!(check(&d1).is_ok());
    assert_eq!(d1.size(), 3);
    assert_eq!(*d1.term(), t("(\\z. z) \\z. z"));
    let d2 = reduce_derivation(&d1, &Position::root()).unwrap();
    assert_eq!(d2.size(), 1);
    assert_eq!(*d2.term(), identity());
    assert_eq!((d2.ctx(), d2.rhs()), (d.ctx(), d.rhs()));
    let canonical = canonical_nf_derivation(&identity(), &mut TyVarSupply::default()).unwrap();
    assert!(d2.alpha_eq(&canonical));
}

#[test]
fn reduction_inside_an_empty_many_keeps_the_size() {
    let x_omega = Term::app(Term::var("x"), omega());
    let head = Derivation::ax("x", LinearType::arrow(MultiType::empty(), lin("X0")));
    let d = Derivation::app(head, Derivation::many(omega(), vec![]).unwrap()).unwrap();
    assert!(check(&d).is_ok());
    assert_eq!(*d.term(), x_omega);
    assert_eq!(d.size(), 1);
    assert!(!d.is_shrinking());
    let r = reduce_derivation(&d, &"r".parse().unwrap()).unwrap();
    assert_eq!(r.size(), 1);
    assert_eq!(*r.term(), x_omega);
}

#[test]
fn open_subject_example() {
    let inf = infer_via_trace(&t("y ((\\x. x) z)"), 10).unwrap().unwrap();
    let d = inf.derivation;
    assert!(check(&d).is_ok());
    assert_eq!(d.size(), 3);
    assert_eq!(d.ctx().to_string(), "y:[[X0] -o X1], z:[X0]");
    assert!(d.is_unitary_shrinking());
}

#[test]
fn expansion_inverts_reduction() {
    let d = delta_i();
    let d1 = reduce_derivation(&d, &Position::root()).unwrap();
    let back = expand_derivation(&d1, d.term(), &Position::root()).unwrap();
    assert!(check(&back).is_ok());
    assert!(back.alpha_eq(&d));
}

#[test]
fn split_and_lemma_are_inverse() {
    let u = identity();
    let s = t("x (x y)");
    let d = infer_via_trace(&s.subst("x", &u), 10).unwrap().unwrap().derivation;
    let target = d.clone();
    let (phi, bag) = split_substitution(&s, "x", &u, &target).unwrap();
    assert!(check(&phi).is_ok());
    assert_eq!(bag.len(), 2);
    assert_eq!(phi.ctx().get("x").len(), 2);
    let again = substitution_lemma(&phi, "x", &u, bag).unwrap();
    assert_eq!(again, target);
}

#[test]
fn lemma_rejects_wrong_bags() {
    let phi = Derivation::ax("x", lin("X0"));
    let wrong = canonical_nf_derivation(&identity(), &mut TyVarSupply::default()).unwrap();
    assert!(matches!(
        substitution_lemma(&phi, "x", &identity(), vec![wrong.clone()]),
        Err(DerivationError::BagMismatch(_))
    ));
    let fits = Derivation::lam("z", Derivation::ax("z", lin("X0"))).unwrap();
    let phi = Derivation::ax("x", fits.rhs_linear().unwrap().clone());
    assert!(matches!(
        substitution_lemma(&phi, "x", &identity(), vec![fits.clone(), fits]),
        Err(DerivationError::LeftoverBag(1))
    ));
}

#[test]
fn head_minimal_sizes() {
    let mut s = TyVarSupply::default();
    for (src, size) in [("\\x. \\y. x y y", 4), ("\\y. y y", 2), ("x", 0), ("\\x. x ((\\z. z z) \\z. z z)", 2)] {
        let d = head_minimal_derivation(&t(src), &mut s).unwrap();
        assert!(check(&d).is_ok(), "{src}");
        assert_eq!(d.size(), size, "{src}");
    }
    assert!(head_minimal_derivation(&omega(), &mut s).is_err());
}

#[test]
fn canonical_normal_derivations() {
    for src in ["\\x. x", "\\x. \\y. x y y", "x (\\y. y) z", "\\f. f (f x)"] {
        let f = t(src);
        let d = canonical_nf_derivation(&f, &mut TyVarSupply::default()).unwrap();
        assert!(check(&d).is_ok(), "{src}");
        assert_eq!(d.size(), f.inner_size(), "{src}");
        assert_eq!(d.judgment_size(), f.inner_size(), "{src}");
        assert!(d.is_unitary_shrinking(), "{src}");
    }
    let d = canonical_nf_derivation(&delta(), &mut TyVarSupply::default()).unwrap();
    assert_eq!(d.rhs().to_string(), "[X0, [X0] -o X1] -o X1");
    assert!(canonical_nf_derivation(&omega(), &mut TyVarSupply::default()).is_err());
}

#[test]
fn checker_reports_the_first_violation() {
    let mut d = delta_i();
    d.premises[1].premises[0].conclusion.rhs = Type::Linear(lin("X7"));
    let v = check(&d).unwrap_err();
    assert_eq!(v.path, vec![1]);
    assert_eq!(v.rule, Rule::Many);
    let mut d = delta_i();
    d.premises[0].premises[0].premises[0].conclusion.ctx = TypeContext::empty();
    let v = check(&d).unwrap_err();
    assert_eq!(v.path, vec![0, 0]);
}

#[test]
fn json_round_trip_keeps_validity() {
    let d = delta_i();
    let text = d.to_json();
    assert!(text.contains("\"rule\": \"app\""));
    let back = Derivation::from_json(&text).unwrap();
    assert_eq!(back, d);
    assert!(check(&back).is_ok());
}

#[test]
fn substitution_preserves_validity() {
    let d = canonical_nf_derivation(&t("\\x. x x"), &mut TyVarSupply::default()).unwrap();
    let s = TypeSubstitution::single(TyVar::x(0), lin("[X1] -o X1"));
    let ds = subst_derivation(&s, &d);
    assert!(check(&ds).is_ok());
    assert!(skeleton_eq(&d, &ds));
    assert_eq!(ds.rhs().to_string(), "[[X1] -o X1, [[X1] -o X1] -o X1] -o X1");
}

#[test]
fn membership_by_search() {
    let b = SearchBudget::default();
    let e = TypeContext::empty();
    let ty = |s: &str| Type::Linear(lin(s));
    let m = member(&e, &identity(), &ty("[X0] -o X0"), 10, b);
    assert!(m.holds());
    assert!(matches!(member(&e, &identity(), &ty("X0"), 10, b), Membership::Fails));
    assert!(matches!(member(&e, &identity(), &ty("[X0] -o X1"), 10, b), Membership::Fails));
    let w2 = "[X0] -o X0";
    let left = ty(&format!("[[{w2}] -o {w2}, {w2}] -o {w2}"));
    let m = member(&e, &delta(), &left, 10, b);
    assert!(check(m.witness().unwrap()).is_ok());
    assert!(member(&e, &delta(), &ty("[[Z0] -o Y0, Z0] -o Y0"), 10, b).holds());
    assert!(matches!(member(&e, &omega(), &ty("X0"), 20, b), Membership::Unknown(_)));
    let di = Term::app(delta(), identity());
    let m = member(&e, &di, &ty(w2), 10, b);
    assert_eq!(m.witness().unwrap().conclusion.term, di);
    assert!(check(m.witness().unwrap()).is_ok());
    let multi = Type::Multi(parse_multi("[[X0] -o X0, [X1] -o X1]").unwrap());
    let m = member(&e, &identity(), &multi, 10, b);
    assert_eq!(m.witness().unwrap().premises.len(), 2);
}

#[test]
fn search_splits_contexts() {
    let f = t("x y y");
    let ctx: TypeContext = serde_json::from_str(r#"[["x", [{"arrow": {"dom": [{"var": "X0"}, {"var": "X1"}], "cod": {"var": "X2"}}}]], ["y", [{"var": "X0"}, {"var": "X1"}]]]"#).unwrap();
    assert!(!derive(&ctx, &f, &lin("X2"), SearchBudget::default()).holds());
    let ctx: TypeContext = serde_json::from_str(r#"[["x", [{"arrow": {"dom": [{"var": "X0"}], "cod": {"arrow": {"dom": [{"var": "X1"}], "cod": {"var": "X2"}}}}}]], ["y", [{"var": "X0"}, {"var": "X1"}]]]"#).unwrap();
    let d = derive(&ctx, &f, &lin("X2"), SearchBudget::default());
    assert!(check(d.witness().unwrap()).is_ok());
    assert_eq!(d.witness().unwrap().ctx(), &ctx);
}

#[test]
fn leftmost_and_head_inference_sizes() {
    for src in ["(\\x. x x) \\z. z", "(\\x. \\y. x y y) \\z. z", "(\\x. \\y. y) ((\\x. x x) \\x. x x)"] {
        let term = t(src);
        if let Some(inf) = infer_via_trace(&term, 50).unwrap() {
            let nf = inf.trace.final_term().clone();
            assert_eq!(inf.derivation.size(), 2 * inf.trace.len() + nf.inner_size(), "{src}");
            assert!(check(&inf.derivation).is_ok());
        }
        let inf = infer_head_via_trace(&term, 50).unwrap().unwrap();
        let h = normalize(&term, Strategy::Head, 50);
        assert_eq!(inf.derivation.size(), 2 * h.len() + crate::syntax::head_size(h.final_term()).unwrap(), "{src}");
        assert!(check(&inf.derivation).is_ok());
    }
    assert!(infer_via_trace(&omega(), 30).unwrap().is_none());
}
