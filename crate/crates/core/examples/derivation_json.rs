//! Derivations as JSON: write, read back, check and compose.

use multibounds::derivation::{check, infer_via_trace, member, SearchBudget};
use multibounds::semantics::{compose, pair_from_application};
use multibounds::syntax::{delta, identity};
use multibounds::{Derivation, Type, TypeContext};

fn main() {
    let f = infer_via_trace(&delta(), 10).unwrap().unwrap().derivation;
    let text = f.to_json();
    println!("{text}");
    let back = Derivation::from_json(&text).unwrap();
    assert!(back.alpha_eq(&f));
    check(&back).unwrap();

    let broken = text.replacen("X0", "X9", 1);
    match Derivation::from_json(&broken).map(|d| check(&d)) {
        Ok(Err(v)) => println!("tampered derivation rejected: {v}"),
        other => println!("tampered derivation: {other:?}"),
    }

    let i = infer_via_trace(&identity(), 10).unwrap().unwrap().derivation;
    if let Err(e) = compose(&f, &i) {
        println!("δ and I as inferred: {e}");
    }

    let p = pair_from_application(&delta(), &identity(), 10).unwrap().unwrap();
    let (empty, budget) = (TypeContext::empty(), SearchBudget::default());
    let left = member(&empty, &delta(), &Type::Linear(p.left.clone()), 10, budget);
    let right = member(&empty, &identity(), &Type::Multi(p.right.clone()), 10, budget);
    let joined = compose(left.witness().unwrap(), right.witness().unwrap()).unwrap();
    check(&joined).unwrap();
    println!("through the pair: {} (size {})", joined.conclusion, joined.size());
}
