//! The running example: the self-application δ applied to the identity.

use multibounds::derivation::{check, infer_via_trace};
use multibounds::semantics::{exact_pair, lax_bound_check, pair_from_application};
use multibounds::syntax::{delta, identity};
use multibounds::{Strategy, Term};

fn main() {
    let di = Term::app(delta(), identity());
    let inf = infer_via_trace(&di, 10).unwrap().expect("δI normalizes");
    let d = &inf.derivation;
    check(d).unwrap();
    println!("{}", d.pretty());
    println!(
        "steps {}, normal form {} of inner size {}, derivation size {}",
        inf.trace.len(),
        inf.trace.final_term(),
        inf.trace.final_term().inner_size(),
        d.size()
    );
    println!("unitary shrinking: {}", d.is_unitary_shrinking());

    let p = pair_from_application(&delta(), &identity(), 10).unwrap().unwrap();
    println!("\np = {p}\n|p| = {}", p.size());
    println!("{}", lax_bound_check(&delta(), &identity(), &p, 10, Strategy::Leftmost).unwrap());

    let e = exact_pair(&delta(), &identity(), 10, Strategy::Leftmost).unwrap();
    println!("\np' = {}", e.pair);
    if let Some(s) = &e.pair.witness {
        println!("σ = {s}\np'σ = {}", e.pair.substituted(s));
    }
    println!("{}", e.report);
}
