//! Moving a derivation along one β-step, forwards and backwards.

use multibounds::derivation::{check, expand_derivation, infer_via_trace, reduce_derivation};
use multibounds::reduction::normalize;
use multibounds::syntax::parse;
use multibounds::Strategy;

fn main() {
    let t = parse("(\\f. \\x. f (f x)) (\\y. y) (\\z. z)").unwrap();
    let trace = normalize(&t, Strategy::Leftmost, 20);
    let mut phi = infer_via_trace(trace.final_term(), 1).unwrap().unwrap().derivation;
    println!("{:<40} size {}", trace.final_term().to_string(), phi.size());
    for i in (0..trace.len()).rev() {
        let (source, pos) = (trace.source_of(i), &trace.steps[i].position);
        let expanded = expand_derivation(&phi, source, pos).unwrap();
        check(&expanded).unwrap();
        assert!(reduce_derivation(&expanded, pos).unwrap().alpha_eq(&phi));
        println!("{:<40} size {}", source.to_string(), expanded.size());
        phi = expanded;
    }
    println!("final judgment {}", phi.conclusion);
}
