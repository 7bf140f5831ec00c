//! Head reduction, the head measure and the head exact pair.

use multibounds::derivation::infer_head_via_trace;
use multibounds::semantics::{exact_pair, lax_bound_check, pair_from_head_application};
use multibounds::syntax::{head_size, parse};
use multibounds::Strategy;

fn main() {
    for src in ["(\\x. \\y. x y y) (\\z. z)", "(\\x. x (\\w. w) ((\\a. a a) (\\a. a a))) (\\u. \\v. u)"] {
        let t = parse(src).unwrap();
        let inf = infer_head_via_trace(&t, 40).unwrap().expect("head normalizes");
        let h = inf.trace.final_term();
        println!("{t}\n  {} head steps to {h}, head size {}", inf.trace.len(), head_size(h).unwrap());
        println!("  derivation size {} (= 2 * steps + head size)", inf.derivation.size());
    }

    let f = parse("\\x. \\y. x y y").unwrap();
    let g = parse("\\z. z").unwrap();
    let e = exact_pair(&f, &g, 40, Strategy::Head).unwrap();
    println!("\nexact head pair {}\n  {}", e.pair, e.report);
    let p = pair_from_head_application(&f, &g, 40).unwrap().unwrap();
    println!("lax head pair {p}\n  {}", lax_bound_check(&f, &g, &p, 40, Strategy::Head).unwrap());
}
