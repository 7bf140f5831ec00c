//! Exhaustive checking of a statement over a bounded corpus.

use multibounds::semantics::{verify_theorem, TheoremId, VerifyConfig};

fn main() {
    let config = VerifyConfig { max_nodes: 6, fuel: 100, jobs: 4 };
    for id in [TheoremId::T6, TheoremId::T9, TheoremId::T19, TheoremId::T20] {
        println!("{}", verify_theorem(id, config));
    }
    let pairs = VerifyConfig { max_nodes: 4, ..config };
    let r = verify_theorem(TheoremId::T25, pairs);
    println!("{r}");
    for line in r.table().lines().take(8) {
        println!("{line}");
    }
}
