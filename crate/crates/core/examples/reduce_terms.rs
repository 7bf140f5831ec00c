//! Head and leftmost reduction of a few classic terms.

use multibounds::reduction::normalize;
use multibounds::syntax::{classify, parse};
use multibounds::Strategy;

fn main() {
    for src in ["(\\x. x x) (\\y. y)", "(\\x. \\y. x y y) (\\z. z)", "\\a. (\\x. x) ((\\y. y) a)", "(\\x. x x) (\\x. x x)"] {
        let t = parse(src).unwrap();
        println!("{t}");
        for strategy in [Strategy::Head, Strategy::Leftmost] {
            let trace = normalize(&t, strategy, 3);
            println!("  {strategy:?}: {} after {} steps", trace.outcome.label(), trace.len());
            for step in &trace.steps {
                println!("    @ {:<6} {}", step.position.to_string(), step.term);
            }
            let f = trace.final_term();
            let class = classify(f);
            if class.is_normal {
                println!("    inner size {}", f.inner_size());
            } else if let Some(h) = class.head {
                println!("    head size {}", h.head_size());
            }
        }
    }
}
