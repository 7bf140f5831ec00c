#![allow(dead_code)]

use multibounds::Term;
use rand::Rng;

/// A random closed term with at most `budget` nodes, biased towards
/// redexes whose argument is an abstraction.
pub fn random_closed<R: Rng>(rng: &mut R, budget: usize) -> Term {
    gen(rng, budget.max(2), &mut Vec::new())
}

fn gen<R: Rng>(rng: &mut R, budget: usize, scope: &mut Vec<String>) -> Term {
    let can_var = !scope.is_empty();
    let pick = match (budget, can_var) {
        (0 | 1, _) => 0,
        (2, true) => rng.gen_range(0..2),
        (_, true) => rng.gen_range(0..6),
        (2 | 3, false) => 1,
        (_, false) => 1 + 2 * rng.gen_range(0..2),
    };
    match pick {
        0 if can_var => Term::var(scope[rng.gen_range(0..scope.len())].clone()),
        0 | 1 | 2 => {
            let name = format!("v{}", scope.len());
            scope.push(name.clone());
            let body = gen(rng, budget - 1, scope);
            scope.pop();
            Term::lam(&name, body)
        }
        _ => {
            let left = rng.gen_range(1..budget - 1);
            let f = if rng.gen_bool(0.5) {
                let name = format!("v{}", scope.len());
                scope.push(name.clone());
                let body = gen(rng, left.max(2) - 1, scope);
                scope.pop();
                Term::lam(&name, body)
            } else {
                gen(rng, left, scope)
            };
            let a = gen(rng, budget - 1 - left, scope);
            Term::app(f, a)
        }
    }
}
