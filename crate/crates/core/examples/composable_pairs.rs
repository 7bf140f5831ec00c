//! Building and testing composable pairs for applications of normal forms.

use multibounds::semantics::{is_composable_pair, lax_bound_check, pair_from_application, ComposablePair, PairKind};
use multibounds::syntax::parse;
use multibounds::types::{parse_linear, parse_multi};
use multibounds::Strategy;

fn main() {
    let cases = [("\\x. x x", "\\y. y"), ("\\x. x", "\\y. y"), ("\\f. \\x. f (f x)", "\\y. y"), ("\\x. \\y. y x", "\\z. z")];
    for (a, b) in cases {
        let (f, g) = (parse(a).unwrap(), parse(b).unwrap());
        let Some(p) = pair_from_application(&f, &g, 40).unwrap() else {
            println!("{f} on {g}: no pair");
            continue;
        };
        let r = lax_bound_check(&f, &g, &p, 40, Strategy::Leftmost).unwrap();
        println!("{f} on {g}\n  p = {p}\n  {r}");
    }

    let f = parse("\\x. x x").unwrap();
    let g = parse("\\y. y").unwrap();
    let minimal = ComposablePair::new(
        parse_linear("[[X0] -o X0, X0] -o X0").unwrap(),
        parse_multi("[[X1] -o X1]").unwrap(),
        PairKind::Shrinking,
    );
    println!("\nminimal types {minimal}: {:?}", is_composable_pair(&minimal, &f, &g, 10).unwrap());
}
