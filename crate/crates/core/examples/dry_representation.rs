//! Dry derivations of normal forms: fresh variables everywhere, and a
//! substitution back to the original.

use multibounds::derivation::canonical_nf_derivation;
use multibounds::dry::{check_dry, check_two_occurrence, dry_minimality, dry_of};
use multibounds::syntax::parse;
use multibounds::TyVarSupply;

fn main() {
    for src in ["\\x. x", "\\x. x x", "\\f. \\x. f (f x)", "\\x. \\y. y (x (\\z. z))"] {
        let t = parse(src).unwrap();
        let phi = canonical_nf_derivation(&t, &mut TyVarSupply::default()).unwrap();
        let (dry, sigma) = dry_of(&phi, &mut TyVarSupply::default()).unwrap();
        check_dry(&dry).unwrap();
        let m = dry_minimality(&dry);
        println!("{t}");
        println!("  original  {}", phi.conclusion);
        println!("  dry       {}", dry.conclusion);
        println!("  σ         {sigma}");
        println!("  size {} vs judgment {}, two-occurrence {}", m.size, m.judgment_size, check_two_occurrence(&dry).is_ok());
        assert!(dry.to_standard().subst(&sigma).alpha_eq(&phi));
    }
}
