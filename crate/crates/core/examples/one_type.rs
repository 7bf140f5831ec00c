//! Normal forms typed with a single type variable, and tight sizes.

use multibounds::derivation::{canonical_nf_derivation, check};
use multibounds::dry::one_type_representation;
use multibounds::syntax::enumerate_terms;
use multibounds::TyVarSupply;

fn main() {
    let mut shown = 0;
    for f in enumerate_terms(6, true).filter(|t| t.is_normal()) {
        let phi = canonical_nf_derivation(&f, &mut TyVarSupply::default()).unwrap();
        let psi = one_type_representation(&phi).unwrap();
        check(&psi).unwrap();
        assert_eq!(psi.size(), psi.judgment_size());
        if shown < 12 {
            println!("{:<28} {}  (size {})", f.to_string(), psi.rhs(), psi.size());
            shown += 1;
        }
    }
}
