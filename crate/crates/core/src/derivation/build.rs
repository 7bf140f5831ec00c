//! Synthesis of derivations for head normal forms and normal forms.

use std::collections::BTreeSet;

use super::{opening_name, Derivation, DerivationError};
use crate::syntax::{Hint, Term, Var};
use crate::types::{LinearType, MultiType, TyVarSupply};

/// Open the leading abstractions of `t` with fresh canonical names.
pub(crate) fn open_prefix(t: &Term) -> (Vec<(Hint, String)>, Term) {
    let mut binders = Vec::new();
    let mut cur = t.clone();
    while let Term::Abs(h, body) = &cur {
        let name = opening_name(&cur, &BTreeSet::new());
        let next = body.open(&name);
        binders.push((h.clone(), name));
        cur = next;
    }
    (binders, cur)
}

pub(crate) fn close_prefix(binders: Vec<(Hint, String)>, mut d: Derivation) -> Result<Derivation, DerivationError> {
    for (h, name) in binders.into_iter().rev() {
        d = Derivation::lam_with_hint(h, &name, d)?;
    }
    Ok(d)
}

/// Split a neutral spine `y t1 … tk` into its head name and arguments.
pub(crate) fn spine(t: &Term) -> Option<(String, Vec<Term>)> {
    let mut args = Vec::new();
    let mut cur = t;
    while let Term::App(f, a) = cur {
        args.push((**a).clone());
        cur = f;
    }
    match cur {
        Term::Var(Var::Free(y)) => {
            args.reverse();
            Some((y.clone(), args))
        }
        _ => None,
    }
}

/// For `h = λx1…xn.(y t1 … tk)`: the head variable gets `0 ⊸ … ⊸ 0 ⊸ X`
/// and every argument is typed by an empty `many`, so the size is `n + k`.
pub fn head_minimal_derivation(h: &Term, supply: &mut TyVarSupply) -> Result<Derivation, DerivationError> {
    if !h.is_head_normal() || !h.is_locally_closed() {
        return Err(DerivationError::NotHeadNormal(h.to_string()));
    }
    let (binders, body) = open_prefix(h);
    let (y, args) = spine(&body).ok_or_else(|| DerivationError::NotHeadNormal(h.to_string()))?;
    let x = LinearType::Var(supply.fresh());
    let head_ty = args.iter().fold(x, |acc, _| LinearType::arrow(MultiType::empty(), acc));
    let mut d = Derivation::ax(&y, head_ty);
    for a in args {
        d = Derivation::app(d, Derivation::many(a, Vec::new())?)?;
    }
    close_prefix(binders, d)
}

/// Unitary shrinking derivation of a normal form whose size equals both the
/// inner size of the subject and the size of its final judgment. Arguments
/// of neutral terms are typed once, left to right, before the fresh
/// variable of the application they occur in.
pub fn canonical_nf_derivation(f: &Term, supply: &mut TyVarSupply) -> Result<Derivation, DerivationError> {
    if !f.is_normal() || !f.is_locally_closed() {
        return Err(DerivationError::NotNormal(f.to_string()));
    }
    nf(f, supply)
}

fn nf(f: &Term, supply: &mut TyVarSupply) -> Result<Derivation, DerivationError> {
    if f.is_abs() {
        let (binders, body) = open_prefix(f);
        let d = nf(&body, supply)?;
        return close_prefix(binders, d);
    }
    let (y, args) = spine(f).ok_or_else(|| DerivationError::NotNormal(f.to_string()))?;
    let mut arg_ds = Vec::with_capacity(args.len());
    for a in &args {
        arg_ds.push(nf(a, supply)?);
    }
    let x = LinearType::Var(supply.fresh());
    let head_ty = arg_ds.iter().rev().fold(x, |acc, d| {
        LinearType::arrow(MultiType::singleton(d.rhs_linear().expect("linear").clone()), acc)
    });
    let mut d = Derivation::ax(&y, head_ty);
    for (a, ad) in args.into_iter().zip(arg_ds) {
        d = Derivation::app(d, Derivation::many(a, vec![ad])?)?;
    }
    Ok(d)
}
