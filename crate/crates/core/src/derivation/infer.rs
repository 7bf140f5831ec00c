//! Derivations obtained by normalizing, typing the result and expanding back.

use super::build::{canonical_nf_derivation, head_minimal_derivation};
use super::subject::expand_derivation;
use super::{Derivation, DerivationError};
use crate::reduction::{normalize, ReductionTrace, Strategy};
use crate::syntax::Term;
use crate::types::TyVarSupply;

/// A derivation together with the evaluation it was expanded along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub derivation: Derivation,
    pub trace: ReductionTrace,
}

fn expand_back(mut d: Derivation, trace: &ReductionTrace) -> Result<Derivation, DerivationError> {
    for i in (0..trace.len()).rev() {
        d = expand_derivation(&d, trace.source_of(i), &trace.steps[i].position)?;
    }
    Ok(d)
}

/// Leftmost-normalize `t`; `None` when `fuel` runs out first. The derivation
/// has size `2·steps + |nf|` and the final judgment of the canonical normal
/// form derivation.
pub fn infer_via_trace(t: &Term, fuel: usize) -> Result<Option<Inference>, DerivationError> {
    infer_via_trace_with(t, fuel, &mut TyVarSupply::default())
}

pub fn infer_via_trace_with(
    t: &Term,
    fuel: usize,
    supply: &mut TyVarSupply,
) -> Result<Option<Inference>, DerivationError> {
    let trace = normalize(t, Strategy::Leftmost, fuel);
    if !trace.terminated() {
        return Ok(None);
    }
    let nf = canonical_nf_derivation(trace.final_term(), supply)?;
    let derivation = expand_back(nf, &trace)?;
    Ok(Some(Inference { derivation, trace }))
}

/// Head-normalize `t` and expand the minimal head derivation of the result;
/// the size is `2·steps + |hnf|_h`.
pub fn infer_head_via_trace(t: &Term, fuel: usize) -> Result<Option<Inference>, DerivationError> {
    infer_head_via_trace_with(t, fuel, &mut TyVarSupply::default())
}

pub fn infer_head_via_trace_with(
    t: &Term,
    fuel: usize,
    supply: &mut TyVarSupply,
) -> Result<Option<Inference>, DerivationError> {
    let trace = normalize(t, Strategy::Head, fuel);
    if !trace.terminated() {
        return Ok(None);
    }
    let hd = head_minimal_derivation(trace.final_term(), supply)?;
    let derivation = expand_back(hd, &trace)?;
    Ok(Some(Inference { derivation, trace }))
}
