//! Composable pairs of types and the bounds they give on the evaluation of
//! an application of two closed terms.

mod verify;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{
    infer_head_via_trace, infer_via_trace, member, Derivation, DerivationError, Membership, SearchBudget,
};
use crate::dry::{dry_of, one_type_representation, DryError};
use crate::reduction::{normalize, Strategy};
use crate::syntax::{head_size, Term};
use crate::types::{LinearType, MultiType, Type, TypeContext, TypeSubstitution, TyVarSupply};

pub use verify::{corpus_for, verify_corpus, verify_theorem, Entry, Subject, TheoremId, TheoremReport, VerifyConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("{0} is open; close it by abstracting its free variables (for instance \\x. t)")]
    Open(String),
    #[error("{0} is not a normal form")]
    NotNormal(String),
    #[error("type mismatch: {0}")]
    Mismatch(String),
    #[error("membership not established: {0}")]
    Membership(String),
    #[error("no result within {0} steps")]
    Fuel(usize),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Dry(#[from] DryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// The composed type must be right.
    Shrinking,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposablePair {
    pub left: LinearType,
    pub right: MultiType,
    pub kind: PairKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TypeSubstitution>,
}

impl ComposablePair {
    pub fn new(left: LinearType, right: MultiType, kind: PairKind) -> Self {
        ComposablePair { left, right, kind, witness: None }
    }

    pub fn with_witness(mut self, s: TypeSubstitution) -> Self {
        self.witness = Some(s);
        self
    }

    /// `|L| + |M|`
    pub fn size(&self) -> usize {
        self.left.size() + self.right.size()
    }

    /// `(Lσ, Mσ)`, without a witness.
    pub fn substituted(&self, s: &TypeSubstitution) -> ComposablePair {
        ComposablePair::new(s.linear(&self.left), s.multi(&self.right), self.kind)
    }

    /// The shape clause of the definition: `L = M ⊸ L'`, and `L'` right for
    /// the shrinking kind.
    pub fn shape_ok(&self) -> Result<(), String> {
        let Some((dom, cod)) = self.left.as_arrow() else {
            return Err(format!("{} is not an arrow", self.left));
        };
        if *dom != self.right {
            return Err(format!("domain {dom} differs from {}", self.right));
        }
        if self.kind == PairKind::Shrinking && !cod.is_right() {
            return Err(format!("{cod} is not right"));
        }
        Ok(())
    }
}

impl fmt::Display for ComposablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No(String),
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Lax,
    Exact,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lax => "<=",
            Relation::Exact => "=",
        })
    }
}

/// Measured `2|d| + result_size` against `|L| + |M| + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub subjects: [String; 2],
    pub mode: Strategy,
    pub steps: usize,
    pub result_size: usize,
    pub pair_size: usize,
    pub relation: Relation,
    pub theorem: String,
    #[serde(rename = "pass")]
    pub holds: bool,
}

impl BoundReport {
    /// `2|d| + result_size`
    pub fn measure(&self) -> usize {
        2 * self.steps + self.result_size
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: 2*{} + {} = {} {} {} [{}]",
            self.theorem,
            self.steps,
            self.result_size,
            self.measure(),
            self.relation,
            self.pair_size,
            if self.holds { "pass" } else { "FAIL" }
        )
    }
}

fn closed(t: &Term) -> Result<(), SemanticsError> {
    if t.is_closed() {
        Ok(())
    } else {
        Err(SemanticsError::Open(t.to_string()))
    }
}

fn normal(t: &Term) -> Result<(), SemanticsError> {
    closed(t)?;
    if t.is_normal() {
        Ok(())
    } else {
        Err(SemanticsError::NotNormal(t.to_string()))
    }
}

/// Join `⊢ t : M ⊸ L'` and `⊢ u : M` into `⊢ t u : L'`.
pub fn compose(phi_t: &Derivation, phi_u: &Derivation) -> Result<Derivation, SemanticsError> {
    closed(phi_t.term())?;
    closed(phi_u.term())?;
    Derivation::app(phi_t.clone(), phi_u.clone()).map_err(|e| SemanticsError::Mismatch(e.to_string()))
}

fn verdict(m: Membership, what: &str) -> Verdict {
    match m {
        Membership::Holds(_) => Verdict::Yes,
        Membership::Fails => Verdict::No(format!("{what} has no derivation")),
        Membership::Unknown(why) => Verdict::Unknown(format!("{what}: {why}")),
    }
}

/// Plain check of the definition: the shape first, then constructive
/// membership of `L` in the semantics of `t` and of `M` in that of `u`.
/// A witness, when present, is applied first.
pub fn is_composable_pair(p: &ComposablePair, t: &Term, u: &Term, fuel: usize) -> Result<Verdict, SemanticsError> {
    closed(t)?;
    closed(u)?;
    let p = match &p.witness {
        Some(s) => p.substituted(s),
        None => p.clone(),
    };
    if let Err(why) = p.shape_ok() {
        return Ok(Verdict::No(why));
    }
    let budget = SearchBudget::default();
    let e = TypeContext::empty();
    let left = verdict(member(&e, t, &Type::Linear(p.left.clone()), fuel, budget), &format!("{t} : {}", p.left));
    if !left.is_yes() {
        return Ok(left);
    }
    Ok(verdict(member(&e, u, &Type::Multi(p.right.clone()), fuel, budget), &format!("{u} : {}", p.right)))
}

/// Whether `(Lσ, Mσ)` is composable for `t` and `u`. Any witness carried by
/// `p` is ignored in favour of `s`.
pub fn is_composable_up_to_subst(
    p: &ComposablePair,
    s: &TypeSubstitution,
    t: &Term,
    u: &Term,
    fuel: usize,
) -> Result<Verdict, SemanticsError> {
    let mut q = p.clone();
    q.witness = Some(s.clone());
    is_composable_pair(&q, t, u, fuel)
}

fn pair_of_root(d: &Derivation, kind: PairKind) -> Option<ComposablePair> {
    let [l, r] = d.premises.as_slice() else { return None };
    Some(ComposablePair::new(l.rhs_linear()?.clone(), r.rhs_multi()?.clone(), kind))
}

/// The pair read off the root of the inferred derivation of `t u`, when
/// `t u` normalizes within `fuel`.
pub fn pair_from_application(t: &Term, u: &Term, fuel: usize) -> Result<Option<ComposablePair>, SemanticsError> {
    closed(t)?;
    closed(u)?;
    Ok(infer_via_trace(&Term::app(t.clone(), u.clone()), fuel)?
        .and_then(|inf| pair_of_root(&inf.derivation, PairKind::Shrinking)))
}

/// Head variant: plain pair from the head derivation of `t u`.
pub fn pair_from_head_application(t: &Term, u: &Term, fuel: usize) -> Result<Option<ComposablePair>, SemanticsError> {
    closed(t)?;
    closed(u)?;
    Ok(infer_head_via_trace(&Term::app(t.clone(), u.clone()), fuel)?
        .and_then(|inf| pair_of_root(&inf.derivation, PairKind::Plain)))
}

fn measured(f: &Term, g: &Term, mode: Strategy, fuel: usize) -> Result<(usize, usize), SemanticsError> {
    let trace = normalize(&Term::app(f.clone(), g.clone()), mode, fuel);
    if !trace.terminated() {
        return Err(SemanticsError::Fuel(fuel));
    }
    let size = match mode {
        Strategy::Leftmost => trace.final_term().inner_size(),
        Strategy::Head => head_size(trace.final_term()).expect("head normal"),
    };
    Ok((trace.len(), size))
}

/// Check `2|d| + size ≤ |L| + |M| + 1` for a pair whose membership is
/// established first.
pub fn lax_bound_check(
    f: &Term,
    g: &Term,
    p: &ComposablePair,
    fuel: usize,
    mode: Strategy,
) -> Result<BoundReport, SemanticsError> {
    normal(f)?;
    normal(g)?;
    let mut checked = p.clone();
    checked.kind = match mode {
        Strategy::Leftmost => PairKind::Shrinking,
        Strategy::Head => PairKind::Plain,
    };
    match is_composable_pair(&checked, f, g, fuel)? {
        Verdict::Yes => {}
        Verdict::No(why) | Verdict::Unknown(why) => return Err(SemanticsError::Membership(why)),
    }
    let (steps, result_size) = measured(f, g, mode, fuel)?;
    let pair_size = p.size() + 1;
    let theorem = match (mode, p.witness.is_some()) {
        (Strategy::Leftmost, false) => "T24.1",
        (Strategy::Leftmost, true) => "T24.2",
        (Strategy::Head, false) => "T27.1",
        (Strategy::Head, true) => "T27.2",
    };
    Ok(BoundReport {
        subjects: [f.to_string(), g.to_string()],
        mode,
        steps,
        result_size,
        pair_size,
        relation: Relation::Lax,
        theorem: theorem.into(),
        holds: 2 * steps + result_size <= pair_size,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactPair {
    pub pair: ComposablePair,
    pub report: BoundReport,
}

/// Types of minimal size for `f` and `g` whose pair measures `f g` exactly.
/// Leftmost mode dries the root premises of the unitary shrinking
/// derivation and keeps the witness; head mode uses the 1-type
/// representation of the premises of the head derivation and has none.
pub fn exact_pair(f: &Term, g: &Term, fuel: usize, mode: Strategy) -> Result<ExactPair, SemanticsError> {
    normal(f)?;
    normal(g)?;
    let fg = Term::app(f.clone(), g.clone());
    let (pair, steps, result_size) = match mode {
        Strategy::Leftmost => {
            let inf = infer_via_trace(&fg, fuel)?.ok_or(SemanticsError::Fuel(fuel))?;
            let [l, r] = inf.derivation.premises.as_slice() else { unreachable!("root of an application") };
            let mut supply = TyVarSupply::default();
            let (dl, sl) = dry_of(l, &mut supply)?;
            let (dr, sr) = dry_of(r, &mut supply)?;
            let s = sl.disjoint_union(&sr).expect("threaded supply keeps supports apart");
            let pair = ComposablePair::new(
                dl.rhs_linear().expect("linear").clone(),
                dr.rhs_multi().expect("multi").clone(),
                PairKind::Shrinking,
            )
            .with_witness(s);
            (pair, inf.trace.len(), inf.trace.final_term().inner_size())
        }
        Strategy::Head => {
            let inf = infer_head_via_trace(&fg, fuel)?.ok_or(SemanticsError::Fuel(fuel))?;
            let [l, r] = inf.derivation.premises.as_slice() else { unreachable!("root of an application") };
            let ol = one_type_representation(l)?;
            let or = one_type_representation(r)?;
            let pair = ComposablePair::new(
                ol.rhs_linear().expect("linear").clone(),
                or.rhs_multi().expect("multi").clone(),
                PairKind::Plain,
            );
            let h = head_size(inf.trace.final_term()).expect("head normal");
            (pair, inf.trace.len(), h)
        }
    };
    let pair_size = pair.size() + 1;
    let report = BoundReport {
        subjects: [f.to_string(), g.to_string()],
        mode,
        steps,
        result_size,
        pair_size,
        relation: Relation::Exact,
        theorem: match mode {
            Strategy::Leftmost => "T25".into(),
            Strategy::Head => "T28".into(),
        },
        holds: 2 * steps + result_size == pair_size,
    };
    Ok(ExactPair { pair, report })
}

#[cfg(test)]
mod tests;
