//! Dry derivations for normal forms: minimal typings from which every
//! ordinary derivation is obtained by a type substitution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{match_open, opening_name, Derivation, DerivationError, Judgment, Rule, Skeleton, Violation};
use crate::syntax::{Term, Var};
use crate::types::{LinearType, MultiType, Type, TypeContext, TypeSubstitution, TyVar, TyVarSupply};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DryError {
    #[error("subject is not normal: {0}")]
    NotNormal(String),
    #[error("subject is not neutral: {0}")]
    NotNeutral(String),
    #[error("{0} is not a 1-type")]
    NotOneType(String),
    #[error("renaming is not injective: {0} and {1} both go to {2}")]
    NonInjective(TyVar, TyVar, TyVar),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// A derivation in the dry system. `support` is the set of type variables
/// occurring anywhere in the subtree, including variables consumed by
/// `app*` nodes below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DryDerivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<DryDerivation>,
    pub support: BTreeSet<TyVar>,
}

impl DryDerivation {
    fn ax(x: &str, v: TyVar) -> DryDerivation {
        let d = Derivation::ax(x, LinearType::Var(v));
        DryDerivation { rule: Rule::Ax, conclusion: d.conclusion, premises: Vec::new(), support: [v].into() }
    }

    fn lam(hint: crate::syntax::Hint, name: &str, premise: DryDerivation) -> DryDerivation {
        let l = premise.rhs_linear().expect("lam* premise is linear").clone();
        let (ctx, m) = premise.conclusion.ctx.split_off(name);
        let term = Term::Abs(hint, Box::new(premise.conclusion.term.close(name)));
        DryDerivation {
            rule: Rule::Lam,
            conclusion: Judgment { ctx, term, rhs: Type::Linear(LinearType::arrow(m, l)) },
            support: premise.support.clone(),
            premises: vec![premise],
        }
    }

    fn app(left: DryDerivation, right: DryDerivation, y: TyVar) -> DryDerivation {
        let x = left.rhs_linear().and_then(LinearType::as_var).expect("app* left premise concludes a variable");
        let m = right.rhs_multi().expect("app* right premise is multi").clone();
        let grow = TypeSubstitution::single(x, LinearType::arrow(m, LinearType::Var(y)));
        let ctx = grow.context(left.ctx()).sum(right.ctx());
        let term = Term::app(left.conclusion.term.clone(), right.conclusion.term.clone());
        let mut support: BTreeSet<TyVar> = left.support.union(&right.support).copied().collect();
        support.insert(y);
        DryDerivation {
            rule: Rule::App,
            conclusion: Judgment { ctx, term, rhs: Type::Linear(LinearType::Var(y)) },
            premises: vec![left, right],
            support,
        }
    }

    fn many(term: Term, premises: Vec<DryDerivation>) -> DryDerivation {
        let items = premises.iter().map(|p| p.rhs_linear().expect("many* premises are linear").clone()).collect();
        let ctx = TypeContext::sum_all(premises.iter().map(|p| &p.conclusion.ctx));
        let support = premises.iter().flat_map(|p| p.support.iter().copied()).collect();
        DryDerivation { rule: Rule::Many, conclusion: Judgment { ctx, term, rhs: Type::Multi(MultiType::new(items)) }, premises, support }
    }

    pub fn term(&self) -> &Term {
        &self.conclusion.term
    }

    pub fn ctx(&self) -> &TypeContext {
        &self.conclusion.ctx
    }

    pub fn rhs(&self) -> &Type {
        &self.conclusion.rhs
    }

    pub fn rhs_linear(&self) -> Option<&LinearType> {
        self.conclusion.rhs.as_linear()
    }

    pub fn rhs_multi(&self) -> Option<&MultiType> {
        self.conclusion.rhs.as_multi()
    }

    pub fn size(&self) -> usize {
        let own = matches!(self.rule, Rule::Lam | Rule::App) as usize;
        own + self.premises.iter().map(DryDerivation::size).sum::<usize>()
    }

    /// Type variables of the final judgment.
    pub fn final_support(&self) -> BTreeSet<TyVar> {
        self.conclusion.tyvars()
    }

    pub fn skeleton(&self) -> Skeleton {
        match self.rule {
            Rule::Ax => Skeleton::Ax,
            Rule::Lam => Skeleton::Lam(Box::new(self.premises[0].skeleton())),
            Rule::App => Skeleton::App(Box::new(self.premises[0].skeleton()), Box::new(self.premises[1].skeleton())),
            Rule::Many => {
                let mut v: Vec<Skeleton> = self.premises.iter().map(DryDerivation::skeleton).collect();
                v.sort();
                Skeleton::Many(v)
            }
        }
    }

    /// The standard derivation with the same conclusion: each `app*` left
    /// premise gets its on-the-fly substitution applied.
    pub fn to_standard(&self) -> Derivation {
        match self.rule {
            Rule::Ax => Derivation { rule: Rule::Ax, conclusion: self.conclusion.clone(), premises: Vec::new() },
            Rule::App => {
                let left = &self.premises[0];
                let right = &self.premises[1];
                let x = left.rhs_linear().and_then(LinearType::as_var).expect("app* left premise concludes a variable");
                let y = self.rhs_linear().expect("app* is linear").clone();
                let m = right.rhs_multi().expect("app* right premise is multi").clone();
                let grow = TypeSubstitution::single(x, LinearType::arrow(m, y));
                Derivation {
                    rule: Rule::App,
                    conclusion: self.conclusion.clone(),
                    premises: vec![left.to_standard().subst(&grow), right.to_standard()],
                }
            }
            _ => Derivation {
                rule: self.rule,
                conclusion: self.conclusion.clone(),
                premises: self.premises.iter().map(DryDerivation::to_standard).collect(),
            },
        }
    }

    fn map_vars(&self, s: &TypeSubstitution, f: &impl Fn(TyVar) -> TyVar) -> DryDerivation {
        DryDerivation {
            rule: self.rule,
            conclusion: Judgment { ctx: s.context(self.ctx()), term: self.term().clone(), rhs: s.ty(self.rhs()) },
            premises: self.premises.iter().map(|p| p.map_vars(s, f)).collect(),
            support: self.support.iter().map(|v| f(*v)).collect(),
        }
    }
}

impl fmt::Display for DryDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &DryDerivation, indent: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}{}* {}", "", d.rule, d.conclusion, indent = indent * 2)?;
            d.premises.iter().try_for_each(|p| go(p, indent + 1, f))
        }
        go(self, 0, f)
    }
}

#[derive(Serialize)]
struct DryJson<'a> {
    rule: String,
    ctx: &'a TypeContext,
    term: String,
    rhs: &'a Type,
    support: &'a BTreeSet<TyVar>,
    premises: Vec<DryJson<'a>>,
}

impl<'a> From<&'a DryDerivation> for DryJson<'a> {
    fn from(d: &'a DryDerivation) -> Self {
        DryJson {
            rule: format!("{}*", d.rule),
            ctx: d.ctx(),
            term: d.term().to_string(),
            rhs: d.rhs(),
            support: &d.support,
            premises: d.premises.iter().map(DryJson::from).collect(),
        }
    }
}

impl Serialize for DryDerivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DryJson::from(self).serialize(s)
    }
}

struct DryChecker {
    path: Vec<usize>,
}

impl DryChecker {
    fn fail(&self, rule: Rule, clause: impl Into<String>) -> Violation {
        Violation { path: self.path.clone(), rule, clause: clause.into() }
    }

    fn node(&mut self, d: &DryDerivation) -> Result<(), Violation> {
        let r = d.rule;
        let j = &d.conclusion;
        if !j.term.is_locally_closed() || !j.term.is_normal() {
            return Err(self.fail(r, "dry subjects must be normal forms"));
        }
        let mut expected: BTreeSet<TyVar> = j.tyvars();
        for p in &d.premises {
            expected.extend(p.support.iter().copied());
        }
        if d.support != expected {
            return Err(self.fail(r, "recorded support differs from the variables of the subtree"));
        }
        match r {
            Rule::Ax => {
                let Term::Var(Var::Free(x)) = &j.term else {
                    return Err(self.fail(r, "ax* subject must be a variable"));
                };
                let Some(v) = j.rhs.as_linear().and_then(LinearType::as_var) else {
                    return Err(self.fail(r, "ax* concludes a type variable"));
                };
                if !d.premises.is_empty() || j.ctx != TypeContext::singleton(x.clone(), MultiType::singleton(LinearType::Var(v))) {
                    return Err(self.fail(r, format!("ax* must conclude {x}:[{v}] ⊢ {x} : {v}")));
                }
            }
            Rule::Lam => {
                let [p] = d.premises.as_slice() else {
                    return Err(self.fail(r, "lam* has exactly one premise"));
                };
                let Term::Abs(_, body) = &j.term else {
                    return Err(self.fail(r, "lam* subject must be an abstraction"));
                };
                let Some(pl) = p.rhs_linear() else {
                    return Err(self.fail(r, "lam* premise must have a linear type"));
                };
                let Ok(name) = match_open(body, p.term()) else {
                    return Err(self.fail(r, "premise subject is not the opened body"));
                };
                let (ctx, m) = match &name {
                    Some(y) if j.term.has_free(y) => {
                        return Err(self.fail(r, format!("opened name {y} is free in the abstraction")))
                    }
                    Some(y) => p.ctx().split_off(y),
                    None => (p.ctx().clone(), MultiType::empty()),
                };
                if j.ctx != ctx || j.rhs != Type::Linear(LinearType::arrow(m, pl.clone())) {
                    return Err(self.fail(r, "lam* must conclude Γ \\ x ⊢ λx.f : Γ(x) -o L"));
                }
            }
            Rule::App => {
                let [pl, pr] = d.premises.as_slice() else {
                    return Err(self.fail(r, "app* has exactly two premises"));
                };
                let Term::App(n, f) = &j.term else {
                    return Err(self.fail(r, "app* subject must be an application"));
                };
                if pl.term() != &**n || pr.term() != &**f {
                    return Err(self.fail(r, "premise subjects must be the function and the argument"));
                }
                let Some(x) = pl.rhs_linear().and_then(LinearType::as_var) else {
                    return Err(self.fail(r, "left premise of app* must conclude a type variable"));
                };
                let Some(m) = pr.rhs_multi() else {
                    return Err(self.fail(r, "right premise of app* must have a multi type"));
                };
                let Some(y) = j.rhs.as_linear().and_then(LinearType::as_var) else {
                    return Err(self.fail(r, "app* concludes a type variable"));
                };
                if pl.support.contains(&y) || pr.support.contains(&y) {
                    return Err(self.fail(r, format!("{y} is not fresh")));
                }
                if let Some(v) = pl.support.intersection(&pr.support).next() {
                    return Err(self.fail(r, format!("premise supports share {v}")));
                }
                let grow = TypeSubstitution::single(x, LinearType::arrow(m.clone(), LinearType::Var(y)));
                if j.ctx != grow.context(pl.ctx()).sum(pr.ctx()) {
                    return Err(self.fail(r, "context must be Γ{X <- M -o Y} ⊎ Δ"));
                }
            }
            Rule::Many => {
                for (i, p) in d.premises.iter().enumerate() {
                    if p.term() != &j.term || p.rhs_linear().is_none() {
                        return Err(self.fail(r, "many* premises must share the subject and have linear types"));
                    }
                    for q in &d.premises[i + 1..] {
                        if let Some(v) = p.support.intersection(&q.support).next() {
                            return Err(self.fail(r, format!("premise supports share {v}")));
                        }
                    }
                }
                let items = d.premises.iter().filter_map(|p| p.rhs_linear().cloned()).collect();
                if j.rhs != Type::Multi(MultiType::new(items)) || j.ctx != TypeContext::sum_all(d.premises.iter().map(|p| p.ctx())) {
                    return Err(self.fail(r, "many* must conclude the sums of its premises"));
                }
            }
        }
        for (i, p) in d.premises.iter().enumerate() {
            self.path.push(i);
            self.node(p)?;
            self.path.pop();
        }
        Ok(())
    }
}

/// Check every node against the dry rules, including freshness and
/// disjointness of supports.
pub fn check_dry(d: &DryDerivation) -> Result<(), Violation> {
    DryChecker { path: Vec::new() }.node(d)
}

/// Dry representation of a derivation of a normal form together with the
/// substitution turning it back into the input. Fresh variables are drawn
/// from `supply` in pre-order, left premise before right.
pub fn dry_of(phi: &Derivation, supply: &mut TyVarSupply) -> Result<(DryDerivation, TypeSubstitution), DryError> {
    if !phi.term().is_normal() {
        return Err(DryError::NotNormal(phi.term().to_string()));
    }
    dry(phi, supply)
}

fn dry(phi: &Derivation, supply: &mut TyVarSupply) -> Result<(DryDerivation, TypeSubstitution), DryError> {
    match phi.rule {
        Rule::Ax => {
            let Term::Var(Var::Free(x)) = phi.term() else {
                return Err(DerivationError::IllFormed("ax on a non-variable".into()).into());
            };
            let l = phi.rhs_linear().ok_or_else(|| DerivationError::IllFormed("ax with a multi type".into()))?;
            let v = supply.fresh();
            Ok((DryDerivation::ax(x, v), TypeSubstitution::single(v, l.clone())))
        }
        Rule::Lam => {
            let Term::Abs(h, _) = phi.term() else {
                return Err(DerivationError::IllFormed("lam on a non-abstraction".into()).into());
            };
            let premise = phi.premises.first().ok_or_else(|| DerivationError::IllFormed("lam without premise".into()))?;
            let (p, s) = dry(premise, supply)?;
            let name = phi.opened_name().unwrap_or_else(|| opening_name(phi.term(), &BTreeSet::new()));
            Ok((DryDerivation::lam(h.clone(), &name, p), s))
        }
        Rule::App => {
            let [pl, pr] = phi.premises.as_slice() else {
                return Err(DerivationError::IllFormed("app needs two premises".into()).into());
            };
            let (dl, mut sl) = dry(pl, supply)?;
            let (dr, sr) = dry(pr, supply)?;
            let x = dl.rhs_linear().and_then(LinearType::as_var).ok_or_else(|| DryError::NotNeutral(pl.term().to_string()))?;
            let y = supply.fresh();
            sl.remove(&x);
            let mut s = sl.disjoint_union(&sr).expect("threaded supply keeps supports apart");
            s.insert(y, phi.rhs_linear().expect("app is linear").clone());
            Ok((DryDerivation::app(dl, dr, y), s))
        }
        Rule::Many => {
            let mut ps = Vec::with_capacity(phi.premises.len());
            let mut s = TypeSubstitution::identity();
            for p in &phi.premises {
                let (d, sp) = dry(p, supply)?;
                s = s.disjoint_union(&sp).expect("threaded supply keeps supports apart");
                ps.push(d);
            }
            Ok((DryDerivation::many(phi.term().clone(), ps), s))
        }
    }
}

/// Rename type variables; variables outside `map` are kept. Fails when two
/// variables of the support end up with the same name.
pub fn rename_dry(d: &DryDerivation, map: &BTreeMap<TyVar, TyVar>) -> Result<DryDerivation, DryError> {
    let f = |v: TyVar| map.get(&v).copied().unwrap_or(v);
    let mut seen: BTreeMap<TyVar, TyVar> = BTreeMap::new();
    for v in &d.support {
        if let Some(prev) = seen.insert(f(*v), *v) {
            return Err(DryError::NonInjective(prev, *v, f(*v)));
        }
    }
    let s = TypeSubstitution::from_pairs(map.iter().map(|(a, b)| (*a, LinearType::Var(*b))));
    Ok(d.map_vars(&s, &f))
}

/// Every variable of the final judgment occurs exactly twice in it; the
/// first one that does not is returned.
pub fn check_two_occurrence(d: &DryDerivation) -> Result<(), TyVar> {
    let mut counts = BTreeMap::new();
    d.ctx().count_occurrences(&mut counts);
    d.rhs().count_occurrences(&mut counts);
    match counts.into_iter().find(|(_, n)| *n != 2) {
        Some((v, _)) => Err(v),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Minimality {
    pub size: usize,
    pub judgment_size: usize,
    pub equal: bool,
}

/// Derivation size against the size of the final judgment.
pub fn dry_minimality(d: &DryDerivation) -> Minimality {
    let size = d.size();
    let judgment_size = d.conclusion.size();
    Minimality { size, judgment_size, equal: size == judgment_size }
}

/// The only variable of the 1-type representation.
pub fn one_type_var() -> TyVar {
    TyVar::x(0)
}

fn is_one_type(l: &LinearType) -> bool {
    l.vars().iter().all(|v| *v == one_type_var())
}

/// Skeleton-equivalent derivation using the single variable `X0`, with
/// size equal to the size of its final judgment. Multi-typed derivations
/// are handled premise by premise.
pub fn one_type_representation(phi: &Derivation) -> Result<Derivation, DryError> {
    if !phi.term().is_normal() {
        return Err(DryError::NotNormal(phi.term().to_string()));
    }
    match phi.rule {
        Rule::Many => one_multi(phi),
        _ => one_normal(phi),
    }
}

/// Neutral case: the result concludes `target` and its size is the
/// context size minus `|target|`.
pub fn one_type_representation_neutral(phi: &Derivation, target: &LinearType) -> Result<Derivation, DryError> {
    if !phi.term().is_neutral() {
        return Err(DryError::NotNeutral(phi.term().to_string()));
    }
    if !is_one_type(target) {
        return Err(DryError::NotOneType(target.to_string()));
    }
    one_neutral(phi, target.clone())
}

fn one_neutral(phi: &Derivation, target: LinearType) -> Result<Derivation, DryError> {
    match phi.rule {
        Rule::Ax => {
            let Term::Var(Var::Free(x)) = phi.term() else {
                return Err(DryError::NotNeutral(phi.term().to_string()));
            };
            Ok(Derivation::ax(x, target))
        }
        Rule::App => {
            let right = one_multi(&phi.premises[1])?;
            let m = right.rhs_multi().expect("many is multi").clone();
            let left = one_neutral(&phi.premises[0], LinearType::arrow(m, target))?;
            Ok(Derivation::app(left, right)?)
        }
        _ => Err(DryError::NotNeutral(phi.term().to_string())),
    }
}

fn one_normal(phi: &Derivation) -> Result<Derivation, DryError> {
    if phi.term().is_neutral() {
        return one_neutral(phi, LinearType::Var(one_type_var()));
    }
    match (phi.rule, phi.term()) {
        (Rule::Lam, Term::Abs(h, _)) => {
            let p = one_normal(&phi.premises[0])?;
            let name = phi.opened_name().unwrap_or_else(|| opening_name(phi.term(), &p.names()));
            Ok(Derivation::lam_with_hint(h.clone(), &name, p)?)
        }
        _ => Err(DryError::NotNormal(phi.term().to_string())),
    }
}

fn one_multi(phi: &Derivation) -> Result<Derivation, DryError> {
    if phi.rule != Rule::Many {
        return Err(DerivationError::IllFormed("expected a many node".into()).into());
    }
    let ps = phi.premises.iter().map(one_normal).collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation::many(phi.term().clone(), ps)?)
}
