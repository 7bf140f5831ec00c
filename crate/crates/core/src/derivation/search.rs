//! Goal-directed search for a derivation of a given judgment.
//!
//! Normal forms are searched directly: the shape of a normal term fixes the
//! rule tree up to the choice of the head-variable item and of the context
//! split among arguments. Other terms are normalized first and the found
//! derivation is expanded back along the leftmost trace.

use std::collections::BTreeMap;

use super::build::spine;
use super::subject::expand_derivation;
use super::{opening_name, Derivation};
use crate::reduction::{normalize, Strategy};
use crate::syntax::Term;
use crate::types::{LinearType, MultiType, Type, TypeContext};

/// Maximal number of search nodes visited before giving up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Holds(Derivation),
    Fails,
    /// Fuel or search budget ran out.
    Unknown(String),
}

impl Membership {
    pub fn holds(&self) -> bool {
        matches!(self, Membership::Holds(_))
    }

    pub fn witness(&self) -> Option<&Derivation> {
        match self {
            Membership::Holds(d) => Some(d),
            _ => None,
        }
    }
}

struct Exhausted;

struct Search {
    left: usize,
}

type Found = Result<Option<Derivation>, Exhausted>;

impl Search {
    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.left == 0 {
            return Err(Exhausted);
        }
        self.left -= 1;
        Ok(())
    }

    fn linear(&mut self, ctx: &TypeContext, f: &Term, l: &LinearType) -> Found {
        self.tick()?;
        if let Term::Abs(h, body) = f {
            let Some((m, cod)) = l.as_arrow() else { return Ok(None) };
            let y = opening_name(f, &ctx.domain());
            let opened = body.open(&y);
            if !m.is_empty() && !opened.has_free(&y) {
                return Ok(None);
            }
            let mut inner = ctx.clone();
            inner.set(y.clone(), m.clone());
            return Ok(match self.linear(&inner, &opened, cod)? {
                Some(p) => Some(Derivation::lam_with_hint(h.clone(), &y, p).expect("premise is linear")),
                None => None,
            });
        }
        let Some((y, args)) = spine(f) else { return Ok(None) };
        let mut tried: Vec<&LinearType> = Vec::new();
        let held = ctx.get(&y);
        for a in held.iter() {
            if tried.contains(&a) {
                continue;
            }
            tried.push(a);
            let Some(doms) = peel(a, args.len(), l) else { continue };
            let rest = ctx.without(&y);
            let rest = match held.remove_one(a) {
                Some(r) if !r.is_empty() => {
                    let mut c = rest;
                    c.set(y.clone(), r);
                    c
                }
                _ => rest,
            };
            let jobs: Vec<(usize, LinearType)> = doms
                .iter()
                .enumerate()
                .flat_map(|(i, m)| m.iter().map(move |li| (i, li.clone())))
                .collect();
            if let Some(found) = self.distribute(&rest, &args, &jobs, 0)? {
                let mut d = Derivation::ax(&y, a.clone());
                let mut found = found.into_iter();
                for (i, g) in args.iter().enumerate() {
                    let ps: Vec<Derivation> = (&mut found).take(doms[i].len()).collect();
                    d = Derivation::app(d, Derivation::many(g.clone(), ps).expect("same subject"))
                        .expect("domains match by construction");
                }
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    fn distribute(
        &mut self,
        rest: &TypeContext,
        args: &[Term],
        jobs: &[(usize, LinearType)],
        k: usize,
    ) -> Result<Option<Vec<Derivation>>, Exhausted> {
        if k == jobs.len() {
            return Ok(rest.is_empty().then(Vec::new));
        }
        let needed: Vec<String> = rest.domain().into_iter().collect();
        if needed
            .iter()
            .any(|x| !jobs[k..].iter().any(|(i, _)| args[*i].has_free(x)))
        {
            return Ok(None);
        }
        let (i, li) = &jobs[k];
        let g = &args[*i];
        for part in sub_contexts(rest, g) {
            let remaining = subtract(rest, &part);
            if let Some(d) = self.linear(&part, g, li)? {
                if let Some(mut more) = self.distribute(&remaining, args, jobs, k + 1)? {
                    more.insert(0, d);
                    return Ok(Some(more));
                }
            }
        }
        Ok(None)
    }
}

/// `a = M1 ⊸ … ⊸ Mk ⊸ l`
fn peel(a: &LinearType, k: usize, l: &LinearType) -> Option<Vec<MultiType>> {
    let mut doms = Vec::with_capacity(k);
    let mut cur = a;
    for _ in 0..k {
        let (m, cod) = cur.as_arrow()?;
        doms.push(m.clone());
        cur = cod;
    }
    (cur == l).then_some(doms)
}

fn sub_multisets(m: &MultiType) -> Vec<MultiType> {
    let mut counts: BTreeMap<&LinearType, usize> = BTreeMap::new();
    for l in m.iter() {
        *counts.entry(l).or_default() += 1;
    }
    let mut out = vec![Vec::new()];
    for (l, n) in counts {
        let mut next = Vec::new();
        for base in &out {
            for c in 0..=n {
                let mut v: Vec<LinearType> = base.clone();
                v.extend(std::iter::repeat(l.clone()).take(c));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(MultiType::new).collect()
}

fn sub_contexts(ctx: &TypeContext, g: &Term) -> Vec<TypeContext> {
    let mut out = vec![TypeContext::empty()];
    for (x, m) in ctx.entries() {
        if !g.has_free(x) {
            continue;
        }
        let mut next = Vec::new();
        for base in &out {
            for sub in sub_multisets(m) {
                let mut c = base.clone();
                c.set(x.clone(), sub);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

fn subtract(ctx: &TypeContext, part: &TypeContext) -> TypeContext {
    let mut out = ctx.clone();
    for (x, m) in part.entries() {
        let mut left = ctx.get(x);
        for l in m.iter() {
            left = left.remove_one(l).expect("part is a sub-context");
        }
        out.set(x.clone(), left);
    }
    out
}

/// Search a derivation of `ctx ⊢ f : l` for a normal `f`.
pub fn derive(ctx: &TypeContext, f: &Term, l: &LinearType, budget: SearchBudget) -> Membership {
    if !f.is_normal() || !f.is_locally_closed() {
        return Membership::Unknown(format!("{f} is not a normal form"));
    }
    let mut s = Search { left: budget.nodes };
    match s.linear(ctx, f, l) {
        Ok(Some(d)) => Membership::Holds(d),
        Ok(None) => Membership::Fails,
        Err(Exhausted) => Membership::Unknown("search budget exhausted".into()),
    }
}

/// Search a derivation of `ctx ⊢ f : m` for a normal `f`.
pub fn derive_multi(ctx: &TypeContext, f: &Term, m: &MultiType, budget: SearchBudget) -> Membership {
    if !f.is_normal() || !f.is_locally_closed() {
        return Membership::Unknown(format!("{f} is not a normal form"));
    }
    let mut s = Search { left: budget.nodes };
    let jobs: Vec<(usize, LinearType)> = m.iter().map(|l| (0, l.clone())).collect();
    match s.distribute(ctx, std::slice::from_ref(f), &jobs, 0) {
        Ok(Some(ps)) => Membership::Holds(Derivation::many(f.clone(), ps).expect("same subject")),
        Ok(None) => Membership::Fails,
        Err(Exhausted) => Membership::Unknown("search budget exhausted".into()),
    }
}

/// Decide `(ctx, ty) ∈ ⟦t⟧` by leftmost normalization within `fuel`, search
/// on the normal form and subject expansion back to `t`.
pub fn member(ctx: &TypeContext, t: &Term, ty: &Type, fuel: usize, budget: SearchBudget) -> Membership {
    let trace = normalize(t, Strategy::Leftmost, fuel);
    if !trace.terminated() {
        return Membership::Unknown(format!("no normal form within {fuel} steps"));
    }
    let nf = trace.final_term();
    let found = match ty {
        Type::Linear(l) => derive(ctx, nf, l, budget),
        Type::Multi(m) => derive_multi(ctx, nf, m, budget),
    };
    let Membership::Holds(mut d) = found else { return found };
    for i in (0..trace.len()).rev() {
        d = match expand_derivation(&d, trace.source_of(i), &trace.steps[i].position) {
            Ok(d) => d,
            Err(e) => return Membership::Unknown(e.to_string()),
        };
    }
    Membership::Holds(d)
}
