//! Typing derivations of the multi type system.
//!
//! Subjects are locally closed terms whose free variables are names. A `lam`
//! node concludes `Γ \\ y ⊢ λ.b : Γ(y) ⊸ L` from a premise whose subject is
//! `b` opened with the name `y`, where `y` is not free in `λ.b`. The JSON
//! format prints every subject with ordinary names, so premises of `lam`
//! nodes show the chosen `y` as a free variable.

mod build;
mod check;
mod infer;
mod json;
mod search;
mod subject;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reduction::ReductionError;
use crate::syntax::{fresh_name, Hint, Term};
use crate::types::{LinearType, MultiType, Type, TypeContext, TypeSubstitution, TyVar};

pub use build::{canonical_nf_derivation, head_minimal_derivation};
pub use check::{check, Violation};
pub(crate) use check::match_open;
pub use infer::{Inference, infer_head_via_trace, infer_head_via_trace_with, infer_via_trace, infer_via_trace_with};
pub use json::DerivationJson;
pub use search::{derive, derive_multi, member, Membership, SearchBudget};
pub use subject::{expand_derivation, reduce_derivation, split_substitution, substitution_lemma};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("ill-formed rule application: {0}")]
    IllFormed(String),
    #[error("subject is not normal: {0}")]
    NotNormal(String),
    #[error("subject is not head normal: {0}")]
    NotHeadNormal(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("no derivation in the bag has type {0}")]
    BagMismatch(String),
    #[error("{0} derivation(s) of the bag were not used")]
    LeftoverBag(usize),
    #[error("subject mismatch: {0}")]
    SubjectMismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Ax,
    Lam,
    App,
    Many,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Ax => "ax",
            Rule::Lam => "lam",
            Rule::App => "app",
            Rule::Many => "many",
        })
    }
}

/// `Γ ⊢ t : T`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub ctx: TypeContext,
    pub term: Term,
    pub rhs: Type,
}

impl Judgment {
    /// `|Γ| + |T|`
    pub fn size(&self) -> usize {
        self.ctx.size() + self.rhs.size()
    }

    pub fn tyvars(&self) -> BTreeSet<TyVar> {
        let mut v = self.ctx.vars();
        v.extend(self.rhs.vars());
        v
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.is_empty() {
            write!(f, "⊢ {} : {}", self.term, self.rhs)
        } else {
            write!(f, "{} ⊢ {} : {}", self.ctx, self.term, self.rhs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<Derivation>,
}

/// Shape of a derivation with types erased and `many` premises sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Skeleton {
    Ax,
    Lam(Box<Skeleton>),
    App(Box<Skeleton>, Box<Skeleton>),
    Many(Vec<Skeleton>),
}

fn ill(msg: impl Into<String>) -> DerivationError {
    DerivationError::IllFormed(msg.into())
}

impl Derivation {
    /// `x : [L] ⊢ x : L`
    pub fn ax(x: &str, l: LinearType) -> Derivation {
        Derivation {
            rule: Rule::Ax,
            conclusion: Judgment {
                ctx: TypeContext::singleton(x, MultiType::singleton(l.clone())),
                term: Term::var(x),
                rhs: Type::Linear(l),
            },
            premises: Vec::new(),
        }
    }

    /// Abstract the free name `name` of the premise subject.
    pub fn lam(name: &str, premise: Derivation) -> Result<Derivation, DerivationError> {
        Derivation::lam_with_hint(Hint(name.to_string()), name, premise)
    }

    /// As [`Derivation::lam`], keeping `hint` as the binder's display name.
    pub fn lam_with_hint(hint: Hint, name: &str, premise: Derivation) -> Result<Derivation, DerivationError> {
        let l = premise
            .rhs_linear()
            .ok_or_else(|| ill("lam premise must have a linear type"))?
            .clone();
        let (ctx, m) = premise.conclusion.ctx.split_off(name);
        let term = Term::Abs(hint, Box::new(premise.conclusion.term.close(name)));
        Ok(Derivation {
            rule: Rule::Lam,
            conclusion: Judgment { ctx, term, rhs: Type::Linear(LinearType::arrow(m, l)) },
            premises: vec![premise],
        })
    }

    pub fn app(left: Derivation, right: Derivation) -> Result<Derivation, DerivationError> {
        let (dom, cod) = left
            .rhs_linear()
            .and_then(LinearType::as_arrow)
            .ok_or_else(|| ill("left premise of app must have an arrow type"))?;
        let m = right.rhs_multi().ok_or_else(|| ill("right premise of app must have a multi type"))?;
        if dom != m {
            return Err(ill(format!("argument type {m} does not match domain {dom}")));
        }
        let cod = cod.clone();
        let ctx = left.conclusion.ctx.sum(&right.conclusion.ctx);
        let term = Term::app(left.conclusion.term.clone(), right.conclusion.term.clone());
        Ok(Derivation {
            rule: Rule::App,
            conclusion: Judgment { ctx, term, rhs: Type::Linear(cod) },
            premises: vec![left, right],
        })
    }

    pub fn many(term: Term, premises: Vec<Derivation>) -> Result<Derivation, DerivationError> {
        let mut items = Vec::with_capacity(premises.len());
        for p in &premises {
            if p.conclusion.term != term {
                return Err(ill("many premises must share the subject"));
            }
            items.push(p.rhs_linear().ok_or_else(|| ill("many premises must have linear types"))?.clone());
        }
        let ctx = TypeContext::sum_all(premises.iter().map(|p| &p.conclusion.ctx));
        Ok(Derivation {
            rule: Rule::Many,
            conclusion: Judgment { ctx, term, rhs: Type::Multi(MultiType::new(items)) },
            premises,
        })
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

    /// Number of `lam` and `app` nodes.
    pub fn size(&self) -> usize {
        let own = matches!(self.rule, Rule::Lam | Rule::App) as usize;
        own + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Size of the final judgment, `|Γ| + |T|`.
    pub fn judgment_size(&self) -> usize {
        self.conclusion.size()
    }

    /// Final context left and linear type right.
    pub fn is_shrinking(&self) -> bool {
        match self.rhs_linear() {
            Some(l) => self.ctx().is_left() && l.is_right(),
            None => false,
        }
    }

    pub fn is_unitary_shrinking(&self) -> bool {
        match self.rhs_linear() {
            Some(l) => self.ctx().is_unitary_left() && l.is_unitary_right(),
            None => false,
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        match self.rule {
            Rule::Ax => Skeleton::Ax,
            Rule::Lam => Skeleton::Lam(Box::new(self.premises[0].skeleton())),
            Rule::App => Skeleton::App(
                Box::new(self.premises[0].skeleton()),
                Box::new(self.premises[1].skeleton()),
            ),
            Rule::Many => {
                let mut v: Vec<Skeleton> = self.premises.iter().map(Derivation::skeleton).collect();
                v.sort();
                Skeleton::Many(v)
            }
        }
    }

    /// The name a `lam` node's premise uses for the bound variable, if the
    /// premise mentions it.
    pub fn opened_name(&self) -> Option<String> {
        if self.rule != Rule::Lam {
            return None;
        }
        let Term::Abs(_, body) = self.term() else { return None };
        match check::match_open(body, self.premises[0].term()) {
            Ok(name) => name,
            Err(_) => None,
        }
    }

    /// All type variables occurring anywhere in the derivation.
    pub fn tyvars(&self) -> BTreeSet<TyVar> {
        let mut acc = self.conclusion.tyvars();
        for p in &self.premises {
            acc.extend(p.tyvars());
        }
        acc
    }

    /// Every term-variable name occurring free in some subject.
    pub fn names(&self) -> BTreeSet<String> {
        let mut acc = self.term().free_vars();
        for p in &self.premises {
            acc.extend(p.names());
        }
        acc
    }

    /// Rename a free term variable, leaving subtrees where it does not occur
    /// untouched.
    pub fn rename_free(&self, from: &str, to: &str) -> Derivation {
        if from == to || !self.term().has_free(from) {
            return self.clone();
        }
        Derivation {
            rule: self.rule,
            conclusion: Judgment {
                ctx: self.ctx().rename(from, to),
                term: self.term().rename_free(from, to),
                rhs: self.rhs().clone(),
            },
            premises: self.premises.iter().map(|p| p.rename_free(from, to)).collect(),
        }
    }

    /// Representative of the α-class: the name opened by each `lam` node is
    /// replaced by one derived from its depth.
    pub fn alpha_canonical(&self) -> Derivation {
        self.canon_at(0)
    }

    fn canon_at(&self, depth: usize) -> Derivation {
        let mut d = self.clone();
        if d.rule == Rule::Lam {
            let fixed = format!("#{depth}");
            if let Some(y) = d.opened_name() {
                d.premises[0] = d.premises[0].rename_free(&y, &fixed);
            }
            d.premises[0] = d.premises[0].canon_at(depth + 1);
            if let Term::Abs(_, b) = &d.conclusion.term {
                d.conclusion.term = Term::Abs(Hint::default(), b.clone());
            }
        } else {
            d.premises = d.premises.iter().map(|p| p.canon_at(depth)).collect();
        }
        d
    }

    /// Equality up to the names chosen when opening binders.
    pub fn alpha_eq(&self, other: &Derivation) -> bool {
        self.alpha_canonical() == other.alpha_canonical()
    }

    /// Apply a type substitution to every judgment; the tree shape and the
    /// premise order are kept.
    pub fn subst(&self, s: &TypeSubstitution) -> Derivation {
        Derivation {
            rule: self.rule,
            conclusion: Judgment {
                ctx: s.context(self.ctx()),
                term: self.term().clone(),
                rhs: s.ty(self.rhs()),
            },
            premises: self.premises.iter().map(|p| p.subst(s)).collect(),
        }
    }

    /// Number of nodes of every kind.
    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Indented multi-line rendering, root first.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(0, &mut out);
        out
    }

    fn pretty_into(&self, indent: usize, out: &mut String) {
        out.push_str(&format!("{:indent$}{} {}\n", "", self.rule, self.conclusion, indent = indent * 2));
        for p in &self.premises {
            p.pretty_into(indent + 1, out);
        }
    }
}

/// `Φσ`
pub fn subst_derivation(s: &TypeSubstitution, d: &Derivation) -> Derivation {
    d.subst(s)
}

/// Same rule tree up to permutations of `many` premises, over the same
/// subject.
pub fn skeleton_eq(a: &Derivation, b: &Derivation) -> bool {
    a.term() == b.term() && a.skeleton() == b.skeleton()
}

/// Canonical name used to open the binder of `abs`.
pub(crate) fn opening_name(abs: &Term, avoid: &BTreeSet<String>) -> String {
    let mut taken = abs.free_vars();
    taken.extend(avoid.iter().cloned());
    fresh_name(abs.hint().unwrap_or("x"), &taken)
}

#[cfg(test)]
mod tests;
