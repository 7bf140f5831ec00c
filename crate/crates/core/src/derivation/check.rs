use std::fmt;

use serde::Serialize;

use super::{Derivation, Rule};
use crate::syntax::{Term, Var};
use crate::types::{LinearType, MultiType, Type, TypeContext};

/// First ill-formed node in pre-order: its path (premise indices from the
/// root) and the violated clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub clause: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "{} node at [{}]: {}", self.rule, path.join("."), self.clause)
    }
}

/// Find `y` with `premise == body.open(y)`. `Ok(None)` when the body does
/// not use its bound variable and the premise equals it; `Err` when no name
/// fits.
pub(crate) fn match_open(body: &Term, premise: &Term) -> Result<Option<String>, ()> {
    fn go(b: &Term, p: &Term, depth: usize, found: &mut Option<String>) -> Result<(), ()> {
        match (b, p) {
            (Term::Var(Var::Bound(i)), Term::Var(Var::Free(y))) if *i == depth => match found {
                Some(prev) if prev != y => Err(()),
                _ => {
                    *found = Some(y.clone());
                    Ok(())
                }
            },
            (Term::Var(Var::Bound(i)), Term::Var(Var::Bound(j))) if *i > depth && *j == i - 1 => Ok(()),
            (Term::Var(Var::Bound(i)), Term::Var(Var::Bound(j))) if *i < depth && i == j => Ok(()),
            (Term::Var(Var::Free(x)), Term::Var(Var::Free(y))) if x == y => Ok(()),
            (Term::Abs(_, b1), Term::Abs(_, p1)) => go(b1, p1, depth + 1, found),
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                go(f1, f2, depth, found)?;
                go(a1, a2, depth, found)
            }
            _ => Err(()),
        }
    }
    let mut found = None;
    go(body, premise, 0, &mut found)?;
    Ok(found)
}

struct Checker {
    path: Vec<usize>,
}

impl Checker {
    fn fail(&self, rule: Rule, clause: impl Into<String>) -> Violation {
        Violation { path: self.path.clone(), rule, clause: clause.into() }
    }

    fn node(&mut self, d: &Derivation) -> Result<(), Violation> {
        let j = &d.conclusion;
        let r = d.rule;
        if !j.term.is_locally_closed() {
            return Err(self.fail(r, "subject has a dangling bound variable"));
        }
        match r {
            Rule::Ax => {
                if !d.premises.is_empty() {
                    return Err(self.fail(r, "ax has no premises"));
                }
                let Term::Var(Var::Free(x)) = &j.term else {
                    return Err(self.fail(r, "ax subject must be a variable"));
                };
                let Type::Linear(l) = &j.rhs else {
                    return Err(self.fail(r, "ax concludes a linear type"));
                };
                if j.ctx != TypeContext::singleton(x.clone(), MultiType::singleton(l.clone())) {
                    return Err(self.fail(r, format!("ax context must be exactly {x}:[{l}]")));
                }
            }
            Rule::Lam => {
                let [p] = d.premises.as_slice() else {
                    return Err(self.fail(r, "lam has exactly one premise"));
                };
                let Term::Abs(_, body) = &j.term else {
                    return Err(self.fail(r, "lam subject must be an abstraction"));
                };
                let Type::Linear(pl) = &p.conclusion.rhs else {
                    return Err(self.fail(r, "lam premise must have a linear type"));
                };
                let Ok(name) = match_open(body, &p.conclusion.term) else {
                    return Err(self.fail(r, "premise subject is not the opened body"));
                };
                let (ctx, m) = match &name {
                    Some(y) => {
                        if j.term.has_free(y) {
                            return Err(self.fail(r, format!("opened name {y} is free in the abstraction")));
                        }
                        p.conclusion.ctx.split_off(y)
                    }
                    None => (p.conclusion.ctx.clone(), MultiType::empty()),
                };
                if j.ctx != ctx {
                    return Err(self.fail(r, "context must be the premise context without the bound variable"));
                }
                if j.rhs != Type::Linear(LinearType::arrow(m, pl.clone())) {
                    return Err(self.fail(r, "type must be Γ(x) -o L"));
                }
            }
            Rule::App => {
                let [pf, pa] = d.premises.as_slice() else {
                    return Err(self.fail(r, "app has exactly two premises"));
                };
                let Term::App(f, a) = &j.term else {
                    return Err(self.fail(r, "app subject must be an application"));
                };
                if pf.conclusion.term != **f || pa.conclusion.term != **a {
                    return Err(self.fail(r, "premise subjects must be the function and the argument"));
                }
                let Some((dom, cod)) = pf.conclusion.rhs.as_linear().and_then(LinearType::as_arrow) else {
                    return Err(self.fail(r, "left premise must have an arrow type"));
                };
                let Type::Multi(m) = &pa.conclusion.rhs else {
                    return Err(self.fail(r, "right premise must have a multi type"));
                };
                if m != dom {
                    return Err(self.fail(r, format!("argument type {m} differs from domain {dom}")));
                }
                if j.ctx != pf.conclusion.ctx.sum(&pa.conclusion.ctx) {
                    return Err(self.fail(r, "context must be the sum of the premise contexts"));
                }
                if j.rhs != Type::Linear(cod.clone()) {
                    return Err(self.fail(r, "type must be the codomain of the left premise"));
                }
            }
            Rule::Many => {
                let mut items = Vec::new();
                for p in &d.premises {
                    if p.conclusion.term != j.term {
                        return Err(self.fail(r, "many premises must share the subject"));
                    }
                    match &p.conclusion.rhs {
                        Type::Linear(l) => items.push(l.clone()),
                        Type::Multi(_) => return Err(self.fail(r, "many premises must have linear types")),
                    }
                }
                if j.rhs != Type::Multi(MultiType::new(items)) {
                    return Err(self.fail(r, "type must be the multiset of premise types"));
                }
                if j.ctx != TypeContext::sum_all(d.premises.iter().map(|p| &p.conclusion.ctx)) {
                    return Err(self.fail(r, "context must be the sum of the premise contexts"));
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

/// Check every node against the typing rules.
pub fn check(d: &Derivation) -> Result<(), Violation> {
    Checker { path: Vec::new() }.node(d)
}
