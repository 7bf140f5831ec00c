//! Constructive subject reduction and subject expansion.

use std::collections::BTreeSet;

use super::{Derivation, DerivationError, Rule};
use crate::reduction::beta_step_at;
use crate::syntax::{fresh_name, Dir, Hint, Position, Term, Var};

fn mismatch(msg: impl Into<String>) -> DerivationError {
    DerivationError::SubjectMismatch(msg.into())
}

fn lam_parts(d: &Derivation) -> Result<(Hint, Option<String>, &Derivation), DerivationError> {
    match (&d.rule, d.term()) {
        (Rule::Lam, Term::Abs(h, _)) => Ok((h.clone(), d.opened_name(), &d.premises[0])),
        _ => Err(mismatch(format!("expected a lam node for {}", d.term()))),
    }
}

/// Given `Φs ▷ Γ, x:M ⊢ s : T` and a bag of derivations of `u` whose types
/// form `M`, build `Γ ⊎ ΣΔi ⊢ s{x←u} : T`. Axioms on `x` are visited in
/// pre-order and each takes the first unused bag member of its type.
pub fn substitution_lemma(
    phi: &Derivation,
    x: &str,
    u: &Term,
    bag: Vec<Derivation>,
) -> Result<Derivation, DerivationError> {
    let mut pool: Vec<Option<Derivation>> = bag.into_iter().map(Some).collect();
    let out = lemma(phi, x, u, &u.free_vars(), &mut pool)?;
    let left = pool.iter().filter(|d| d.is_some()).count();
    if left > 0 {
        return Err(DerivationError::LeftoverBag(left));
    }
    Ok(out)
}

fn lemma(
    phi: &Derivation,
    x: &str,
    u: &Term,
    fv_u: &BTreeSet<String>,
    pool: &mut [Option<Derivation>],
) -> Result<Derivation, DerivationError> {
    if !phi.term().has_free(x) {
        return Ok(phi.clone());
    }
    match phi.rule {
        Rule::Ax => {
            let l = phi.rhs_linear().expect("ax has a linear type");
            let slot = pool
                .iter_mut()
                .find(|d| d.as_ref().is_some_and(|d| d.rhs_linear() == Some(l)))
                .ok_or_else(|| DerivationError::BagMismatch(l.to_string()))?;
            let d = slot.take().expect("slot is filled");
            if d.term() != u {
                return Err(mismatch(format!("bag derivation types {} instead of {}", d.term(), u)));
            }
            Ok(d)
        }
        Rule::Lam => {
            let (hint, name, premise) = lam_parts(phi)?;
            let Some(y) = name else {
                let p = lemma(premise, x, u, fv_u, pool)?;
                let y = super::opening_name(phi.term(), &p.names());
                return Derivation::lam_with_hint(hint, &y, p);
            };
            let (y, premise) = if fv_u.contains(&y) {
                let mut avoid = phi.names();
                avoid.extend(fv_u.iter().cloned());
                avoid.insert(x.to_string());
                let z = fresh_name(&y, &avoid);
                let renamed = premise.rename_free(&y, &z);
                (z, renamed)
            } else {
                (y, premise.clone())
            };
            let p = lemma(&premise, x, u, fv_u, pool)?;
            Derivation::lam_with_hint(hint, &y, p)
        }
        Rule::App => {
            let l = lemma(&phi.premises[0], x, u, fv_u, pool)?;
            let r = lemma(&phi.premises[1], x, u, fv_u, pool)?;
            Derivation::app(l, r)
        }
        Rule::Many => {
            let ps = phi
                .premises
                .iter()
                .map(|p| lemma(p, x, u, fv_u, pool))
                .collect::<Result<Vec<_>, _>>()?;
            Derivation::many(phi.term().subst(x, u), ps)
        }
    }
}

/// Inverse of [`substitution_lemma`]: from `Ψ ▷ s{x←u}` recover the
/// derivation of `s` (with `x` in its context) and the bag of derivations
/// of `u`, in the pre-order of the axioms on `x`.
pub fn split_substitution(
    s: &Term,
    x: &str,
    u: &Term,
    psi: &Derivation,
) -> Result<(Derivation, Vec<Derivation>), DerivationError> {
    if *psi.term() != s.subst(x, u) {
        return Err(mismatch(format!("{} is not {}{{{}←{}}}", psi.term(), s, x, u)));
    }
    let mut bag = Vec::new();
    let d = split(s, x, u, psi, &mut bag)?;
    Ok((d, bag))
}

fn split(s: &Term, x: &str, u: &Term, psi: &Derivation, bag: &mut Vec<Derivation>) -> Result<Derivation, DerivationError> {
    if psi.rule == Rule::Many {
        let ps = psi
            .premises
            .iter()
            .map(|p| split(s, x, u, p, bag))
            .collect::<Result<Vec<_>, _>>()?;
        return Derivation::many(s.clone(), ps);
    }
    if !s.has_free(x) {
        return Ok(psi.clone());
    }
    match s {
        Term::Var(Var::Free(_)) => {
            let l = psi
                .rhs_linear()
                .ok_or_else(|| mismatch("occurrence of the variable typed by a multi type"))?
                .clone();
            bag.push(psi.clone());
            Ok(Derivation::ax(x, l))
        }
        Term::Var(Var::Bound(_)) => Err(mismatch("dangling bound variable")),
        Term::Abs(h, body) => {
            let (_, name, premise) = lam_parts(psi)?;
            let (y, premise) = match name {
                Some(y) if y == x => {
                    let mut avoid = psi.names();
                    avoid.extend(s.free_vars());
                    avoid.extend(u.free_vars());
                    let z = fresh_name(&y, &avoid);
                    let renamed = premise.rename_free(&y, &z);
                    (z, renamed)
                }
                Some(y) => (y, premise.clone()),
                None => {
                    let mut avoid = psi.names();
                    avoid.extend(s.free_vars());
                    avoid.extend(u.free_vars());
                    (fresh_name(h.as_str(), &avoid), premise.clone())
                }
            };
            let p = split(&body.open(&y), x, u, &premise, bag)?;
            Derivation::lam_with_hint(h.clone(), &y, p)
        }
        Term::App(f, a) => {
            if psi.rule != Rule::App {
                return Err(mismatch(format!("expected an app node for {}", psi.term())));
            }
            let l = split(f, x, u, &psi.premises[0], bag)?;
            let r = split(a, x, u, &psi.premises[1], bag)?;
            Derivation::app(l, r)
        }
    }
}

/// Subject reduction along the β-step at `pos` of the derivation's subject.
pub fn reduce_derivation(phi: &Derivation, pos: &Position) -> Result<Derivation, DerivationError> {
    beta_step_at(phi.term(), pos)?;
    reduce_at(phi, pos.steps())
}

fn reduce_at(phi: &Derivation, path: &[Dir]) -> Result<Derivation, DerivationError> {
    if phi.rule == Rule::Many {
        let ps = phi
            .premises
            .iter()
            .map(|p| reduce_at(p, path))
            .collect::<Result<Vec<_>, _>>()?;
        let pos = Position::new(path.to_vec());
        return Derivation::many(beta_step_at(phi.term(), &pos)?, ps);
    }
    match path.split_first() {
        None => {
            let Term::App(_, u) = phi.term() else {
                return Err(mismatch("redex is not an application"));
            };
            let (_, name, body_d) = lam_parts(&phi.premises[0])?;
            let bag = phi.premises[1].premises.clone();
            match name {
                Some(y) => substitution_lemma(body_d, &y, u, bag),
                None if bag.is_empty() => Ok(body_d.clone()),
                None => Err(DerivationError::LeftoverBag(bag.len())),
            }
        }
        Some((Dir::Body, rest)) => {
            let (hint, name, premise) = lam_parts(phi)?;
            let p = reduce_at(premise, rest)?;
            match name {
                Some(y) => Derivation::lam_with_hint(hint, &y, p),
                None => {
                    let y = super::opening_name(phi.term(), &p.names());
                    Derivation::lam_with_hint(hint, &y, p)
                }
            }
        }
        Some((Dir::Fn, rest)) => Derivation::app(reduce_at(&phi.premises[0], rest)?, phi.premises[1].clone()),
        Some((Dir::Arg, rest)) => Derivation::app(phi.premises[0].clone(), reduce_at(&phi.premises[1], rest)?),
    }
}

/// Subject expansion: from a derivation of the reduct of `source` at `pos`
/// build a derivation of `source` with the same final judgment. Every copy
/// of the contracted redex sitting under `many` nodes is expanded on its
/// own.
pub fn expand_derivation(phi: &Derivation, source: &Term, pos: &Position) -> Result<Derivation, DerivationError> {
    let target = beta_step_at(source, pos)?;
    if *phi.term() != target {
        return Err(mismatch(format!("derivation types {} but the step yields {}", phi.term(), target)));
    }
    expand_at(phi, source, pos.steps())
}

fn expand_at(phi: &Derivation, src: &Term, path: &[Dir]) -> Result<Derivation, DerivationError> {
    if phi.rule == Rule::Many {
        let ps = phi
            .premises
            .iter()
            .map(|p| expand_at(p, src, path))
            .collect::<Result<Vec<_>, _>>()?;
        return Derivation::many(src.clone(), ps);
    }
    match (path.split_first(), src) {
        (None, Term::App(f, u)) => {
            let Term::Abs(h, body) = &**f else {
                return Err(mismatch("redex is not an application of an abstraction"));
            };
            let mut avoid = phi.names();
            avoid.extend(src.free_vars());
            let x = fresh_name(h.as_str(), &avoid);
            let s = body.open(&x);
            let (phi_s, bag) = split_substitution(&s, &x, u, phi)?;
            let lam = Derivation::lam_with_hint(h.clone(), &x, phi_s)?;
            let arg = Derivation::many((**u).clone(), bag)?;
            Derivation::app(lam, arg)
        }
        (Some((Dir::Body, rest)), Term::Abs(h, body)) => {
            let (_, name, premise) = lam_parts(phi)?;
            let mut avoid = premise.names();
            avoid.extend(src.free_vars());
            let (y, premise) = match name {
                Some(y) if src.has_free(&y) => {
                    let z = fresh_name(&y, &avoid);
                    (z.clone(), premise.rename_free(&y, &z))
                }
                Some(y) => (y, premise.clone()),
                None => (fresh_name(h.as_str(), &avoid), premise.clone()),
            };
            let p = expand_at(&premise, &body.open(&y), rest)?;
            Derivation::lam_with_hint(h.clone(), &y, p)
        }
        (Some((Dir::Fn, rest)), Term::App(f, _)) => {
            Derivation::app(expand_at(&phi.premises[0], f, rest)?, phi.premises[1].clone())
        }
        (Some((Dir::Arg, rest)), Term::App(_, a)) => {
            Derivation::app(phi.premises[0].clone(), expand_at(&phi.premises[1], a, rest)?)
        }
        _ => Err(mismatch("position does not match the derivation")),
    }
}
