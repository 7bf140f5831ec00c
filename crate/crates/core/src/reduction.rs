//! β-reduction, head and leftmost-outermost strategies, and fuel-bounded
//! traces.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Dir, Position, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("position {0} does not denote a subterm")]
    InvalidPosition(Position),
    #[error("subterm at {0} is not a β-redex")]
    NotARedex(Position),
}

/// Deterministic strategies. Arbitrary β-steps are taken with
/// [`beta_step_at`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Head,
    Leftmost,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Head => "head",
            Strategy::Leftmost => "leftmost",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "head" | "h" => Ok(Strategy::Head),
            "leftmost" | "lo" => Ok(Strategy::Leftmost),
            other => Err(format!("unknown strategy '{other}' (expected head or leftmost)")),
        }
    }
}

/// Contract the redex at `p`.
pub fn beta_step_at(t: &Term, p: &Position) -> Result<Term, ReductionError> {
    let mut contract = |s: &Term| match s {
        Term::App(f, a) => match &**f {
            Term::Abs(_, body) => Ok(body.instantiate(a)),
            _ => Err(ReductionError::NotARedex(p.clone())),
        },
        _ => Err(ReductionError::NotARedex(p.clone())),
    };
    t.map_at(p.steps(), &mut contract, || ReductionError::InvalidPosition(p.clone()))
}

fn head_redex(t: &Term, path: &mut Vec<Dir>) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Abs(_, b) => {
            path.push(Dir::Body);
            head_redex(b, path)
        }
        Term::App(f, _) if f.is_abs() => true,
        Term::App(f, _) => {
            path.push(Dir::Fn);
            head_redex(f, path)
        }
    }
}

fn leftmost_redex(t: &Term, path: &mut Vec<Dir>) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Abs(_, b) => {
            path.push(Dir::Body);
            if leftmost_redex(b, path) {
                return true;
            }
            path.pop();
            false
        }
        Term::App(f, _) if f.is_abs() => true,
        Term::App(f, a) => {
            path.push(Dir::Fn);
            if leftmost_redex(f, path) {
                return true;
            }
            path.pop();
            path.push(Dir::Arg);
            if leftmost_redex(a, path) {
                return true;
            }
            path.pop();
            false
        }
    }
}

pub fn head_redex_position(t: &Term) -> Option<Position> {
    let mut path = Vec::new();
    head_redex(t, &mut path).then(|| Position::new(path))
}

pub fn leftmost_redex_position(t: &Term) -> Option<Position> {
    let mut path = Vec::new();
    leftmost_redex(t, &mut path).then(|| Position::new(path))
}

/// The head step of `t`, absent on head normal forms.
pub fn head_step(t: &Term) -> Option<(Position, Term)> {
    let p = head_redex_position(t)?;
    let r = beta_step_at(t, &p).expect("head redex position is a redex");
    Some((p, r))
}

/// The leftmost-outermost step of `t`, absent on normal forms.
pub fn leftmost_step(t: &Term) -> Option<(Position, Term)> {
    let p = leftmost_redex_position(t)?;
    let r = beta_step_at(t, &p).expect("leftmost redex position is a redex");
    Some((p, r))
}

pub fn step(t: &Term, s: Strategy) -> Option<(Position, Term)> {
    match s {
        Strategy::Head => head_step(t),
        Strategy::Leftmost => leftmost_step(t),
    }
}

/// Every redex position of `t`, in pre-order.
pub fn redex_positions(t: &Term) -> Vec<Position> {
    fn go(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<Position>) {
        match t {
            Term::Var(_) => {}
            Term::Abs(_, b) => {
                path.push(Dir::Body);
                go(b, path, out);
                path.pop();
            }
            Term::App(f, a) => {
                if f.is_abs() {
                    out.push(Position::new(path.clone()));
                }
                path.push(Dir::Fn);
                go(f, path, out);
                path.pop();
                path.push(Dir::Arg);
                go(a, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub position: Position,
    /// The whole term after contracting the redex at `position`.
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Normal(Term),
    HeadNormal(Term),
    FuelExhausted(Term),
}

impl Outcome {
    pub fn term(&self) -> &Term {
        match self {
            Outcome::Normal(t) | Outcome::HeadNormal(t) | Outcome::FuelExhausted(t) => t,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Normal(_) => "normal",
            Outcome::HeadNormal(_) => "head-normal",
            Outcome::FuelExhausted(_) => "fuel-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: Term,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
    pub strategy: Strategy,
}

impl ReductionTrace {
    /// `|d|`
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_term(&self) -> &Term {
        self.outcome.term()
    }

    pub fn terminated(&self) -> bool {
        !matches!(self.outcome, Outcome::FuelExhausted(_))
    }

    /// The source term of step `i`.
    pub fn source_of(&self, i: usize) -> &Term {
        if i == 0 {
            &self.initial
        } else {
            &self.steps[i - 1].term
        }
    }
}

/// Iterate `s` until no step applies or `fuel` steps have been taken.
pub fn normalize(t: &Term, s: Strategy, fuel: usize) -> ReductionTrace {
    let mut steps: Vec<TraceStep> = Vec::new();
    let mut cur = t.clone();
    loop {
        let next = step(&cur, s);
        match next {
            None => {
                let outcome = match s {
                    Strategy::Head => Outcome::HeadNormal(cur),
                    Strategy::Leftmost => Outcome::Normal(cur),
                };
                return ReductionTrace { initial: t.clone(), steps, outcome, strategy: s };
            }
            Some(_) if steps.len() >= fuel => {
                return ReductionTrace {
                    initial: t.clone(),
                    steps,
                    outcome: Outcome::FuelExhausted(cur),
                    strategy: s,
                };
            }
            Some((position, term)) => {
                cur = term.clone();
                steps.push(TraceStep { position, term });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{delta, identity, omega, parse};

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn beta_at_position() {
        let ii = Term::app(identity(), identity());
        assert_eq!(beta_step_at(&t("(\\x. x x) (\\z. z)"), &Position::root()).unwrap(), ii);
        let p: Position = "r".parse().unwrap();
        assert_eq!(beta_step_at(&t("y ((\\z. z) y)"), &p).unwrap(), t("y y"));
        assert_eq!(
            beta_step_at(&t("y"), &Position::root()),
            Err(ReductionError::NotARedex(Position::root()))
        );
        assert!(matches!(
            beta_step_at(&t("y"), &"b".parse().unwrap()),
            Err(ReductionError::InvalidPosition(_))
        ));
    }

    #[test]
    fn head_steps() {
        let di = Term::app(delta(), identity());
        assert_eq!(head_step(&di).unwrap().1, Term::app(identity(), identity()));
        assert_eq!(head_step(&omega()).unwrap().1, omega());
        assert!(head_step(&Term::app(Term::var("x"), omega())).is_none());
        assert_eq!(head_step(&t("\\y. (\\x. x) y")).unwrap().0.to_string(), "b");
    }

    #[test]
    fn leftmost_steps() {
        let (p, r) = leftmost_step(&t("x ((\\z. z) (\\z. z)) ((\\z. z) (\\z. z))")).unwrap();
        assert_eq!(r, t("x (\\z. z) ((\\z. z) (\\z. z))"));
        assert_eq!(p.to_string(), "lr");
        let (p, r) = leftmost_step(&t("(\\x. x x) ((\\z. z) (\\z. z)) ((\\z. z) (\\z. z))")).unwrap();
        assert_eq!(p.to_string(), "l");
        assert_eq!(r, t("(\\z. z) (\\z. z) ((\\z. z) (\\z. z)) ((\\z. z) (\\z. z))"));
        assert_ne!(r, t("(\\x. x x) (\\z. z) ((\\z. z) (\\z. z))"));
        assert!(leftmost_step(&t("\\x. x")).is_none());
    }

    #[test]
    fn normalization_examples() {
        let tr = normalize(&Term::app(delta(), identity()), Strategy::Leftmost, 10);
        assert_eq!(tr.len(), 2);
        assert_eq!(tr.outcome, Outcome::Normal(identity()));
        let tr = normalize(&omega(), Strategy::Leftmost, 50);
        assert!(matches!(tr.outcome, Outcome::FuelExhausted(_)));
        assert_eq!(tr.len(), 50);
        let xo = Term::app(Term::var("x"), omega());
        let tr = normalize(&xo, Strategy::Head, 10);
        assert_eq!(tr.len(), 0);
        assert_eq!(tr.outcome, Outcome::HeadNormal(xo));
    }

    #[test]
    fn trace_steps_replay() {
        let tr = normalize(&t("(\\x. \\y. x y y) (\\z. z)"), Strategy::Leftmost, 10);
        for (i, s) in tr.steps.iter().enumerate() {
            assert_eq!(beta_step_at(tr.source_of(i), &s.position).unwrap(), s.term);
        }
        assert_eq!(tr.final_term(), &t("\\y. y y"));
    }

    #[test]
    fn normal_iff_no_leftmost_step() {
        for term in crate::syntax::enumerate_terms(7, false) {
            assert_eq!(term.is_normal(), leftmost_step(&term).is_none(), "{term}");
            assert_eq!(term.is_head_normal(), head_step(&term).is_none(), "{term}");
            assert_eq!(term.is_normal(), redex_positions(&term).is_empty(), "{term}");
        }
    }
}
