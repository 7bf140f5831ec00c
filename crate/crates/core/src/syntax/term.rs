use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Surface name of a binder. Only used for printing; it never takes part in
/// equality, ordering, or hashing, so α-equivalent terms compare equal.
#[derive(Clone, Debug, Default)]
pub struct Hint(pub String);

impl Hint {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hint {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// Variable occurrence: a de Bruijn index for bound variables, a name for
/// free ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Bound(usize),
    Free(String),
}

/// An untyped λ-term in locally nameless form.
///
/// Bound variables are de Bruijn indices and free variables are names, so the
/// derived equality is α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Abs(Hint, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(Var::Free(name.into()))
    }

    /// `λname.body`, binding every free occurrence of `name` in `body`.
    pub fn lam(name: &str, body: Term) -> Term {
        Term::Abs(Hint(name.to_string()), Box::new(body.close(name)))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-nested application `head a1 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn is_abs(&self) -> bool {
        matches!(self, Term::Abs(..))
    }

    pub fn is_redex(&self) -> bool {
        matches!(self, Term::App(f, _) if f.is_abs())
    }

    /// Number of AST nodes, counting variables, abstractions, and
    /// applications as one each.
    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.node_count(),
            Term::App(f, a) => 1 + f.node_count() + a.node_count(),
        }
    }

    /// Inner size: abstractions and applications, variables count zero.
    pub fn inner_size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Abs(_, b) => 1 + b.inner_size(),
            Term::App(f, a) => 1 + f.inner_size() + a.inner_size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(Var::Free(x)) => {
                out.insert(x.clone());
            }
            Term::Var(Var::Bound(_)) => {}
            Term::Abs(_, b) => b.collect_free(out),
            Term::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Term::Var(Var::Free(x)) => x == name,
            Term::Var(Var::Bound(_)) => false,
            Term::Abs(_, b) => b.has_free(name),
            Term::App(f, a) => f.has_free(name) || a.has_free(name),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.is_locally_closed() && self.free_vars().is_empty()
    }

    /// No dangling de Bruijn index.
    pub fn is_locally_closed(&self) -> bool {
        self.max_loose(0).is_none()
    }

    fn max_loose(&self, depth: usize) -> Option<usize> {
        match self {
            Term::Var(Var::Bound(i)) if *i >= depth => Some(i - depth),
            Term::Var(_) => None,
            Term::Abs(_, b) => b.max_loose(depth + 1),
            Term::App(f, a) => match (f.max_loose(depth), a.max_loose(depth)) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
        }
    }

    /// Whether loose index `depth` (the variable of the enclosing binder)
    /// occurs in this abstraction body.
    pub fn mentions_bound(&self, depth: usize) -> bool {
        match self {
            Term::Var(Var::Bound(i)) => *i == depth,
            Term::Var(_) => false,
            Term::Abs(_, b) => b.mentions_bound(depth + 1),
            Term::App(f, a) => f.mentions_bound(depth) || a.mentions_bound(depth),
        }
    }

    /// Shift loose indices `>= cutoff` by `by`.
    pub(crate) fn shift(&self, by: isize, cutoff: usize) -> Term {
        if by == 0 {
            return self.clone();
        }
        match self {
            Term::Var(Var::Bound(i)) if *i >= cutoff => {
                Term::Var(Var::Bound((*i as isize + by) as usize))
            }
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.shift(by, cutoff + 1))),
            Term::App(f, a) => Term::app(f.shift(by, cutoff), a.shift(by, cutoff)),
        }
    }

    /// Replace loose index 0 of an abstraction body by `arg`, lowering the
    /// remaining loose indices: the β contractum of `(λ.self) arg`.
    pub fn instantiate(&self, arg: &Term) -> Term {
        self.instantiate_at(0, arg)
    }

    fn instantiate_at(&self, depth: usize, arg: &Term) -> Term {
        match self {
            Term::Var(Var::Bound(i)) => match (*i).cmp(&depth) {
                Ordering::Equal => arg.shift(depth as isize, 0),
                Ordering::Greater => Term::Var(Var::Bound(i - 1)),
                Ordering::Less => self.clone(),
            },
            Term::Var(Var::Free(_)) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.instantiate_at(depth + 1, arg))),
            Term::App(f, a) => Term::app(f.instantiate_at(depth, arg), a.instantiate_at(depth, arg)),
        }
    }

    /// Open an abstraction body with a free name.
    pub fn open(&self, name: &str) -> Term {
        self.instantiate(&Term::var(name))
    }

    /// Inverse of [`Term::open`]: abstract the free name as loose index 0.
    pub fn close(&self, name: &str) -> Term {
        self.close_at(0, name)
    }

    fn close_at(&self, depth: usize, name: &str) -> Term {
        match self {
            Term::Var(Var::Free(x)) if x == name => Term::Var(Var::Bound(depth)),
            Term::Var(Var::Bound(i)) if *i >= depth => Term::Var(Var::Bound(i + 1)),
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.close_at(depth + 1, name))),
            Term::App(f, a) => Term::app(f.close_at(depth, name), a.close_at(depth, name)),
        }
    }

    /// Capture-avoiding substitution `self{x←u}` of a free name.
    pub fn subst(&self, x: &str, u: &Term) -> Term {
        self.subst_at(0, x, u)
    }

    fn subst_at(&self, depth: usize, x: &str, u: &Term) -> Term {
        match self {
            Term::Var(Var::Free(y)) if y == x => u.shift(depth as isize, 0),
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.subst_at(depth + 1, x, u))),
            Term::App(f, a) => Term::app(f.subst_at(depth, x, u), a.subst_at(depth, x, u)),
        }
    }

    /// Rename a free variable.
    pub fn rename_free(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(Var::Free(y)) if y == from => Term::var(to),
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.rename_free(from, to))),
            Term::App(f, a) => Term::app(f.rename_free(from, to), a.rename_free(from, to)),
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for step in pos.steps() {
            cur = match (step, cur) {
                (Dir::Body, Term::Abs(_, b)) => b,
                (Dir::Fn, Term::App(f, _)) => f,
                (Dir::Arg, Term::App(_, a)) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuild the term with the subterm at `pos` replaced by `f(subterm)`.
    pub(crate) fn map_at<E>(
        &self,
        path: &[Dir],
        f: &mut impl FnMut(&Term) -> Result<Term, E>,
        on_invalid: impl FnOnce() -> E,
    ) -> Result<Term, E> {
        let Some((first, rest)) = path.split_first() else {
            return f(self);
        };
        match (first, self) {
            (Dir::Body, Term::Abs(h, b)) => Ok(Term::Abs(h.clone(), Box::new(b.map_at(rest, f, on_invalid)?))),
            (Dir::Fn, Term::App(l, r)) => Ok(Term::app(l.map_at(rest, f, on_invalid)?, (**r).clone())),
            (Dir::Arg, Term::App(l, r)) => Ok(Term::app((**l).clone(), r.map_at(rest, f, on_invalid)?)),
            _ => Err(on_invalid()),
        }
    }

    /// Binder hint of an abstraction.
    pub fn hint(&self) -> Option<&str> {
        match self {
            Term::Abs(h, _) => Some(h.as_str()),
            _ => None,
        }
    }
}

/// A single move from a term to one of its immediate subterms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Into the body of an abstraction.
    Body,
    /// Into the function part of an application.
    Fn,
    /// Into the argument of an application.
    Arg,
}

/// Path from the root of a term to one of its subterms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<Dir>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn new(steps: Vec<Dir>) -> Self {
        Position(steps)
    }

    pub fn steps(&self) -> &[Dir] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, d: Dir) -> Position {
        let mut v = self.0.clone();
        v.push(d);
        Position(v)
    }

    pub fn is_valid_for(&self, t: &Term) -> bool {
        t.subterm(self).is_some()
    }
}

/// Root prints as `ε`; otherwise one letter per step: `b` body, `l` function,
/// `r` argument.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for d in &self.0 {
            let c = match d {
                Dir::Body => 'b',
                Dir::Fn => 'l',
                Dir::Arg => 'r',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Position {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ε" || s.is_empty() || s == "root" {
            return Ok(Position::root());
        }
        s.chars()
            .map(|c| match c {
                'b' => Ok(Dir::Body),
                'l' => Ok(Dir::Fn),
                'r' => Ok(Dir::Arg),
                other => Err(format!("bad position step '{other}'")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Position)
    }
}

/// Pick `base`, or `base` followed by the smallest serial, avoiding `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let base = if base.is_empty() { "x" } else { base };
    if !taken.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "x" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded serials")
}
