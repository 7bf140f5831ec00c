use super::term::{Term, Var};
use super::SyntaxError;

/// Head-normal decomposition `λx1…λxn.(y t1 … tk)`.
///
/// `head` and `args` are taken from underneath the `n` leading binders, so
/// bound indices in them refer to those binders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadForm {
    pub prefix_len: usize,
    pub head: Var,
    pub args: Vec<Term>,
}

impl HeadForm {
    pub fn spine_len(&self) -> usize {
        self.args.len()
    }

    pub fn head_size(&self) -> usize {
        self.prefix_len + self.args.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermClass {
    pub is_neutral: bool,
    pub is_normal: bool,
    pub is_head_normal: bool,
    pub head: Option<HeadForm>,
}

impl Term {
    /// `n ::= x | n f`
    pub fn is_neutral(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(..) => false,
            Term::App(f, a) => f.is_neutral() && a.is_normal(),
        }
    }

    /// `f ::= n | λx.f`
    pub fn is_normal(&self) -> bool {
        match self {
            Term::Abs(_, b) => b.is_normal(),
            _ => self.is_neutral(),
        }
    }

    pub fn head_form(&self) -> Option<HeadForm> {
        let mut prefix_len = 0;
        let mut cur = self;
        while let Term::Abs(_, b) = cur {
            prefix_len += 1;
            cur = b;
        }
        let mut args = Vec::new();
        while let Term::App(f, a) = cur {
            args.push((**a).clone());
            cur = f;
        }
        match cur {
            Term::Var(v) => {
                args.reverse();
                Some(HeadForm { prefix_len, head: v.clone(), args })
            }
            _ => None,
        }
    }

    pub fn is_head_normal(&self) -> bool {
        self.head_form().is_some()
    }
}

pub fn classify(t: &Term) -> TermClass {
    let head = t.head_form();
    TermClass {
        is_neutral: t.is_neutral(),
        is_normal: t.is_normal(),
        is_head_normal: head.is_some(),
        head,
    }
}

/// `|h|h = n + k`.
pub fn head_size(t: &Term) -> Result<usize, SyntaxError> {
    t.head_form()
        .map(|h| h.head_size())
        .ok_or_else(|| SyntaxError::NotHeadNormal(t.to_string()))
}
