//! λ-terms: representation, parsing, printing, sizes, and classification.

mod classify;
mod enumerate;
mod parse;
mod print;
mod term;

pub use classify::{classify, head_size, HeadForm, TermClass};
pub use enumerate::{enumerate_terms, terms_of_size};
pub use parse::{parse, parse_closed, ParseError};
pub use term::{fresh_name, Dir, Hint, Position, Term, Var};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("term is not head normal: {0}")]
    NotHeadNormal(String),
}

/// `λx.x`
pub fn identity() -> Term {
    Term::lam("z", Term::var("z"))
}

/// `λx.x x`
pub fn delta() -> Term {
    Term::lam("x", Term::app(Term::var("x"), Term::var("x")))
}

/// `δ δ`
pub fn omega() -> Term {
    Term::app(delta(), delta())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            t("\\x. x x"),
            Term::Abs(
                Hint("x".into()),
                Box::new(Term::app(Term::Var(Var::Bound(0)), Term::Var(Var::Bound(0))))
            )
        );
        assert_eq!(t("(\\x. x x)(\\x. x x)"), omega());
        assert!(parse("\\x.").is_err());
    }

    #[test]
    fn substitution_examples() {
        let i = identity();
        assert_eq!(t("x x").subst("x", &i), Term::app(i.clone(), i.clone()));
        let r = t("\\y. x").subst("x", &Term::var("y"));
        assert_eq!(r.to_string(), "\\y1. y");
        assert!(r.has_free("y"));
        assert_eq!(t("\\x. x").subst("x", &Term::var("u")), t("\\x. x"));
    }

    #[test]
    fn inner_sizes() {
        assert_eq!(t("x").inner_size(), 0);
        assert_eq!(delta().inner_size(), 2);
        assert_eq!(Term::app(Term::var("x"), omega()).inner_size(), 6);
    }

    #[test]
    fn head_sizes() {
        assert_eq!(head_size(&Term::app(Term::var("x"), omega())).unwrap(), 1);
        assert_eq!(head_size(&t("\\x. \\y. x")).unwrap(), 2);
        assert!(head_size(&Term::app(delta(), identity())).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = classify(&t("x (\\y. y)"));
        assert!(c.is_neutral && c.is_normal && c.is_head_normal);
        let c = classify(&Term::app(Term::var("x"), omega()));
        assert!(!c.is_neutral && !c.is_normal && c.is_head_normal);
        let h = c.head.unwrap();
        assert_eq!((h.prefix_len, h.spine_len()), (0, 1));
        let c = classify(&Term::app(delta(), identity()));
        assert!(!c.is_neutral && !c.is_normal && !c.is_head_normal);
    }
}
