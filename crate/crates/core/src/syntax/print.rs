use std::collections::BTreeSet;
use std::fmt;

use super::term::{fresh_name, Term, Var};

/// Prints `\x. …` with minimal parentheses. Binders keep their hint unless it
/// would capture a free variable or shadow an outer binder used in the body,
/// in which case a numeric suffix is added.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut env = Vec::new();
        write_term(self, &mut env, true, &mut out);
        f.write_str(&out)
    }
}

fn outer_refs(t: &Term, depth: usize, acc: &mut BTreeSet<usize>) {
    match t {
        Term::Var(Var::Bound(i)) if *i > depth => {
            acc.insert(i - depth);
        }
        Term::Var(_) => {}
        Term::Abs(_, b) => outer_refs(b, depth + 1, acc),
        Term::App(l, r) => {
            outer_refs(l, depth, acc);
            outer_refs(r, depth, acc);
        }
    }
}

fn binder_name(hint: &str, body: &Term, env: &[String]) -> String {
    let mut taken = body.free_vars();
    let mut refs = BTreeSet::new();
    outer_refs(body, 0, &mut refs);
    for j in refs {
        if let Some(n) = env.len().checked_sub(j).and_then(|k| env.get(k)) {
            taken.insert(n.clone());
        }
    }
    fresh_name(if hint.is_empty() { "x" } else { hint }, &taken)
}

fn write_term(t: &Term, env: &mut Vec<String>, rightmost: bool, out: &mut String) {
    match t {
        Term::Var(Var::Free(x)) => out.push_str(x),
        Term::Var(Var::Bound(i)) => match env.len().checked_sub(i + 1).and_then(|k| env.get(k)) {
            Some(n) => out.push_str(n),
            None => out.push_str(&format!("#{i}")),
        },
        Term::Abs(h, b) => {
            let name = binder_name(h.as_str(), b, env);
            out.push('\\');
            out.push_str(&name);
            out.push_str(". ");
            env.push(name);
            write_term(b, env, rightmost, out);
            env.pop();
        }
        Term::App(l, r) => {
            if l.is_abs() {
                out.push('(');
                write_term(l, env, true, out);
                out.push(')');
            } else {
                write_term(l, env, false, out);
            }
            out.push(' ');
            let wrap = matches!(**r, Term::App(..)) || (r.is_abs() && !rightmost);
            if wrap {
                out.push('(');
                write_term(r, env, true, out);
                out.push(')');
            } else {
                write_term(r, env, rightmost, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse;

    fn round(s: &str) -> String {
        parse(s).unwrap().to_string()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("\\x.x x"), "\\x. x x");
        assert_eq!(round("(\\x.x x)(\\z.z)"), "(\\x. x x) \\z. z");
        assert_eq!(round("x (\\y.y) z"), "x (\\y. y) z");
        assert_eq!(round("x (y z)"), "x (y z)");
        assert_eq!(round("(x y) z"), "x y z");
        assert_eq!(round("\\x. \\y. x y y"), "\\x. \\y. x y y");
    }

    #[test]
    fn shadowing_is_resolved() {
        assert_eq!(round("\\x. \\x. x"), "\\x. \\x. x");
        assert_eq!(round("\\x. \\x'. x"), "\\x. \\x'. x");
        let t = crate::syntax::Term::Abs(
            crate::syntax::Hint("x".into()),
            Box::new(crate::syntax::Term::Abs(
                crate::syntax::Hint("x".into()),
                Box::new(crate::syntax::Term::Var(crate::syntax::Var::Bound(1))),
            )),
        );
        assert_eq!(t.to_string(), "\\x. \\x1. x");
    }
}
