use super::term::{Hint, Term, Var};

const HINTS: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

fn hint_for_depth(d: usize) -> Hint {
    let base = HINTS[d % HINTS.len()];
    match d / HINTS.len() {
        0 => Hint(base.to_string()),
        k => Hint(format!("{base}{k}")),
    }
}

fn free_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

/// Terms with exactly `n` nodes under `depth` binders. In open mode free
/// variables are named `a`, `b`, … in order of first occurrence, so every
/// α-class up to renaming of free variables appears once.
fn gen(n: usize, depth: usize, free_used: Option<usize>) -> Vec<(Term, Option<usize>)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if n == 1 {
        for i in 0..depth {
            out.push((Term::Var(Var::Bound(i)), free_used));
        }
        if let Some(k) = free_used {
            for i in 0..=k {
                out.push((Term::var(free_name(i)), Some(k.max(i + 1))));
            }
        }
        return out;
    }
    for (b, used) in gen(n - 1, depth + 1, free_used) {
        out.push((Term::Abs(hint_for_depth(depth), Box::new(b)), used));
    }
    for left_size in 1..n - 1 {
        for (l, used) in gen(left_size, depth, free_used) {
            for (r, used2) in gen(n - 1 - left_size, depth, used) {
                out.push((Term::app(l.clone(), r), used2));
            }
        }
    }
    out
}

/// All terms with exactly `n` nodes, sorted.
pub fn terms_of_size(n: usize, closed_only: bool) -> Vec<Term> {
    let mut v: Vec<Term> = gen(n, 0, if closed_only { None } else { Some(0) })
        .into_iter()
        .map(|(t, _)| t)
        .collect();
    v.sort();
    v
}

/// Every term with at most `max_nodes` nodes, each once up to α, ordered by
/// node count and then structurally (variables before abstractions before
/// applications).
pub fn enumerate_terms(max_nodes: usize, closed_only: bool) -> impl Iterator<Item = Term> {
    (1..=max_nodes).flat_map(move |n| terms_of_size(n, closed_only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use std::collections::BTreeSet;

    /// Closed λ-terms counted by node count, computed by an independent
    /// dynamic program over (size, number of binders in scope).
    const CLOSED_EXACT: [usize; 10] = [0, 1, 2, 4, 13, 42, 139, 506, 1915, 7558];

    #[test]
    fn closed_counts_match_oracle() {
        for n in 1..=10 {
            assert_eq!(terms_of_size(n, true).len(), CLOSED_EXACT[n - 1], "size {n}");
        }
        assert_eq!(enumerate_terms(9, true).count(), 2622);
    }

    #[test]
    fn small_levels() {
        assert_eq!(enumerate_terms(1, true).count(), 0);
        let two: Vec<_> = enumerate_terms(2, true).collect();
        assert_eq!(two, vec![parse("\\x. x").unwrap()]);
        let four: BTreeSet<_> = enumerate_terms(4, true).collect();
        for s in ["\\x. \\y. x", "\\x. \\y. y", "\\x. x x", "\\x. \\y. \\z. z"] {
            assert!(four.contains(&parse(s).unwrap()), "{s}");
        }
    }

    #[test]
    fn open_terms_are_canonical_and_distinct() {
        let all: Vec<_> = enumerate_terms(6, false).collect();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|t| t.is_locally_closed()));
        assert_eq!(terms_of_size(1, false), vec![Term::var("a")]);
        assert_eq!(terms_of_size(3, false).len(), 5);
    }

    #[test]
    fn order_is_deterministic_and_sorted() {
        let a: Vec<_> = enumerate_terms(6, true).collect();
        let b: Vec<_> = enumerate_terms(6, true).collect();
        assert_eq!(a, b);
        for w in a.windows(2) {
            let (x, y) = (&w[0], &w[1]);
            assert!(x.node_count() < y.node_count() || (x.node_count() == y.node_count() && x < y));
        }
    }
}
