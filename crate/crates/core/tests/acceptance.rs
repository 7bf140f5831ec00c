//! Acceptance criteria, one line each. Every criterion runs even when an
//! earlier one fails; the run exits non-zero at the end if any did.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use multibounds::derivation::{check, expand_derivation, infer_head_via_trace, infer_via_trace, reduce_derivation};
use multibounds::dry::one_type_representation;
use multibounds::reduction::normalize;
use multibounds::semantics::{
    exact_pair, is_composable_pair, is_composable_up_to_subst, lax_bound_check, pair_from_application, PairKind,
    TheoremId, Verdict, VerifyConfig, verify_theorem,
};
use multibounds::syntax::{delta, head_size, identity, omega, parse};
use multibounds::types::{parse_linear, parse_multi};
use multibounds::{Derivation, LinearType, MultiType, Strategy, Term, TyVar, TyVarSupply};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn suite(ids: &[TheoremId], max_nodes: usize, fuel: usize) -> Outcome {
    let mut parts = Vec::new();
    for id in ids {
        let r = verify_theorem(*id, VerifyConfig { max_nodes, fuel, jobs: jobs() });
        if let Some(e) = r.first_failure() {
            return Err(format!("{id}: {:?} {}", e.subjects, e.detail.clone().unwrap_or_default()));
        }
        ensure(r.checked > 0, format!("{id}: empty corpus"))?;
        parts.push(format!("{id} {}/{}", r.passed, r.checked));
    }
    Ok(parts.join(", "))
}

fn golden_delta_i() -> Outcome {
    let start = Instant::now();
    let di = Term::app(delta(), identity());
    let trace = normalize(&di, Strategy::Leftmost, 10);
    ensure(trace.terminated() && trace.len() == 2, format!("{} steps", trace.len()))?;
    ensure(*trace.final_term() == identity(), format!("normal form {}", trace.final_term()))?;
    ensure(trace.final_term().inner_size() == 1, "inner size")?;
    let d = infer_via_trace(&di, 10).map_err(|e| e.to_string())?.ok_or("no derivation")?.derivation;
    ensure(check(&d).is_ok(), "derivation does not check")?;
    ensure(d.is_unitary_shrinking(), "not unitary shrinking")?;
    ensure(d.size() == 5, format!("size {}", d.size()))?;
    let took = start.elapsed();
    ensure(took < Duration::from_millis(100), format!("took {took:?}"))?;
    Ok(format!("2 steps, |I| = 1, size 5 = 2*2+1 in {took:?}"))
}

fn golden_pairs() -> Outcome {
    let p = pair_from_application(&delta(), &identity(), 10).map_err(|e| e.to_string())?.ok_or("no pair")?;
    ensure(p.size() == 10, format!("|L|+|M| = {}", p.size()))?;
    let w2 = "[X0] -o X0";
    ensure(p.left == parse_linear(&format!("[[{w2}] -o {w2}, {w2}] -o {w2}")).unwrap(), format!("L = {}", p.left))?;
    ensure(p.right == parse_multi(&format!("[[{w2}] -o {w2}, {w2}]")).unwrap(), format!("M = {}", p.right))?;
    let e = exact_pair(&delta(), &identity(), 10, Strategy::Leftmost).map_err(|e| e.to_string())?;
    ensure(e.pair.size() + 1 == 5, format!("|L'|+|M'|+1 = {}", e.pair.size() + 1))?;
    let sigma = e.pair.witness.clone().ok_or("no witness")?;
    let substituted = e.pair.substituted(&sigma);
    ensure(substituted.left == p.left && substituted.right == p.right, format!("p'σ = {substituted}"))?;
    let mut bare = e.pair.clone();
    bare.witness = None;
    ensure(
        is_composable_up_to_subst(&bare, &sigma, &delta(), &identity(), 10).map_err(|e| e.to_string())?.is_yes(),
        "p' not composable up to σ",
    )?;
    Ok(format!("|p| = 10, |p'| + 1 = 5, p' = {bare}, σ = {sigma}"))
}

fn golden_open_examples() -> Outcome {
    let x_omega = Term::app(Term::var("x"), omega());
    let d = Derivation::app(
        Derivation::ax("x", LinearType::arrow(MultiType::empty(), LinearType::Var(TyVar::x(0)))),
        Derivation::many(omega(), vec![]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    ensure(check(&d).is_ok(), "x Omega derivation does not check")?;
    ensure(d.size() == 1, format!("x Omega size {}", d.size()))?;
    ensure(head_size(&x_omega) == Ok(1), "head size")?;
    ensure(x_omega.inner_size() == 6, format!("inner size {}", x_omega.inner_size()))?;
    ensure(!d.is_shrinking(), "x Omega classified shrinking")?;

    let x = || LinearType::Var(TyVar::x(0));
    let iz = Derivation::app(
        Derivation::lam("w", Derivation::ax("w", x())).map_err(|e| e.to_string())?,
        Derivation::many(Term::var("z"), vec![Derivation::ax("z", x())]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let twice = Derivation::app(
        Derivation::ax("y", LinearType::arrow(MultiType::new(vec![x(), x()]), LinearType::Var(TyVar::x(1)))),
        Derivation::many(iz.term().clone(), vec![iz.clone(), iz]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    ensure(check(&twice).is_ok(), "doubled y(Iz) derivation does not check")?;
    ensure(twice.size() == 5 && twice.is_shrinking() && !twice.is_unitary_shrinking(), "doubled derivation")?;
    let yiz = parse("y ((\\w. w) z)").unwrap();
    let inferred = infer_via_trace(&yiz, 10).map_err(|e| e.to_string())?.ok_or("no derivation")?.derivation;
    ensure(inferred.size() == 3 && inferred.is_unitary_shrinking(), format!("inferred size {}", inferred.size()))?;
    Ok("x Omega: size 1, head 1, inner 6, not shrinking; y(Iz): 5 vs 3".into())
}

fn head_suite() -> Outcome {
    suite(&[TheoremId::T6, TheoremId::P5], 8, 100)
}

fn leftmost_suite() -> Outcome {
    suite(&[TheoremId::T9, TheoremId::P10, TheoremId::P12], 8, 100)
}

fn types_bound_derivations() -> Outcome {
    suite(&[TheoremId::P13], 8, 100)
}

fn dry_suite() -> Outcome {
    suite(&[TheoremId::T19, TheoremId::P17], 8, 100)
}

fn one_type_suite() -> Outcome {
    let out = suite(&[TheoremId::T20, TheoremId::T29], 9, 100)?;
    let d = multibounds::derivation::canonical_nf_derivation(&delta(), &mut TyVarSupply::default()).map_err(|e| e.to_string())?;
    let psi = one_type_representation(&d).map_err(|e| e.to_string())?;
    ensure(psi.rhs().to_string() == "[X0, [X0] -o X0] -o X0", format!("one-type δ: {}", psi.rhs()))?;
    ensure(psi.size() == 2 && psi.judgment_size() == 2, "one-type δ sizes")?;
    Ok(out)
}

fn composable_suite() -> Outcome {
    let out = suite(&[TheoremId::T24, TheoremId::T25, TheoremId::T27, TheoremId::T28], 6, 50)?;
    let minimal_delta = parse_linear("[[X0] -o X0, X0] -o X0").unwrap();
    let minimal_id = parse_multi("[[X1] -o X1]").unwrap();
    let minimal = multibounds::semantics::ComposablePair::new(minimal_delta, minimal_id, PairKind::Shrinking);
    ensure(
        matches!(is_composable_pair(&minimal, &delta(), &identity(), 10).map_err(|e| e.to_string())?, Verdict::No(_)),
        "minimal types of δ and I compose",
    )?;
    let p = pair_from_application(&delta(), &identity(), 10).map_err(|e| e.to_string())?.ok_or("no pair")?;
    let r = lax_bound_check(&delta(), &identity(), &p, 10, Strategy::Leftmost).map_err(|e| e.to_string())?;
    ensure(r.holds && r.measure() != r.pair_size, format!("pair p: {r}"))?;
    Ok(format!("{out}; minimal δ, I do not compose; p gives 5 < 11"))
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut instances, mut head_steps, mut attempts) = (0, 0, 0);
    while instances < 10_000 {
        attempts += 1;
        ensure(attempts < 1_000_000, "generator starved")?;
        let t = common::random_closed(&mut rng, 14);
        let strategy = if instances % 2 == 0 { Strategy::Leftmost } else { Strategy::Head };
        let trace = normalize(&t, strategy, 30);
        if !trace.terminated() || trace.is_empty() {
            continue;
        }
        let i = rand::Rng::gen_range(&mut rng, 0..trace.len());
        let (source, target, pos) = (trace.source_of(i), &trace.steps[i].term, &trace.steps[i].position);
        let inferred = match strategy {
            Strategy::Leftmost => infer_via_trace(target, 30),
            Strategy::Head => infer_head_via_trace(target, 30),
        };
        let Ok(Some(inf)) = inferred else { return Err(format!("no derivation for {target}")) };
        let phi = inf.derivation;
        let expanded = expand_derivation(&phi, source, pos).map_err(|e| format!("{source} @ {pos}: {e}"))?;
        ensure(check(&expanded).is_ok(), format!("expansion of {target} to {source} does not check"))?;
        ensure(expanded.conclusion.ctx == phi.conclusion.ctx && expanded.rhs() == phi.rhs(), "expansion changed the judgment")?;
        let back = reduce_derivation(&expanded, pos).map_err(|e| format!("{source} @ {pos}: {e}"))?;
        ensure(back.alpha_eq(&phi), format!("reduce after expand differs on {source} @ {pos}"))?;
        if strategy == Strategy::Head {
            ensure(expanded.size() == phi.size() + 2, format!("head step on {source}: {} vs {}", expanded.size(), phi.size()))?;
            head_steps += 1;
        }
        instances += 1;
    }
    Ok(format!("{instances} instances ({head_steps} head steps, -2 each)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 delta I golden", golden_delta_i),
        ("2 pair sizes p and p'", golden_pairs),
        ("3 x Omega and y(Iz)", golden_open_examples),
        ("4 head measure and head normal forms", head_suite),
        ("5 unitary shrinking measure", leftmost_suite),
        ("6 types bound derivations", types_bound_derivations),
        ("7 dry representation", dry_suite),
        ("8 one-type representation", one_type_suite),
        ("9 bounds from composable pairs", composable_suite),
        ("10 reduce/expand round trips", round_trips),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                println!("FAIL  {name}: {msg} [{took:.2?}]");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", criteria.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
