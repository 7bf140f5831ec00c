//! Command-line front end. Every command is a thin adapter over library
//! operations; JSON output is pretty-printed and deterministic.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::derivation::{check, infer_head_via_trace_with, infer_via_trace_with, Derivation};
use crate::dry::{check_two_occurrence, dry_minimality, dry_of, one_type_representation, one_type_representation_neutral};
use crate::reduction::{normalize, Outcome, Strategy};
use crate::semantics::{
    compose, exact_pair, is_composable_pair, lax_bound_check, pair_from_application, pair_from_head_application,
    verify_theorem, ComposablePair, TheoremId, TheoremReport, VerifyConfig,
};
use crate::syntax::{classify, delta, enumerate_terms, head_size, identity, omega, parse, Term};
use crate::types::{parse_linear, LinearType, MultiType, TypeSubstitution, TyVar, TyVarSupply};

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { status: 0, stdout, stderr: String::new() }
    }

    fn failed(stdout: String) -> Output {
        Output { status: 1, stdout, stderr: String::new() }
    }

    fn usage(stderr: String) -> Output {
        Output { status: 2, stdout: String::new(), stderr }
    }
}

#[derive(Parser, Debug)]
#[command(name = "multibounds", version, about = "Multi types, dry derivations and bounds from composable types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Head,
    Leftmost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Head => Strategy::Head,
            StrategyArg::Leftmost => Strategy::Leftmost,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct TermInput {
    /// Term, e.g. "(\x. x x) (\z. z)"
    term: Option<String>,
    /// Read the term from a file instead
    #[arg(long = "in", value_name = "FILE", conflicts_with = "term")]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct Eval {
    #[arg(long, default_value_t = 1000)]
    fuel: usize,
    #[arg(long, value_enum, default_value = "leftmost")]
    strategy: StrategyArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and report its sizes and class
    Parse(TermInput),
    /// Print the reduction trace of a term
    Reduce {
        #[command(flatten)]
        input: TermInput,
        #[command(flatten)]
        eval: Eval,
    },
    /// Build a derivation by normalizing and expanding back
    Infer {
        #[command(flatten)]
        input: TermInput,
        #[command(flatten)]
        eval: Eval,
        /// First serial of the type variable supply
        #[arg(long, default_value_t = 0)]
        seed_supply: u32,
    },
    /// Check a derivation given as JSON
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
    },
    /// Dry representation of a derivation of a normal form
    Dry {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed_supply: u32,
    },
    /// Single-variable representation of a derivation of a normal form
    Onetype {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        /// Target type for a neutral subject, e.g. "[X0] -o X0"
        #[arg(long)]
        target: Option<String>,
    },
    /// Join derivations of t : M -o L and u : M into one of t u
    Compose {
        #[arg(long = "in", value_name = "FILE", num_args = 1, required = true)]
        inputs: Vec<String>,
    },
    /// Composable pairs and bounds for the application of two closed terms
    Pair {
        t: String,
        u: String,
        #[command(flatten)]
        eval: Eval,
    },
    /// Check a statement over all small closed terms
    Verify {
        /// Statement id (P3, T9, T25, ...) or "all"
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
        #[arg(long, default_value_t = 100)]
        fuel: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List terms up to a node count
    Enumerate {
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        normal: bool,
    },
    /// Replay the worked examples
    Golden {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Run with `argv[0]` being the program name.
pub fn run(argv: &[String]) -> Output {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output::ok(text),
                _ => Output::usage(text),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => Output::usage(format!("error: {msg}\n")),
        Err(Failure::Failed(msg)) => Output { status: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn failed<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Failed(e.to_string())
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn term_of(input: &TermInput) -> Result<Term, Failure> {
    let text = match (&input.term, &input.input) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err(usage("a term or --in FILE is required")),
    };
    parse(text.trim()).map_err(usage)
}

fn parse_term(text: &str) -> Result<Term, Failure> {
    parse(text).map_err(usage)
}

fn derivation_in(path: &str) -> Result<Derivation, Failure> {
    Derivation::from_json(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Parse(input) => {
            let t = term_of(&input)?;
            let c = classify(&t);
            Ok(Output::ok(pretty(&json!({
                "term": t.to_string(),
                "closed": t.is_closed(),
                "nodes": t.node_count(),
                "inner_size": t.inner_size(),
                "head_size": head_size(&t).ok(),
                "normal": c.is_normal,
                "neutral": c.is_neutral,
                "head_normal": c.is_head_normal,
            }))))
        }
        Command::Reduce { input, eval } => {
            let t = term_of(&input)?;
            let trace = normalize(&t, eval.strategy.into(), eval.fuel);
            let mut out = format!("0: {}\n", trace.initial);
            for (i, s) in trace.steps.iter().enumerate() {
                out.push_str(&format!("{}: {}  [redex @ {}]\n", i + 1, s.term, s.position));
            }
            let n = trace.len();
            out.push_str(&match &trace.outcome {
                Outcome::Normal(f) => format!("normal form after {n} steps: {f} (inner size {})\n", f.inner_size()),
                Outcome::HeadNormal(h) => format!(
                    "head normal form after {n} steps: {h} (head size {})\n",
                    head_size(h).expect("head normal")
                ),
                Outcome::FuelExhausted(_) => format!("fuel exhausted after {n} steps\n"),
            });
            Ok(if trace.terminated() { Output::ok(out) } else { Output::failed(out) })
        }
        Command::Infer { input, eval, seed_supply } => {
            let t = term_of(&input)?;
            let mut supply = TyVarSupply::starting_at(seed_supply);
            let strategy: Strategy = eval.strategy.into();
            let inf = match strategy {
                Strategy::Leftmost => infer_via_trace_with(&t, eval.fuel, &mut supply),
                Strategy::Head => infer_head_via_trace_with(&t, eval.fuel, &mut supply),
            }
            .map_err(failed)?;
            let Some(inf) = inf else {
                return Err(failed(format!("{t} does not reach a {} normal form within {} steps", strategy, eval.fuel)));
            };
            let f = inf.trace.final_term();
            let result_size = match strategy {
                Strategy::Leftmost => f.inner_size(),
                Strategy::Head => head_size(f).expect("head normal"),
            };
            let d = &inf.derivation;
            Ok(Output::ok(pretty(&json!({
                "term": t.to_string(),
                "strategy": strategy,
                "steps": inf.trace.len(),
                "result": f.to_string(),
                "result_size": result_size,
                "size": d.size(),
                "judgment": d.conclusion.to_string(),
                "flags": {
                    "shrinking": d.is_shrinking(),
                    "unitary_shrinking": d.is_unitary_shrinking(),
                },
                "derivation": d,
            }))))
        }
        Command::Check { input } => {
            let d = derivation_in(&input)?;
            let mut v = json!({
                "judgment": d.conclusion.to_string(),
                "size": d.size(),
                "judgment_size": d.judgment_size(),
            });
            match check(&d) {
                Ok(()) => {
                    v["valid"] = json!(true);
                    v["flags"] = json!({
                        "shrinking": d.is_shrinking(),
                        "unitary_shrinking": d.is_unitary_shrinking(),
                    });
                    Ok(Output::ok(pretty(&v)))
                }
                Err(violation) => {
                    v["valid"] = json!(false);
                    v["violation"] = json!(violation);
                    v["message"] = json!(violation.to_string());
                    Ok(Output::failed(pretty(&v)))
                }
            }
        }
        Command::Dry { input, seed_supply } => {
            let d = derivation_in(&input)?;
            check(&d).map_err(failed)?;
            let (psi, s) = dry_of(&d, &mut TyVarSupply::starting_at(seed_supply)).map_err(failed)?;
            let two = check_two_occurrence(&psi);
            let m = dry_minimality(&psi);
            let v = json!({
                "dry": psi,
                "judgment": psi.conclusion.to_string(),
                "substitution": s,
                "minimality": m,
                "two_occurrence": two.is_ok(),
            });
            let good = two.is_ok() && m.equal;
            Ok(if good { Output::ok(pretty(&v)) } else { Output::failed(pretty(&v)) })
        }
        Command::Onetype { input, target } => {
            let d = derivation_in(&input)?;
            check(&d).map_err(failed)?;
            let psi = match target {
                Some(t) => {
                    let l = parse_linear(&t).map_err(usage)?;
                    one_type_representation_neutral(&d, &l)
                }
                None => one_type_representation(&d),
            }
            .map_err(failed)?;
            let expected = if psi.term().is_neutral() && psi.rhs_linear().is_some() {
                psi.ctx().size() - psi.rhs().size()
            } else {
                psi.judgment_size()
            };
            let v = json!({
                "derivation": psi,
                "judgment": psi.conclusion.to_string(),
                "size": psi.size(),
                "expected_size": expected,
                "valid": check(&psi).is_ok(),
            });
            let good = psi.size() == expected && check(&psi).is_ok();
            Ok(if good { Output::ok(pretty(&v)) } else { Output::failed(pretty(&v)) })
        }
        Command::Compose { inputs } => {
            let [a, b] = inputs.as_slice() else {
                return Err(usage("compose takes exactly two --in files"));
            };
            let (dt, du) = (derivation_in(a)?, derivation_in(b)?);
            check(&dt).map_err(failed)?;
            check(&du).map_err(failed)?;
            let d = compose(&dt, &du).map_err(failed)?;
            Ok(Output::ok(pretty(&json!({
                "judgment": d.conclusion.to_string(),
                "size": d.size(),
                "derivation": d,
            }))))
        }
        Command::Pair { t, u, eval } => pair_command(&parse_term(&t)?, &parse_term(&u)?, eval),
        Command::Verify { theorem, max_nodes, fuel, format, jobs } => {
            let ids: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
                TheoremId::all().to_vec()
            } else {
                vec![theorem.parse().map_err(usage)?]
            };
            let config = VerifyConfig { max_nodes, fuel, jobs };
            let reports: Vec<TheoremReport> = ids.into_iter().map(|id| verify_theorem(id, config)).collect();
            let pass = reports.iter().all(|r| r.pass);
            let text = match format {
                Format::Json if reports.len() == 1 => pretty(&reports[0]),
                Format::Json => pretty(&reports),
                Format::Table => reports.iter().map(TheoremReport::table).collect::<Vec<_>>().join("\n"),
            };
            Ok(if pass { Output::ok(text) } else { Output::failed(text) })
        }
        Command::Enumerate { max_nodes, closed, normal } => {
            if max_nodes == 0 {
                return Err(usage("--max-nodes must be at least 1"));
            }
            let mut out = String::new();
            for t in enumerate_terms(max_nodes, closed).filter(|t| !normal || t.is_normal()) {
                out.push_str(&t.to_string());
                out.push('\n');
            }
            Ok(Output::ok(out))
        }
        Command::Golden { format } => {
            let g = golden_examples();
            let text = match format {
                Format::Json => pretty(&g),
                Format::Table => g.table(),
            };
            Ok(if g.pass { Output::ok(text) } else { Output::failed(text) })
        }
    }
}

fn pair_command(t: &Term, u: &Term, eval: Eval) -> Result<Output, Failure> {
    let strategy: Strategy = eval.strategy.into();
    let fuel = eval.fuel;
    let found = match strategy {
        Strategy::Leftmost => pair_from_application(t, u, fuel),
        Strategy::Head => pair_from_head_application(t, u, fuel),
    }
    .map_err(failed)?;
    let Some(pair) = found else {
        return Err(failed(format!("{t} {u} does not terminate within {fuel} steps")));
    };
    let mut v = json!({
        "subjects": [t.to_string(), u.to_string()],
        "strategy": strategy,
        "pair": pair,
        "pair_size": pair.size(),
        "composable": is_composable_pair(&pair, t, u, fuel).map_err(failed)?,
    });
    let mut pass = true;
    if t.is_normal() && u.is_normal() {
        let lax = lax_bound_check(t, u, &pair, fuel, strategy).map_err(failed)?;
        let exact = exact_pair(t, u, fuel, strategy).map_err(failed)?;
        pass = lax.holds && exact.report.holds;
        v["lax"] = json!(lax);
        v["exact"] = json!(exact);
    } else {
        v["note"] = json!("bounds need both subjects normal");
    }
    Ok(if pass { Output::ok(pretty(&v)) } else { Output::failed(pretty(&v)) })
}

/// One replayed example: expected and measured values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub checks: Vec<GoldenCheck>,
    pub pass: bool,
}

impl GoldenReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:4}  {:<44} expected {}  got {}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            ));
        }
        out.push_str(&format!(
            "{} of {} golden checks pass\n",
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}

struct Golden(Vec<GoldenCheck>);

impl Golden {
    fn check(&mut self, name: &str, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.0.push(GoldenCheck { name: name.into(), expected, actual, pass });
    }
}

fn lin(s: &str) -> LinearType {
    parse_linear(s).expect("well-formed literal")
}

fn var(n: u32) -> LinearType {
    LinearType::Var(TyVar::x(n))
}

/// Replays the worked examples on `xΩ`, `y(Iz)`, `δI`, the six-arrow
/// substitution and the head pair of `λx.λy.x y y` and `I`.
pub fn golden_examples() -> GoldenReport {
    let mut g = Golden(Vec::new());
    let fuel = 100;

    let x_omega = Term::app(Term::var("x"), omega());
    let erasing = Derivation::app(
        Derivation::ax("x", LinearType::arrow(MultiType::empty(), var(0))),
        Derivation::many(omega(), vec![]).expect("empty many"),
    )
    .expect("domains match");
    g.check(
        "x Omega: derivation, head and inner sizes",
        json!([1, 1, 6, false, true]),
        json!([
            erasing.size(),
            head_size(&x_omega).ok(),
            x_omega.inner_size(),
            erasing.is_shrinking(),
            check(&erasing).is_ok()
        ]),
    );

    let yiz = parse("y ((\\x. x) z)").expect("literal");
    let iz = Derivation::app(
        Derivation::lam("x", Derivation::ax("x", var(0))).expect("linear premise"),
        Derivation::many(Term::var("z"), vec![Derivation::ax("z", var(0))]).expect("same subject"),
    )
    .expect("domains match");
    let iz_term = iz.term().clone();
    let twice = Derivation::app(
        Derivation::ax("y", LinearType::arrow(MultiType::new(vec![var(0), var(0)]), var(1))),
        Derivation::many(iz_term, vec![iz.clone(), iz]).expect("same subject"),
    )
    .expect("domains match");
    let inferred = infer_via_trace_with(&yiz, fuel, &mut TyVarSupply::default()).ok().flatten();
    g.check(
        "y (I z): doubled and inferred sizes",
        json!([5, false, 3, true]),
        json!([
            twice.size(),
            twice.is_unitary_shrinking(),
            inferred.as_ref().map(|i| i.derivation.size()),
            inferred.as_ref().map(|i| i.derivation.is_unitary_shrinking())
        ]),
    );

    let di = Term::app(delta(), identity());
    let trace = normalize(&di, Strategy::Leftmost, fuel);
    let inf = infer_via_trace_with(&di, fuel, &mut TyVarSupply::default()).ok().flatten();
    g.check(
        "delta I: steps, result, inner size",
        json!([2, identity().to_string(), 1]),
        json!([trace.len(), trace.final_term().to_string(), trace.final_term().inner_size()]),
    );
    g.check(
        "delta I: derivation size, unitary shrinking",
        json!([5, true]),
        json!([inf.as_ref().map(|i| i.derivation.size()), inf.as_ref().map(|i| i.derivation.is_unitary_shrinking())]),
    );
    let w2 = "[X0] -o X0";
    let p_expected = ComposablePair::new(
        lin(&format!("[[{w2}] -o {w2}, {w2}] -o {w2}")),
        crate::types::parse_multi(&format!("[[{w2}] -o {w2}, {w2}]")).expect("literal"),
        crate::semantics::PairKind::Shrinking,
    );
    let p = pair_from_application(&delta(), &identity(), fuel).ok().flatten();
    g.check(
        "delta I: pair p and its size",
        json!([p_expected.to_string(), 10]),
        json!([p.as_ref().map(|p| p.to_string()), p.as_ref().map(ComposablePair::size)]),
    );
    let p_composable = p
        .as_ref()
        .and_then(|p| is_composable_pair(p, &delta(), &identity(), fuel).ok())
        .map(|v| v.is_yes());
    g.check("delta I: p is composable", json!(true), json!(p_composable));
    let lax = p.as_ref().and_then(|p| lax_bound_check(&delta(), &identity(), p, fuel, Strategy::Leftmost).ok());
    g.check(
        "delta I: lax bound with p, not tight",
        json!([5, 11, true]),
        json!([lax.as_ref().map(|r| r.measure()), lax.as_ref().map(|r| r.pair_size), lax.as_ref().map(|r| r.holds)]),
    );
    let exact = exact_pair(&delta(), &identity(), fuel, Strategy::Leftmost).ok();
    let (p_dry, sigma) = match &exact {
        Some(e) => (Some(e.pair.clone()), e.pair.witness.clone().unwrap_or_default()),
        None => (None, TypeSubstitution::identity()),
    };
    g.check(
        "delta I: dry pair sizes and bound",
        json!([2, 2, 5]),
        json!([
            p_dry.as_ref().map(|q| q.left.size()),
            p_dry.as_ref().map(|q| q.right.size()),
            exact.as_ref().map(|e| e.report.pair_size)
        ]),
    );
    let bare_composable = p_dry.as_ref().and_then(|q| {
        let mut bare = q.clone();
        bare.witness = None;
        is_composable_pair(&bare, &delta(), &identity(), fuel).ok().map(|v| v.is_yes())
    });
    g.check("delta I: dry pair does not compose as is", json!(false), json!(bare_composable));
    g.check(
        "delta I: dry pair under its witness is p",
        json!(p_expected.to_string()),
        json!(p_dry.as_ref().map(|q| q.substituted(&sigma).to_string())),
    );

    let canonical = crate::derivation::canonical_nf_derivation(&delta(), &mut TyVarSupply::default())
        .ok()
        .and_then(|d| one_type_representation(&d).ok());
    let grown = canonical.as_ref().map(|d| d.subst(&TypeSubstitution::single(TyVar::x(0), lin("[X1] -o X1"))));
    g.check(
        "delta: substitution keeps size, grows type",
        json!([2, 2, 6]),
        json!([
            canonical.as_ref().map(Derivation::size),
            grown.as_ref().map(Derivation::size),
            grown.as_ref().and_then(|d| d.rhs_linear().map(LinearType::arrow_count))
        ]),
    );

    let f = parse("\\x. \\y. x y y").expect("literal");
    let head = exact_pair(&f, &identity(), fuel, Strategy::Head).ok();
    g.check(
        "head pair of (\\x. \\y. x y y) I",
        json!([2, 2, 6, true]),
        json!([
            head.as_ref().map(|e| e.report.steps),
            head.as_ref().map(|e| e.report.result_size),
            head.as_ref().map(|e| e.report.pair_size),
            head.as_ref().map(|e| e.report.holds)
        ]),
    );

    let pass = g.0.iter().all(|c| c.pass);
    GoldenReport { checks: g.0, pass }
}
