//! Exhaustive checking of the size and bound statements over small closed
//! terms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    exact_pair, is_composable_up_to_subst, lax_bound_check, pair_from_application,
    pair_from_head_application, PairKind, Verdict,
};
use crate::derivation::{
    canonical_nf_derivation, check, expand_derivation, head_minimal_derivation, infer_head_via_trace,
    infer_via_trace, member, reduce_derivation, skeleton_eq, Derivation, Membership, SearchBudget,
};
use crate::dry::{
    check_dry, check_two_occurrence, dry_minimality, dry_of, one_type_representation,
    one_type_representation_neutral, one_type_var, rename_dry,
};
use crate::reduction::{normalize, ReductionTrace, Strategy};
use crate::syntax::{enumerate_terms, head_size, Term};
use crate::types::{LinearType, MultiType, Type, TypeContext, TypeSubstitution, TyVar, TyVarSupply};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    P3,
    P5,
    T6,
    T8,
    T9,
    P10,
    P12,
    P13,
    P17,
    T19,
    T20,
    L22,
    T23,
    T24,
    T25,
    L26,
    T27,
    T28,
    T29,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::P3,
        TheoremId::P5,
        TheoremId::T6,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::P10,
        TheoremId::P12,
        TheoremId::P13,
        TheoremId::P17,
        TheoremId::T19,
        TheoremId::T20,
        TheoremId::L22,
        TheoremId::T23,
        TheoremId::T24,
        TheoremId::T25,
        TheoremId::L26,
        TheoremId::T27,
        TheoremId::T28,
        TheoremId::T29,
    ];

    pub fn all() -> &'static [TheoremId] {
        &Self::ALL
    }

    pub fn title(self) -> &'static str {
        use TheoremId::*;
        match self {
            P3 => "quantitative subject reduction and expansion",
            P5 => "typability of head normal forms",
            T6 => "derivations measure head evaluation",
            T8 => "shrinking derivations bound leftmost evaluation",
            T9 => "unitary shrinking derivations measure leftmost evaluation",
            P10 => "unitary shrinking derivations of normal forms",
            P12 => "shrinking types bound normal forms",
            P13 => "types bound derivations of normal forms",
            P17 => "dry derivations are minimal",
            T19 => "dry representation and type substitution",
            T20 => "size representation with one variable",
            L22 => "normalization iff a composable pair exists",
            T23 => "normal form bounds from composable pairs",
            T24 => "lax bounds from composable pairs",
            T25 => "exact bounds from composable pairs",
            L26 => "head normalization iff a plain pair exists",
            T27 => "lax bounds for head reduction",
            T28 => "exact bounds for head reduction",
            T29 => "one-variable representation of neutral and multi judgments",
        }
    }

    /// Whether the corpus consists of pairs of terms.
    pub fn on_pairs(self) -> bool {
        use TheoremId::*;
        matches!(self, L22 | T23 | T24 | T25 | L26 | T27 | T28)
    }

    fn normal_pairs(self) -> bool {
        use TheoremId::*;
        matches!(self, T24 | T25 | T27 | T28)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string() == up)
            .ok_or_else(|| {
                let known: Vec<String> = TheoremId::ALL.iter().map(|t| t.to_string()).collect();
                format!("unknown theorem '{s}' (known: {})", known.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub max_nodes: usize,
    pub fuel: usize,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_nodes: 6, fuel: 100, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub subjects: Vec<String>,
    pub pass: bool,
    pub measures: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub title: String,
    pub max_nodes: usize,
    pub fuel: usize,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub entries: Vec<Entry>,
    pub pass: bool,
}

impl TheoremReport {
    pub fn first_failure(&self) -> Option<&Entry> {
        self.entries.iter().find(|e| !e.pass)
    }

    /// Human-readable table, one line per checked subject.
    pub fn table(&self) -> String {
        let mut out = format!("{} ({})\n", self.theorem, self.title);
        for e in &self.entries {
            let ms: Vec<String> = e.measures.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "{:4}  {:<40}  {}",
                if e.pass { "ok" } else { "FAIL" },
                e.subjects.join("  |  "),
                ms.join(" ")
            ));
            if let Some(d) = &e.detail {
                out.push_str(&format!("  -- {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{self}\n"));
        out
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} passed, {} failed, {} skipped (max-nodes {}, fuel {}) {}",
            self.theorem,
            self.checked,
            self.passed,
            self.failed,
            self.skipped,
            self.max_nodes,
            self.fuel,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    One(Term),
    Two(Term, Term),
}

impl Subject {
    fn names(&self) -> Vec<String> {
        match self {
            Subject::One(t) => vec![t.to_string()],
            Subject::Two(t, u) => vec![t.to_string(), u.to_string()],
        }
    }
}

/// Closed terms with at most `max_nodes` nodes, or ordered pairs of them.
pub fn corpus_for(id: TheoremId, max_nodes: usize) -> Vec<Subject> {
    let terms: Vec<Term> = enumerate_terms(max_nodes, true).collect();
    if !id.on_pairs() {
        return terms.into_iter().map(Subject::One).collect();
    }
    let terms: Vec<Term> = if id.normal_pairs() { terms.into_iter().filter(Term::is_normal).collect() } else { terms };
    terms
        .iter()
        .flat_map(|t| terms.iter().map(move |u| Subject::Two(t.clone(), u.clone())))
        .collect()
}

const CHUNK: usize = 256;

/// Check `id` over its default corpus.
pub fn verify_theorem(id: TheoremId, config: VerifyConfig) -> TheoremReport {
    verify_corpus(id, &corpus_for(id, config.max_nodes), config)
}

/// Check `id` over `corpus`. Subjects are processed in chunks on a pool of
/// `config.jobs` workers; entries keep corpus order and checking stops at
/// the end of the first chunk containing a failure.
pub fn verify_corpus(id: TheoremId, corpus: &[Subject], config: VerifyConfig) -> TheoremReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut entries = Vec::new();
    let mut skipped = 0;
    pool.install(|| {
        for chunk in corpus.chunks(CHUNK) {
            let done: Vec<Option<Entry>> = chunk.par_iter().map(|s| check_subject(id, s, config.fuel)).collect();
            let mut failed = false;
            for e in done {
                match e {
                    Some(e) => {
                        failed |= !e.pass;
                        entries.push(e);
                    }
                    None => skipped += 1,
                }
            }
            if failed {
                break;
            }
        }
    });
    let passed = entries.iter().filter(|e| e.pass).count();
    let failed = entries.len() - passed;
    TheoremReport {
        theorem: id,
        title: id.title().into(),
        max_nodes: config.max_nodes,
        fuel: config.fuel,
        checked: entries.len(),
        passed,
        failed,
        skipped,
        entries,
        pass: failed == 0,
    }
}

/// Measures and failed expectations collected for one subject.
#[derive(Default)]
struct Probe {
    measures: BTreeMap<String, usize>,
    failures: Vec<String>,
}

impl Probe {
    fn measure(&mut self, name: &str, v: usize) {
        self.measures.insert(name.into(), v);
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq(&mut self, what: &str, a: usize, b: usize) {
        self.expect(a == b, || format!("{what}: {a} != {b}"));
    }

    fn le(&mut self, what: &str, a: usize, b: usize) {
        self.expect(a <= b, || format!("{what}: {a} > {b}"));
    }

    fn valid(&mut self, what: &str, d: &Derivation) {
        if let Err(v) = check(d) {
            self.failures.push(format!("{what}: {v}"));
        }
    }

    fn fail(&mut self, what: impl fmt::Display) {
        self.failures.push(what.to_string());
    }

    fn into_entry(self, s: &Subject) -> Entry {
        let pass = self.failures.is_empty();
        Entry {
            subjects: s.names(),
            pass,
            measures: self.measures,
            detail: (!pass).then(|| self.failures.join("; ")),
        }
    }
}

fn check_subject(id: TheoremId, s: &Subject, fuel: usize) -> Option<Entry> {
    let mut p = Probe::default();
    let ran = match s {
        Subject::One(t) => single(id, t, fuel, &mut p),
        Subject::Two(t, u) => pair(id, t, u, fuel, &mut p),
    };
    ran.then(|| p.into_entry(s))
}

fn single(id: TheoremId, t: &Term, fuel: usize, p: &mut Probe) -> bool {
    use TheoremId::*;
    match id {
        P3 => subject_reduction(t, fuel, p),
        P5 => head_normal_forms(t, fuel, p),
        T6 => head_measure(t, fuel, p),
        T8 => shrinking_bound(t, fuel, p),
        T9 => unitary_measure(t, fuel, p),
        P10 => normal_derivations(t, fuel, p),
        P12 => normal_types(t, fuel, p),
        P13 => types_bound_derivations(t, fuel, p),
        P17 => dry_minimal(t, fuel, p),
        T19 => dry_representation(t, fuel, p),
        T20 => one_type_normal(t, fuel, p),
        T29 => one_type_neutral(t, fuel, p),
        _ => unreachable!("{id} ranges over pairs"),
    }
}

fn pair(id: TheoremId, t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    use TheoremId::*;
    match id {
        L22 => normalization_pairs(t, u, fuel, p),
        L26 => head_normalization_pairs(t, u, fuel, p),
        T23 => normal_form_bounds(t, u, fuel, p),
        T24 => lax_leftmost(t, u, fuel, p),
        T25 => exact_leftmost(t, u, fuel, p),
        T27 => lax_head(t, u, fuel, p),
        T28 => exact_head(t, u, fuel, p),
        _ => unreachable!("{id} ranges over single terms"),
    }
}

fn leftmost(t: &Term, fuel: usize) -> Option<(Derivation, ReductionTrace)> {
    infer_via_trace(t, fuel).ok().flatten().map(|i| (i.derivation, i.trace))
}

fn head(t: &Term, fuel: usize) -> Option<(Derivation, ReductionTrace)> {
    infer_head_via_trace(t, fuel).ok().flatten().map(|i| (i.derivation, i.trace))
}

fn next_serial(d: &Derivation) -> u32 {
    d.tyvars().iter().map(|v| v.serial + 1).max().unwrap_or(0)
}

/// Every derivation of `t` the suite knows how to build: inferred along
/// both strategies, canonical and head-minimal ones for (head) normal
/// forms, and two substitution images of each.
fn built(t: &Term, fuel: usize) -> Vec<Derivation> {
    let mut out = Vec::new();
    out.extend(leftmost(t, fuel).map(|x| x.0));
    out.extend(head(t, fuel).map(|x| x.0));
    if t.is_normal() {
        out.extend(canonical_nf_derivation(t, &mut TyVarSupply::default()).ok());
    }
    if t.is_head_normal() {
        out.extend(head_minimal_derivation(t, &mut TyVarSupply::default()).ok());
    }
    let base = out.len();
    for i in 0..base {
        let d = &out[i];
        let n = TyVar::x(next_serial(d));
        let grow = TypeSubstitution::single(TyVar::x(0), LinearType::arrow(MultiType::new(vec![LinearType::Var(n)]), LinearType::Var(n)));
        let collapse = TypeSubstitution::from_pairs(d.tyvars().into_iter().map(|v| (v, LinearType::Var(n))));
        let images = [d.subst(&grow), d.subst(&collapse)];
        out.extend(images);
    }
    out
}

fn nodes(d: &Derivation) -> Vec<&Derivation> {
    let mut out = vec![d];
    let mut i = 0;
    while i < out.len() {
        out.extend(out[i].premises.iter());
        i += 1;
    }
    out
}

/// Sub-derivations, at any depth, of built derivations whose subject is normal.
fn normal_nodes(t: &Term, fuel: usize) -> Vec<Derivation> {
    built(t, fuel)
        .iter()
        .flat_map(|d| nodes(d).into_iter().filter(|n| n.term().is_normal()).cloned().collect::<Vec<_>>())
        .collect()
}

fn subject_reduction(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let Some((mut d, trace)) = head(t, fuel) else { return false };
    p.measure("head_steps", trace.len());
    p.measure("size", d.size());
    for (i, step) in trace.steps.iter().enumerate() {
        match reduce_derivation(&d, &step.position) {
            Ok(r) => {
                p.valid("reduced", &r);
                p.eq("head step size drop", d.size(), r.size() + 2);
                match expand_derivation(&r, trace.source_of(i), &step.position) {
                    Ok(back) => {
                        p.valid("expanded", &back);
                        p.expect(back.conclusion == d.conclusion, || "expansion changed the judgment".into());
                        match reduce_derivation(&back, &step.position) {
                            Ok(again) => p.expect(again.alpha_eq(&r), || "reduce after expand differs".into()),
                            Err(e) => p.fail(e),
                        }
                    }
                    Err(e) => p.fail(e),
                }
                d = r;
            }
            Err(e) => {
                p.fail(e);
                return true;
            }
        }
    }
    if let Some((mut d, trace)) = leftmost(t, fuel) {
        p.measure("leftmost_steps", trace.len());
        for step in &trace.steps {
            match reduce_derivation(&d, &step.position) {
                Ok(r) => {
                    p.valid("reduced", &r);
                    p.le("leftmost step size", r.size(), d.size());
                    p.expect(r.ctx() == d.ctx() && r.rhs() == d.rhs(), || "reduction changed the judgment".into());
                    d = r;
                }
                Err(e) => {
                    p.fail(e);
                    break;
                }
            }
        }
    }
    true
}

fn head_normal_forms(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let Ok(h) = head_size(t) else { return false };
    p.measure("head_size", h);
    match head_minimal_derivation(t, &mut TyVarSupply::default()) {
        Ok(d) => {
            p.valid("head-minimal", &d);
            p.eq("head-minimal size", d.size(), h);
        }
        Err(e) => p.fail(e),
    }
    for d in built(t, fuel).iter().filter(|d| d.rhs_linear().is_some()) {
        p.le("head size against derivation", h, d.size());
    }
    true
}

fn head_measure(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let Some((d, trace)) = head(t, fuel) else { return false };
    let n = trace.len();
    let h = head_size(trace.final_term()).expect("head normal");
    p.measure("steps", n);
    p.measure("head_size", h);
    p.measure("size", d.size());
    p.valid("inferred", &d);
    p.eq("2n + |h|h = size", 2 * n + h, d.size());
    for other in built(t, fuel) {
        p.le("2n + |h|h against another derivation", 2 * n + h, other.size());
    }
    true
}

fn shrinking_bound(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let all = built(t, fuel);
    let shrinking: Vec<&Derivation> = all.iter().filter(|d| d.is_shrinking()).collect();
    let trace = normalize(t, Strategy::Leftmost, fuel);
    if !trace.terminated() {
        if all.is_empty() {
            return false;
        }
        p.expect(shrinking.is_empty(), || "shrinking derivation of a term without normal form".into());
        return true;
    }
    let (n, f) = (trace.len(), trace.final_term().inner_size());
    p.measure("steps", n);
    p.measure("inner_size", f);
    p.expect(!shrinking.is_empty(), || "no shrinking derivation".into());
    for d in shrinking {
        p.le("2n + |f| against shrinking derivation", 2 * n + f, d.size());
    }
    true
}

fn unitary_measure(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let Some((d, trace)) = leftmost(t, fuel) else { return false };
    let (n, f) = (trace.len(), trace.final_term().inner_size());
    p.measure("steps", n);
    p.measure("inner_size", f);
    p.measure("size", d.size());
    p.valid("inferred", &d);
    p.expect(d.is_unitary_shrinking(), || "inferred derivation is not unitary shrinking".into());
    p.eq("2n + |f| = size", 2 * n + f, d.size());
    for other in built(t, fuel).iter().filter(|d| d.is_unitary_shrinking()) {
        p.eq("2n + |f| against unitary shrinking derivation", 2 * n + f, other.size());
    }
    true
}

fn normal_derivations(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    if !t.is_normal() {
        return false;
    }
    let f = t.inner_size();
    p.measure("inner_size", f);
    match canonical_nf_derivation(t, &mut TyVarSupply::default()) {
        Ok(d) => {
            p.valid("canonical", &d);
            p.expect(d.is_unitary_shrinking(), || "canonical derivation is not unitary shrinking".into());
            p.eq("canonical size", d.size(), f);
        }
        Err(e) => p.fail(e),
    }
    for d in built(t, fuel).iter().filter(|d| d.is_shrinking()) {
        p.le("|f| against shrinking derivation", f, d.size());
    }
    true
}

fn normal_types(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    if !t.is_normal() {
        return false;
    }
    let f = t.inner_size();
    p.measure("inner_size", f);
    match canonical_nf_derivation(t, &mut TyVarSupply::default()) {
        Ok(d) => p.eq("canonical judgment size", d.judgment_size(), f),
        Err(e) => p.fail(e),
    }
    for d in built(t, fuel).iter().filter(|d| d.is_shrinking()) {
        p.le("|f| against shrinking judgment", f, d.judgment_size());
    }
    true
}

fn types_bound_derivations(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let all = built(t, fuel);
    if all.is_empty() {
        return false;
    }
    let mut count = 0;
    for d in &all {
        for n in nodes(d) {
            if !n.term().is_normal() {
                continue;
            }
            count += 1;
            if n.term().is_neutral() {
                p.expect(n.size() + n.rhs().size() <= n.ctx().size(), || {
                    format!("neutral {}: {} + {} > {}", n.term(), n.size(), n.rhs().size(), n.ctx().size())
                });
            }
            p.expect(n.size() <= n.judgment_size(), || {
                format!("normal {}: {} > {}", n.term(), n.size(), n.judgment_size())
            });
        }
    }
    p.measure("derivations", all.len());
    p.measure("normal_nodes", count);
    true
}

fn dry_minimal(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let phis = normal_nodes(t, fuel);
    if phis.is_empty() {
        return false;
    }
    p.measure("normal_nodes", phis.len());
    for phi in &phis {
        match dry_of(phi, &mut TyVarSupply::default()) {
            Ok((psi, _)) => {
                if let Err(v) = check_two_occurrence(&psi) {
                    p.fail(format!("{} occurs other than twice for {}", v, phi.term()));
                }
                let m = dry_minimality(&psi);
                p.eq(&format!("dry size of {}", phi.term()), m.size, m.judgment_size);
            }
            Err(e) => p.fail(e),
        }
    }
    true
}

fn dry_representation(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let phis = normal_nodes(t, fuel);
    if phis.is_empty() {
        return false;
    }
    p.measure("normal_nodes", phis.len());
    for phi in &phis {
        let (psi, s) = match dry_of(phi, &mut TyVarSupply::default()) {
            Ok(x) => x,
            Err(e) => {
                p.fail(e);
                continue;
            }
        };
        if let Err(v) = check_dry(&psi) {
            p.fail(format!("dry check for {}: {v}", phi.term()));
        }
        let standard = psi.to_standard();
        p.expect(skeleton_eq(&standard, phi), || format!("skeleton differs for {}", phi.term()));
        p.eq("skeletal size", standard.size(), phi.size());
        let back = standard.subst(&s);
        p.expect(back.ctx() == phi.ctx() && back.rhs() == phi.rhs(), || {
            format!("σ does not rebuild {}: got {}", phi.conclusion, back.conclusion)
        });
        let offset = psi.support.iter().map(|v| v.serial + 1).max().unwrap_or(0);
        let map: BTreeMap<TyVar, TyVar> = psi.support.iter().map(|v| (*v, TyVar::x(v.serial + offset))).collect();
        match rename_dry(&psi, &map) {
            Ok(r) => {
                p.expect(check_dry(&r).is_ok(), || format!("renamed dry derivation of {} fails", phi.term()));
                p.eq("renamed size", r.size(), psi.size());
                p.expect(r.skeleton() == psi.skeleton(), || "renaming changed the skeleton".into());
                p.expect(check_two_occurrence(&r).is_ok(), || "renaming broke two-occurrence".into());
            }
            Err(e) => p.fail(e),
        }
    }
    true
}

fn only_one_var(d: &Derivation) -> bool {
    d.tyvars().iter().all(|v| *v == one_type_var())
}

fn one_type_normal(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let phis: Vec<Derivation> = normal_nodes(t, fuel).into_iter().filter(|d| d.rhs_linear().is_some()).collect();
    if phis.is_empty() {
        return false;
    }
    p.measure("normal_nodes", phis.len());
    for phi in &phis {
        match one_type_representation(phi) {
            Ok(psi) => {
                p.valid("one-type", &psi);
                p.expect(skeleton_eq(&psi, phi), || format!("skeleton differs for {}", phi.term()));
                p.expect(only_one_var(&psi), || format!("more than one variable for {}", phi.term()));
                p.eq(&format!("one-type size of {}", phi.term()), psi.size(), psi.judgment_size());
            }
            Err(e) => p.fail(e),
        }
    }
    true
}

fn one_type_neutral(t: &Term, fuel: usize, p: &mut Probe) -> bool {
    let phis = normal_nodes(t, fuel);
    if phis.is_empty() {
        return false;
    }
    let x = LinearType::Var(one_type_var());
    let targets = [x.clone(), LinearType::arrow(MultiType::new(vec![x.clone()]), x)];
    let (mut neutral, mut multi) = (0, 0);
    for phi in &phis {
        if phi.rhs_multi().is_some() {
            multi += 1;
            match one_type_representation(phi) {
                Ok(psi) => {
                    p.valid("one-type multi", &psi);
                    p.expect(skeleton_eq(&psi, phi), || format!("skeleton differs for {}", phi.term()));
                    p.expect(only_one_var(&psi), || format!("more than one variable for {}", phi.term()));
                    p.eq(&format!("multi one-type size of {}", phi.term()), psi.size(), psi.judgment_size());
                }
                Err(e) => p.fail(e),
            }
        } else if phi.term().is_neutral() {
            neutral += 1;
            for target in &targets {
                match one_type_representation_neutral(phi, target) {
                    Ok(psi) => {
                        p.valid("one-type neutral", &psi);
                        p.expect(skeleton_eq(&psi, phi), || format!("skeleton differs for {}", phi.term()));
                        p.expect(psi.rhs() == &Type::Linear(target.clone()), || "target not concluded".into());
                        p.expect(only_one_var(&psi), || format!("more than one variable for {}", phi.term()));
                        p.expect(psi.size() + target.size() == psi.ctx().size(), || {
                            format!("neutral {}: {} + {} != {}", phi.term(), psi.size(), target.size(), psi.ctx().size())
                        });
                    }
                    Err(e) => p.fail(e),
                }
            }
        }
    }
    p.measure("neutral_nodes", neutral);
    p.measure("multi_nodes", multi);
    true
}

/// Joins membership witnesses of `p` and checks the result.
fn composed(pair: &super::ComposablePair, t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> Option<Derivation> {
    let e = TypeContext::empty();
    let b = SearchBudget::default();
    let l = member(&e, t, &Type::Linear(pair.left.clone()), fuel, b);
    let r = member(&e, u, &Type::Multi(pair.right.clone()), fuel, b);
    match (l, r) {
        (Membership::Holds(dl), Membership::Holds(dr)) => match super::compose(&dl, &dr) {
            Ok(d) => {
                p.valid("composed", &d);
                Some(d)
            }
            Err(e) => {
                p.fail(e);
                None
            }
        },
        _ => {
            p.fail(format!("pair {pair} has no membership witnesses"));
            None
        }
    }
}

fn normalization_pairs(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    let tu = Term::app(t.clone(), u.clone());
    let trace = normalize(&tu, Strategy::Leftmost, fuel);
    let found = match pair_from_application(t, u, fuel) {
        Ok(x) => x,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    p.expect(found.is_some() == trace.terminated(), || "pair found iff normalizing fails".into());
    if let Some(pair) = found {
        let (n, f) = (trace.len(), trace.final_term().inner_size());
        p.measure("steps", n);
        p.measure("inner_size", f);
        p.measure("pair_size", pair.size());
        p.expect(pair.shape_ok().is_ok(), || format!("{pair} is not shrinking composable"));
        if let Some(d) = composed(&pair, t, u, fuel, p) {
            p.expect(d.is_shrinking(), || "composed derivation is not shrinking".into());
            p.le("2n + |f| against composed derivation", 2 * n + f, d.size());
        }
    }
    true
}

fn head_normalization_pairs(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    let tu = Term::app(t.clone(), u.clone());
    let trace = normalize(&tu, Strategy::Head, fuel);
    let found = match pair_from_head_application(t, u, fuel) {
        Ok(x) => x,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    p.expect(found.is_some() == trace.terminated(), || "pair found iff head normalizing fails".into());
    if let Some(pair) = found {
        let (n, h) = (trace.len(), head_size(trace.final_term()).expect("head normal"));
        p.measure("steps", n);
        p.measure("head_size", h);
        p.measure("pair_size", pair.size());
        p.expect(pair.shape_ok().is_ok(), || format!("{pair} is not composable"));
        if let Some(d) = composed(&pair, t, u, fuel, p) {
            p.le("2n + |h|h against composed derivation", 2 * n + h, d.size());
        }
    }
    true
}

fn normal_form_bounds(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    let tu = Term::app(t.clone(), u.clone());
    let trace = normalize(&tu, Strategy::Leftmost, fuel);
    if !trace.terminated() {
        return false;
    }
    let f = trace.final_term().inner_size();
    p.measure("inner_size", f);
    match pair_from_application(t, u, fuel) {
        Ok(Some(pair)) => {
            let (_, cod) = pair.left.as_arrow().expect("arrow");
            p.measure("composed_type_size", cod.size());
            p.le("|f| against composed type", f, cod.size());
        }
        Ok(None) => p.fail("no pair for a normalizing application"),
        Err(e) => p.fail(e),
    }
    let canonical = match canonical_nf_derivation(trace.final_term(), &mut TyVarSupply::default()) {
        Ok(d) => d,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    let mut d = canonical;
    for i in (0..trace.len()).rev() {
        d = match expand_derivation(&d, trace.source_of(i), &trace.steps[i].position) {
            Ok(d) => d,
            Err(e) => {
                p.fail(e);
                return true;
            }
        };
    }
    p.valid("pulled back", &d);
    match d.premises.as_slice() {
        [l, _] => {
            let cod = l.rhs_linear().and_then(LinearType::as_arrow).map(|(_, c)| c.size());
            match cod {
                Some(c) => p.eq("|f| against canonical composed type", f, c),
                None => p.fail("left premise is not an arrow"),
            }
        }
        _ => p.fail("pulled back derivation does not end with app"),
    }
    true
}

fn lax_leftmost(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    let pair = match pair_from_application(t, u, fuel) {
        Ok(Some(pair)) => pair,
        Ok(None) => return false,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    match lax_bound_check(t, u, &pair, fuel, Strategy::Leftmost) {
        Ok(r) => {
            p.measure("steps", r.steps);
            p.measure("inner_size", r.result_size);
            p.measure("pair_size", r.pair_size);
            p.expect(r.holds, || format!("{r}"));
        }
        Err(e) => p.fail(e),
    }
    match exact_pair(t, u, fuel, Strategy::Leftmost) {
        Ok(e) => match lax_bound_check(t, u, &e.pair, fuel, Strategy::Leftmost) {
            Ok(r) => {
                p.measure("dry_pair_size", r.pair_size);
                p.expect(r.holds, || format!("{r}"));
            }
            Err(e) => p.fail(e),
        },
        Err(e) => p.fail(e),
    }
    true
}

fn exact_leftmost(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    if !normalize(&Term::app(t.clone(), u.clone()), Strategy::Leftmost, fuel).terminated() {
        return false;
    }
    let e = match exact_pair(t, u, fuel, Strategy::Leftmost) {
        Ok(e) => e,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    p.measure("steps", e.report.steps);
    p.measure("inner_size", e.report.result_size);
    p.measure("pair_size", e.report.pair_size);
    p.expect(e.report.holds, || e.report.to_string());
    let mut bare = e.pair.clone();
    let s = bare.witness.take().unwrap_or_default();
    match is_composable_up_to_subst(&bare, &s, t, u, fuel) {
        Ok(Verdict::Yes) => {}
        Ok(v) => p.fail(format!("dry pair not composable up to σ: {v:?}")),
        Err(err) => p.fail(err),
    }
    bare.kind = PairKind::Plain;
    let e0 = TypeContext::empty();
    let b = SearchBudget::default();
    p.expect(member(&e0, t, &Type::Linear(bare.left.clone()), fuel, b).holds(), || format!("{} is not a type of {t}", bare.left));
    p.expect(member(&e0, u, &Type::Multi(bare.right.clone()), fuel, b).holds(), || format!("{} is not a type of {u}", bare.right));
    true
}

fn lax_head(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    let pair = match pair_from_head_application(t, u, fuel) {
        Ok(Some(pair)) => pair,
        Ok(None) => return false,
        Err(e) => {
            p.fail(e);
            return true;
        }
    };
    match lax_bound_check(t, u, &pair, fuel, Strategy::Head) {
        Ok(r) => {
            p.measure("steps", r.steps);
            p.measure("head_size", r.result_size);
            p.measure("pair_size", r.pair_size);
            p.expect(r.holds, || format!("{r}"));
        }
        Err(e) => p.fail(e),
    }
    true
}

fn exact_head(t: &Term, u: &Term, fuel: usize, p: &mut Probe) -> bool {
    if !normalize(&Term::app(t.clone(), u.clone()), Strategy::Head, fuel).terminated() {
        return false;
    }
    match exact_pair(t, u, fuel, Strategy::Head) {
        Ok(e) => {
            p.measure("steps", e.report.steps);
            p.measure("head_size", e.report.result_size);
            p.measure("pair_size", e.report.pair_size);
            p.expect(e.report.holds, || e.report.to_string());
            let e0 = TypeContext::empty();
            let b = SearchBudget::default();
            let (l, m) = (&e.pair.left, &e.pair.right);
            p.expect(member(&e0, t, &Type::Linear(l.clone()), fuel, b).holds(), || format!("{l} is not a type of {t}"));
            p.expect(member(&e0, u, &Type::Multi(m.clone()), fuel, b).holds(), || format!("{m} is not a type of {u}"));
        }
        Err(e) => p.fail(e),
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(id: TheoremId, max_nodes: usize) -> TheoremReport {
        verify_theorem(id, VerifyConfig { max_nodes, fuel: 50, jobs: 2 })
    }

    #[test]
    fn ids_parse_and_print() {
        for id in TheoremId::all() {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), *id);
        }
        assert_eq!("t25".parse::<TheoremId>().unwrap(), TheoremId::T25);
        assert!("T99".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_corpora_pass() {
        for id in TheoremId::all() {
            let n = if id.on_pairs() { 4 } else { 5 };
            let r = quick(*id, n);
            assert!(r.pass, "{}", r.table());
            assert!(r.checked > 0, "{id}");
        }
    }

    #[test]
    fn reports_are_deterministic_across_job_counts() {
        let a = verify_theorem(TheoremId::T9, VerifyConfig { max_nodes: 6, fuel: 50, jobs: 1 });
        let b = verify_theorem(TheoremId::T9, VerifyConfig { max_nodes: 6, fuel: 50, jobs: 4 });
        assert_eq!(a, b);
    }

    #[test]
    fn subjects_without_result_are_skipped() {
        use crate::syntax::{delta, omega};
        let r = verify_corpus(TheoremId::T9, &[Subject::One(omega())], VerifyConfig::default());
        assert_eq!((r.checked, r.skipped), (0, 1));
        let r = verify_corpus(TheoremId::L22, &[Subject::Two(delta(), delta())], VerifyConfig::default());
        assert_eq!(r.checked, 1);
        assert!(r.pass);
    }
}
