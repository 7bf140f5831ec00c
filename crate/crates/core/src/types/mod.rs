//! Linear and multi types, type contexts, sizes, the shrinking grammars, and
//! type substitutions.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse_linear, parse_multi, parse_type, TypeParseError};

/// A type variable `X0`, `Y3`, …
///
/// Ordered by serial first, so variables issued by one supply sort in issue
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TyVar {
    pub serial: u32,
    pub base: char,
}

impl TyVar {
    pub fn new(base: char, serial: u32) -> Self {
        TyVar { serial, base }
    }

    pub fn x(serial: u32) -> Self {
        TyVar::new('X', serial)
    }
}

impl fmt::Display for TyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.serial)
    }
}

impl FromStr for TyVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let base = chars.next().filter(|c| c.is_ascii_uppercase());
        let digits: String = chars.collect();
        match base {
            Some(b) if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) => digits
                .parse()
                .map(|n| TyVar::new(b, n))
                .map_err(|e| format!("bad type variable '{s}': {e}")),
            _ => Err(format!("bad type variable '{s}' (expected e.g. X0)")),
        }
    }
}

impl Serialize for TyVar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TyVar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `L ::= X | M ⊸ L`
///
/// The derived order puts variables before arrows and compares arrows by
/// domain, then codomain; multi types rely on it for their canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearType {
    Var(TyVar),
    Arrow { dom: MultiType, cod: Box<LinearType> },
}

/// A finite multiset of linear types, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<LinearType>", into = "Vec<LinearType>")]
pub struct MultiType(Vec<LinearType>);

impl From<Vec<LinearType>> for MultiType {
    fn from(v: Vec<LinearType>) -> Self {
        MultiType::new(v)
    }
}

impl From<MultiType> for Vec<LinearType> {
    fn from(m: MultiType) -> Self {
        m.0
    }
}

/// Either layer; multi types appear exactly as conclusions of `many`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Type {
    Linear(LinearType),
    Multi(MultiType),
}

impl LinearType {
    pub fn var(v: TyVar) -> Self {
        LinearType::Var(v)
    }

    pub fn arrow(dom: MultiType, cod: LinearType) -> Self {
        LinearType::Arrow { dom, cod: Box::new(cod) }
    }

    /// `[L] ⊸ L`, written `L²` in the examples.
    pub fn squared(l: LinearType) -> Self {
        LinearType::arrow(MultiType::singleton(l.clone()), l)
    }

    pub fn as_var(&self) -> Option<TyVar> {
        match self {
            LinearType::Var(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_arrow(&self) -> Option<(&MultiType, &LinearType)> {
        match self {
            LinearType::Arrow { dom, cod } => Some((dom, cod)),
            _ => None,
        }
    }

    /// `|X| = 0`, `|M ⊸ L| = |M| + |L| + 1`.
    pub fn size(&self) -> usize {
        match self {
            LinearType::Var(_) => 0,
            LinearType::Arrow { dom, cod } => dom.size() + cod.size() + 1,
        }
    }

    pub fn is_right(&self) -> bool {
        match self {
            LinearType::Var(_) => true,
            LinearType::Arrow { dom, cod } => dom.is_left() && cod.is_right(),
        }
    }

    pub fn is_left(&self) -> bool {
        match self {
            LinearType::Var(_) => true,
            LinearType::Arrow { dom, cod } => dom.is_right() && cod.is_left(),
        }
    }

    pub fn is_unitary_right(&self) -> bool {
        match self {
            LinearType::Var(_) => true,
            LinearType::Arrow { dom, cod } => dom.is_unitary_left() && cod.is_unitary_right(),
        }
    }

    pub fn is_unitary_left(&self) -> bool {
        match self {
            LinearType::Var(_) => true,
            LinearType::Arrow { dom, cod } => dom.is_unitary_right() && cod.is_unitary_left(),
        }
    }

    pub fn collect_vars(&self, acc: &mut BTreeSet<TyVar>) {
        match self {
            LinearType::Var(v) => {
                acc.insert(*v);
            }
            LinearType::Arrow { dom, cod } => {
                dom.collect_vars(acc);
                cod.collect_vars(acc);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    pub fn count_occurrences(&self, acc: &mut BTreeMap<TyVar, usize>) {
        match self {
            LinearType::Var(v) => *acc.entry(*v).or_default() += 1,
            LinearType::Arrow { dom, cod } => {
                dom.count_occurrences(acc);
                cod.count_occurrences(acc);
            }
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.size()
    }
}

impl MultiType {
    pub fn new(mut items: Vec<LinearType>) -> Self {
        items.sort();
        MultiType(items)
    }

    /// The empty multi type `0`.
    pub fn empty() -> Self {
        MultiType(Vec::new())
    }

    pub fn singleton(l: LinearType) -> Self {
        MultiType(vec![l])
    }

    pub fn items(&self) -> &[LinearType] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LinearType> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset sum `⊎`.
    pub fn sum(&self, other: &MultiType) -> MultiType {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        MultiType::new(v)
    }

    /// Remove one occurrence of `l`, if present.
    pub fn remove_one(&self, l: &LinearType) -> Option<MultiType> {
        let i = self.0.iter().position(|x| x == l)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(MultiType(v))
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(LinearType::size).sum()
    }

    pub fn is_right(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(LinearType::is_right)
    }

    pub fn is_left(&self) -> bool {
        self.0.iter().all(LinearType::is_left)
    }

    pub fn is_unitary_right(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_unitary_right()
    }

    pub fn is_unitary_left(&self) -> bool {
        self.0.iter().all(LinearType::is_unitary_left)
    }

    pub fn collect_vars(&self, acc: &mut BTreeSet<TyVar>) {
        for l in &self.0 {
            l.collect_vars(acc);
        }
    }

    pub fn vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    pub fn count_occurrences(&self, acc: &mut BTreeMap<TyVar, usize>) {
        for l in &self.0 {
            l.count_occurrences(acc);
        }
    }
}

impl FromIterator<LinearType> for MultiType {
    fn from_iter<I: IntoIterator<Item = LinearType>>(iter: I) -> Self {
        MultiType::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MultiType {
    type Item = &'a LinearType;
    type IntoIter = std::slice::Iter<'a, LinearType>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Type {
    pub fn size(&self) -> usize {
        match self {
            Type::Linear(l) => l.size(),
            Type::Multi(m) => m.size(),
        }
    }

    pub fn as_linear(&self) -> Option<&LinearType> {
        match self {
            Type::Linear(l) => Some(l),
            Type::Multi(_) => None,
        }
    }

    pub fn as_multi(&self) -> Option<&MultiType> {
        match self {
            Type::Multi(m) => Some(m),
            Type::Linear(_) => None,
        }
    }

    pub fn is_multi(&self) -> bool {
        matches!(self, Type::Multi(_))
    }

    pub fn vars(&self) -> BTreeSet<TyVar> {
        match self {
            Type::Linear(l) => l.vars(),
            Type::Multi(m) => m.vars(),
        }
    }

    pub fn count_occurrences(&self, acc: &mut BTreeMap<TyVar, usize>) {
        match self {
            Type::Linear(l) => l.count_occurrences(acc),
            Type::Multi(m) => m.count_occurrences(acc),
        }
    }
}

impl From<LinearType> for Type {
    fn from(l: LinearType) -> Self {
        Type::Linear(l)
    }
}

impl From<MultiType> for Type {
    fn from(m: MultiType) -> Self {
        Type::Multi(m)
    }
}

/// Flags of the shrinking grammars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeClass {
    pub is_right: bool,
    pub is_left: bool,
    pub is_unitary_right: bool,
    pub is_unitary_left: bool,
}

pub fn classify_type(t: &Type) -> TypeClass {
    match t {
        Type::Linear(l) => TypeClass {
            is_right: l.is_right(),
            is_left: l.is_left(),
            is_unitary_right: l.is_unitary_right(),
            is_unitary_left: l.is_unitary_left(),
        },
        Type::Multi(m) => TypeClass {
            is_right: m.is_right(),
            is_left: m.is_left(),
            is_unitary_right: m.is_unitary_right(),
            is_unitary_left: m.is_unitary_left(),
        },
    }
}

impl fmt::Display for LinearType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearType::Var(v) => write!(f, "{v}"),
            LinearType::Arrow { dom, cod } => write!(f, "{dom} -o {cod}"),
        }
    }
}

impl fmt::Display for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        f.write_str("[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Linear(l) => write!(f, "{l}"),
            Type::Multi(m) => write!(f, "{m}"),
        }
    }
}

/// A type context: term variables to nonempty multi types. Absent variables
/// have type `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeContext(BTreeMap<String, MultiType>);

impl TypeContext {
    pub fn empty() -> Self {
        TypeContext(BTreeMap::new())
    }

    pub fn singleton(x: impl Into<String>, m: MultiType) -> Self {
        let mut c = TypeContext::empty();
        c.set(x, m);
        c
    }

    /// `Γ(x)`
    pub fn get(&self, x: &str) -> MultiType {
        self.0.get(x).cloned().unwrap_or_default()
    }

    /// Set `Γ(x) := m`; setting `0` removes `x` from the domain.
    pub fn set(&mut self, x: impl Into<String>, m: MultiType) {
        let x = x.into();
        if m.is_empty() {
            self.0.remove(&x);
        } else {
            self.0.insert(x, m);
        }
    }

    /// `Γ \\ x` together with `Γ(x)`.
    pub fn split_off(&self, x: &str) -> (TypeContext, MultiType) {
        let mut c = self.clone();
        let m = c.0.remove(x).unwrap_or_default();
        (c, m)
    }

    pub fn without(&self, x: &str) -> TypeContext {
        self.split_off(x).0
    }

    pub fn contains(&self, x: &str) -> bool {
        self.0.contains_key(x)
    }

    pub fn domain(&self) -> BTreeSet<String> {
        self.0.keys().cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &MultiType)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise multiset sum `Γ ⊎ Δ`.
    pub fn sum(&self, other: &TypeContext) -> TypeContext {
        let mut out = self.clone();
        for (x, m) in &other.0 {
            let merged = out.get(x).sum(m);
            out.set(x.clone(), merged);
        }
        out
    }

    pub fn sum_all<'a>(ctxs: impl IntoIterator<Item = &'a TypeContext>) -> TypeContext {
        ctxs.into_iter().fold(TypeContext::empty(), |acc, c| acc.sum(c))
    }

    pub fn size(&self) -> usize {
        self.0.values().map(MultiType::size).sum()
    }

    pub fn is_left(&self) -> bool {
        self.0.values().all(MultiType::is_left)
    }

    pub fn is_unitary_left(&self) -> bool {
        self.0.values().all(MultiType::is_unitary_left)
    }

    pub fn vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        for m in self.0.values() {
            m.collect_vars(&mut acc);
        }
        acc
    }

    pub fn count_occurrences(&self, acc: &mut BTreeMap<TyVar, usize>) {
        for m in self.0.values() {
            m.count_occurrences(acc);
        }
    }

    /// Rename a term variable.
    pub fn rename(&self, from: &str, to: &str) -> TypeContext {
        if from == to {
            return self.clone();
        }
        let (mut rest, m) = self.split_off(from);
        let merged = rest.get(to).sum(&m);
        rest.set(to, merged);
        rest
    }
}

impl fmt::Display for TypeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{m}")?;
        }
        Ok(())
    }
}

/// JSON: a list of `[variable, multitype]` pairs.
impl Serialize for TypeContext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&String, &MultiType)> = self.0.iter().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypeContext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(String, MultiType)> = Vec::deserialize(d)?;
        let mut c = TypeContext::empty();
        for (x, m) in v {
            let merged = c.get(&x).sum(&m);
            c.set(x, merged);
        }
        Ok(c)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstError {
    #[error("substitutions overlap on {0}")]
    Overlap(TyVar),
}

/// A finite map from type variables to linear types, identity elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeSubstitution(BTreeMap<TyVar, LinearType>);

impl TypeSubstitution {
    pub fn identity() -> Self {
        TypeSubstitution(BTreeMap::new())
    }

    pub fn single(x: TyVar, l: LinearType) -> Self {
        let mut s = TypeSubstitution::identity();
        s.insert(x, l);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (TyVar, LinearType)>) -> Self {
        let mut s = TypeSubstitution::identity();
        for (x, l) in pairs {
            s.insert(x, l);
        }
        s
    }

    /// Bindings `X ← X` are dropped.
    pub fn insert(&mut self, x: TyVar, l: LinearType) {
        if l == LinearType::Var(x) {
            self.0.remove(&x);
        } else {
            self.0.insert(x, l);
        }
    }

    pub fn remove(&mut self, x: &TyVar) -> Option<LinearType> {
        self.0.remove(x)
    }

    pub fn get(&self, x: &TyVar) -> Option<&LinearType> {
        self.0.get(x)
    }

    pub fn domain(&self) -> BTreeSet<TyVar> {
        self.0.keys().copied().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TyVar, &LinearType)> {
        self.0.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn linear(&self, l: &LinearType) -> LinearType {
        match l {
            LinearType::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| l.clone()),
            LinearType::Arrow { dom, cod } => LinearType::arrow(self.multi(dom), self.linear(cod)),
        }
    }

    pub fn multi(&self, m: &MultiType) -> MultiType {
        m.iter().map(|l| self.linear(l)).collect()
    }

    pub fn ty(&self, t: &Type) -> Type {
        match t {
            Type::Linear(l) => Type::Linear(self.linear(l)),
            Type::Multi(m) => Type::Multi(self.multi(m)),
        }
    }

    pub fn context(&self, c: &TypeContext) -> TypeContext {
        let mut out = TypeContext::empty();
        for (x, m) in c.entries() {
            out.set(x.clone(), self.multi(m));
        }
        out
    }

    /// Sequential composition: applying the result equals applying `self`
    /// and then `next`.
    pub fn then(&self, next: &TypeSubstitution) -> TypeSubstitution {
        let mut out = TypeSubstitution::identity();
        for (x, l) in &self.0 {
            out.insert(*x, next.linear(l));
        }
        for (x, l) in &next.0 {
            if !self.0.contains_key(x) {
                out.insert(*x, l.clone());
            }
        }
        out
    }

    /// Union of substitutions with disjoint domains.
    pub fn disjoint_union(&self, other: &TypeSubstitution) -> Result<TypeSubstitution, SubstError> {
        let mut out = self.clone();
        for (x, l) in &other.0 {
            if out.0.contains_key(x) {
                return Err(SubstError::Overlap(*x));
            }
            out.0.insert(*x, l.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for TypeSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, l)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} <- {l}")?;
        }
        f.write_str("}")
    }
}

/// JSON: an object from variable names to linear types.
impl Serialize for TypeSubstitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, &LinearType> = self.0.iter().map(|(k, v)| (k.to_string(), v)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypeSubstitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m: BTreeMap<String, LinearType> = BTreeMap::deserialize(d)?;
        let mut s = TypeSubstitution::identity();
        for (k, v) in m {
            s.insert(k.parse().map_err(serde::de::Error::custom)?, v);
        }
        Ok(s)
    }
}

/// Source of fresh type variables; an explicit value threaded by callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TyVarSupply {
    pub next: u32,
    pub base: char,
}

impl Default for TyVarSupply {
    fn default() -> Self {
        TyVarSupply { next: 0, base: 'X' }
    }
}

impl TyVarSupply {
    pub fn starting_at(next: u32) -> Self {
        TyVarSupply { next, base: 'X' }
    }

    pub fn fresh(&mut self) -> TyVar {
        let v = TyVar::new(self.base, self.next);
        self.next += 1;
        v
    }

    pub fn fresh_n(&mut self, n: usize) -> Vec<TyVar> {
        (0..n).map(|_| self.fresh()).collect()
    }

    /// Skip past every serial used in `vars` (of this supply's base).
    pub fn avoid(&mut self, vars: &BTreeSet<TyVar>) {
        if let Some(max) = vars.iter().filter(|v| v.base == self.base).map(|v| v.serial).max() {
            self.next = self.next.max(max + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: u32) -> LinearType {
        LinearType::Var(TyVar::x(n))
    }

    fn arrow(dom: Vec<LinearType>, cod: LinearType) -> LinearType {
        LinearType::arrow(MultiType::new(dom), cod)
    }

    /// `[[Z] ⊸ Z, Z] ⊸ Z`
    fn delta_type(z: LinearType) -> LinearType {
        arrow(vec![LinearType::squared(z.clone()), z.clone()], z)
    }

    #[test]
    fn type_sizes() {
        assert_eq!(var(0).size(), 0);
        assert_eq!(delta_type(var(0)).size(), 2);
        let w2 = LinearType::squared(var(1));
        let m = MultiType::singleton(delta_type(w2));
        assert_eq!(m.size(), 6);
    }

    #[test]
    fn context_sizes() {
        assert_eq!(TypeContext::empty().size(), 0);
        assert_eq!(TypeContext::singleton("x", MultiType::singleton(var(0))).size(), 0);
        let m = MultiType::new(vec![LinearType::squared(var(0)), var(0)]);
        assert_eq!(TypeContext::singleton("x", m).size(), 1);
    }

    #[test]
    fn shrinking_examples() {
        let c = classify_type(&Type::Multi(MultiType::singleton(var(0))));
        assert!(c.is_left && c.is_right && c.is_unitary_left && c.is_unitary_right);
        let c = classify_type(&Type::Multi(MultiType::empty()));
        assert!(c.is_left && !c.is_right);
        let c = classify_type(&Type::Multi(MultiType::singleton(arrow(vec![], var(0)))));
        assert!(c.is_right && !c.is_left);
    }

    #[test]
    fn context_sum() {
        let x = TypeContext::singleton("x", MultiType::singleton(var(0)));
        assert_eq!(x.sum(&x).get("x"), MultiType::new(vec![var(0), var(0)]));
        assert_eq!(x.sum(&TypeContext::empty()), x);
        let y = TypeContext::singleton("y", MultiType::singleton(var(1)));
        let s = x.sum(&y);
        assert_eq!(s.domain().len(), 2);
        assert_eq!(s.get("y"), MultiType::singleton(var(1)));
        let mut c = s.clone();
        c.set("z", MultiType::empty());
        assert_eq!(c, s);
    }

    #[test]
    fn substitution_examples() {
        let z = TyVar::x(0);
        let w2 = LinearType::squared(var(1));
        let s = TypeSubstitution::single(z, w2.clone());
        assert_eq!(s.linear(&delta_type(var(0))), delta_type(w2));
        assert_eq!(TypeSubstitution::identity().linear(&delta_type(var(0))), delta_type(var(0)));
        let six = TypeSubstitution::single(z, LinearType::squared(var(1))).linear(&delta_type(var(0)));
        assert_eq!(six.arrow_count(), 6);
    }

    #[test]
    fn composition_is_sequential() {
        let a = TypeSubstitution::single(TyVar::x(0), LinearType::squared(var(1)));
        let b = TypeSubstitution::single(TyVar::x(1), var(2));
        let c = a.then(&b);
        let t = arrow(vec![var(0)], var(1));
        assert_eq!(c.linear(&t), b.linear(&a.linear(&t)));
        assert!(a.disjoint_union(&b).is_ok());
        assert_eq!(a.disjoint_union(&a), Err(SubstError::Overlap(TyVar::x(0))));
    }

    #[test]
    fn supply_is_monotone() {
        let mut s = TyVarSupply::default();
        assert_eq!(s.fresh_n(2), vec![TyVar::x(0), TyVar::x(1)]);
        let before = s;
        assert!(s.fresh_n(0).is_empty());
        assert_eq!(s, before);
        let a: BTreeSet<_> = s.fresh_n(3).into_iter().collect();
        let b: BTreeSet<_> = s.fresh_n(3).into_iter().collect();
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn multisets_are_canonical() {
        let a = MultiType::new(vec![var(2), LinearType::squared(var(0)), var(1)]);
        let b = MultiType::new(vec![var(1), var(2), LinearType::squared(var(0))]);
        assert_eq!(a, b);
        assert_eq!(MultiType::new(a.items().to_vec()), a);
        assert_eq!(a.to_string(), "[X1, X2, [X0] -o X0]");
    }

    #[test]
    fn json_shapes() {
        let t = arrow(vec![var(0)], var(0));
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"arrow":{"dom":[{"var":"X0"}],"cod":{"var":"X0"}}}"#);
        let back: LinearType = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        let ty: Type = serde_json::from_str(r#"[{"var":"X1"},{"var":"X0"}]"#).unwrap();
        assert_eq!(ty, Type::Multi(MultiType::new(vec![var(0), var(1)])));
    }
}
