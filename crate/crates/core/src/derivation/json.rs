//! JSON encoding of derivations. Subjects are printed terms; decoding does
//! not validate the rules, which is the job of [`super::check`].

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Derivation, DerivationError, Judgment, Rule};
use crate::syntax::parse;
use crate::types::{Type, TypeContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub rule: Rule,
    pub ctx: TypeContext,
    pub term: String,
    pub rhs: Type,
    #[serde(default)]
    pub premises: Vec<DerivationJson>,
}

impl From<&Derivation> for DerivationJson {
    fn from(d: &Derivation) -> Self {
        DerivationJson {
            rule: d.rule,
            ctx: d.ctx().clone(),
            term: d.term().to_string(),
            rhs: d.rhs().clone(),
            premises: d.premises.iter().map(DerivationJson::from).collect(),
        }
    }
}

impl TryFrom<&DerivationJson> for Derivation {
    type Error = DerivationError;

    fn try_from(j: &DerivationJson) -> Result<Self, Self::Error> {
        let term = parse(&j.term).map_err(|e| DerivationError::IllFormed(format!("term '{}': {e}", j.term)))?;
        Ok(Derivation {
            rule: j.rule,
            conclusion: Judgment { ctx: j.ctx.clone(), term, rhs: j.rhs.clone() },
            premises: j.premises.iter().map(Derivation::try_from).collect::<Result<_, _>>()?,
        })
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DerivationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DerivationJson::deserialize(d)?;
        Derivation::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl Derivation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivations always serialize")
    }

    pub fn from_json(text: &str) -> Result<Derivation, serde_json::Error> {
        serde_json::from_str(text)
    }
}
