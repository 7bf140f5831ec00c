//! Multi types for the untyped λ-calculus.
//!
//! Non-idempotent intersection types with their dry variant for normal
//! forms, head and leftmost-outermost reduction, and executable checks of
//! the bounds that derivations, types and composable pairs of types give on
//! evaluation length and normal-form size.
//!
//! - [`syntax`]: terms, parsing, printing, sizes, classification, enumeration.
//! - [`reduction`]: β, head, and leftmost steps; fuel-bounded traces.
//! - [`types`]: linear and multi types, contexts, sizes, shrinking grammars,
//!   type substitutions.
//! - [`derivation`]: typing derivations, checking, skeletons, constructive
//!   subject reduction and expansion, synthesis from normal forms.
//! - [`dry`]: dry derivations, their witnessing substitutions, and the
//!   single-variable size representation.
//! - [`semantics`]: composable pairs and the bound theorems, plus the corpus
//!   driver used by the `verify` command.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod derivation;
pub mod dry;
pub mod reduction;
pub mod semantics;
pub mod syntax;
pub mod types;

pub use derivation::{Derivation, Judgment, Rule};
pub use dry::DryDerivation;
pub use reduction::{ReductionTrace, Strategy};
pub use syntax::{Position, Term};
pub use types::{LinearType, MultiType, Type, TypeContext, TypeSubstitution, TyVar, TyVarSupply};
