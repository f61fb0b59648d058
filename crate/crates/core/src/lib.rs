//! Finite-model evaluation of generalised quantifiers in a compact closed,
//! bialgebraic setting.
//!
//! Quantified sentences are interpreted three ways and cross-checked:
//! set-theoretically ([`eval::oracle`]), as relational string diagrams over
//! the powerset of the universe ([`rel`]), and as linear maps on the vector
//! space spanned by that powerset ([`vect`]).

pub mod error;
pub mod eval;
pub mod finite_model;
pub mod grid;
pub mod lang;
pub mod laws;
pub mod model_file;
pub mod quantifier;
pub mod rel;
pub mod vect;

pub use error::{Error, Result};
pub use finite_model::{BinRel, Mask, Subset, Universe};
pub use quantifier::{GeneralizedQuantifier, Monotonicity, QuantifierKind};
