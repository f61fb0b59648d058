//! The relational instantiation: `W` is the powerset of the universe, `S` the
//! one-point set, and morphisms are relations between tuples of subsets.

pub mod det;
pub mod diagram;
pub mod laws;
pub mod morphism;
pub mod object;

pub use det::{
    conservative_det, conservative_det_diagram, determiner_meaning, determiner_meaning_diagram, detnoun_state,
    DetWiring, DEFAULT_COMPOSITE_CAP,
};
pub use diagram::{Block, Diagram, MemoDiagram, Weight};
pub use laws::{check_bialgebra_laws, check_snake_equations, powerset_structure, DEFAULT_LAW_CAP};
pub use morphism::{
    compose, delta_w, epsilon_w, eta_w, identity, iota_w, mu_w, quantifier_morphism, sentence_counit, state,
    subset_state, symmetry, tensor, zeta_w, RelMorphism, DEFAULT_MORPHISM_CAP,
};
pub use object::{Atom, ObjectType, Point, STAR};
