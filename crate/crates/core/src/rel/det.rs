//! Determiners as morphisms `W → W` and the conservative-determiner composite
//!
//! ```text
//! (1_W ⊗ ε) ∘ (1_W ⊗ μ ⊗ ε ⊗ 1_W) ∘ (1_W ⊗ d ⊗ δ ⊗ 1_{W⊗W}) ∘ (1_W ⊗ η ⊗ 1_{W⊗W}) ∘ (η ⊗ 1_W)
//! ```
//!
//! Traced point by point, the composite relates `N` to `B` exactly when some
//! `D` has `B d D` and `D ∩ B = N`. Read in the other direction it sends a noun
//! denotation `B` to every `D ∩ B` with `B d D`, which is the quantifier made
//! conservative; [`determiner_meaning`] is that converse.

use std::sync::Arc;

use crate::error::{cap_check, Result};
use crate::finite_model::Subset;

use super::diagram::{Block, Diagram};
use super::morphism::*;
use super::object::ObjectType;

/// Largest universe for sentence-level composites.
pub const DEFAULT_COMPOSITE_CAP: usize = 5;

/// How the two legs of the inner cap are routed into `d` and `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetWiring {
    /// Stage three is `1_W ⊗ d ⊗ δ ⊗ 1_{W⊗W}`, as written.
    Displayed,
    /// Stage three is `1_W ⊗ δ ⊗ d ⊗ 1_{W⊗W}`; the later stages are unchanged.
    SwappedLegs,
}

impl DetWiring {
    pub const ALL: [DetWiring; 2] = [DetWiring::Displayed, DetWiring::SwappedLegs];
}

/// The five-stage composite as a diagram `W → W`.
pub fn conservative_det_diagram(d: &RelMorphism, wiring: DetWiring) -> Result<Diagram> {
    let w1 = ObjectType::w(1);
    expect_type(d, &w1, &w1)?;
    let u = d.universe();
    cap_check("composite universe size", u.size(), DEFAULT_COMPOSITE_CAP)?;

    let id = |k| Block::Identity(ObjectType::w(k));
    let eta: Block = eta_w(u)?.into();
    let eps: Block = epsilon_w(u)?.into();
    let det: Block = Block::Morphism(Arc::new(d.clone()));
    let delta: Block = delta_w(u)?.into();
    let mu: Block = mu_w(u)?.into();

    let stage3 = match wiring {
        DetWiring::Displayed => vec![id(1), det, delta, id(2)],
        DetWiring::SwappedLegs => vec![id(1), delta, det, id(2)],
    };
    Diagram::identity(u, w1)
        .then_layer(vec![eta.clone(), id(1)])?
        .then_layer(vec![id(1), eta, id(2)])?
        .then_layer(stage3)?
        .then_layer(vec![id(1), mu, eps.clone(), id(1)])?
        .then_layer(vec![id(1), eps])
}

/// The displayed composite, materialized.
pub fn conservative_det(d: &RelMorphism) -> Result<RelMorphism> {
    conservative_det_diagram(d, DetWiring::Displayed)?.to_morphism()
}

/// The determiner meaning used for sentences: the converse of the displayed
/// composite, `B ↦ D ∩ B` for every `B d D`.
pub fn determiner_meaning_diagram(d: &RelMorphism) -> Result<Diagram> {
    Ok(conservative_det_diagram(d, DetWiring::Displayed)?.converse())
}

pub fn determiner_meaning(d: &RelMorphism) -> Result<RelMorphism> {
    determiner_meaning_diagram(d)?.to_morphism()
}

/// `{ X | n d X }`: the image of the noun state `I → W` under `d`.
pub fn detnoun_state(d: &RelMorphism, n: &Subset) -> Result<Vec<Subset>> {
    let w1 = ObjectType::w(1);
    expect_type(d, &w1, &w1)?;
    if !d.universe().same_as(n.universe()) {
        return Err(crate::error::Error::UniverseMismatch);
    }
    d.image(&[n.bits()]).map(|x| n.universe().subset(x[0])).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::error::Error;
    use crate::finite_model::{masks, Mask, Universe};
    use crate::quantifier::{builtin_kinds, GeneralizedQuantifier, QuantifierKind};

    /// The relation `W → W` whose graph is picked out by the bits of `code`.
    fn relation(u: &Universe, code: u64) -> RelMorphism {
        let pts = ObjectType::w(1).points(u.size());
        let chosen = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone())))
            .enumerate()
            .filter(|(i, _)| code & (1 << i) != 0)
            .map(|(_, p)| p);
        RelMorphism::new(u, ObjectType::w(1), ObjectType::w(1), chosen).unwrap()
    }

    /// Closed form of the displayed composite, derived by tracing the five
    /// stages: `N ↦ B` iff some `D` has `B d D` and `D ∩ B = N`.
    fn traced(d: &RelMorphism) -> BTreeSet<(Mask, Mask)> {
        let n = d.universe().size();
        let mut out = BTreeSet::new();
        for big_n in masks(n) {
            for b in masks(n) {
                if masks(n).any(|dd| d.relates(&[b], &[dd]) && dd & b == big_n) {
                    out.insert((big_n, b));
                }
            }
        }
        out
    }

    fn as_pairs(f: &RelMorphism) -> BTreeSet<(Mask, Mask)> {
        f.graph().iter().map(|(x, y)| (x[0], y[0])).collect()
    }

    #[test]
    fn composite_matches_trace_for_every_small_relation() {
        for n in 0..=1 {
            let u = Universe::anonymous(n).unwrap();
            for code in 0..(1u64 << (1 << (2 * n))) {
                let d = relation(&u, code);
                assert_eq!(as_pairs(&conservative_det(&d).unwrap()), traced(&d));
            }
        }
        // 2^16 relations at size 2; a deterministic stride keeps this quick.
        let u = Universe::anonymous(2).unwrap();
        for code in (0..(1u64 << 16)).step_by(97) {
            let d = relation(&u, code);
            assert_eq!(as_pairs(&conservative_det(&d).unwrap()), traced(&d));
        }
    }

    #[test]
    fn composite_matches_trace_for_builtins() {
        for n in 0..=3 {
            let u = Universe::anonymous(n).unwrap();
            for kind in builtin_kinds() {
                let d = quantifier_morphism(&GeneralizedQuantifier::builtin(kind), &u).unwrap();
                assert_eq!(as_pairs(&conservative_det(&d).unwrap()), traced(&d), "{kind}");
            }
        }
    }

    #[test]
    fn identity_determiner() {
        let u = Universe::anonymous(2).unwrap();
        let id = identity(&u, &ObjectType::w(1)).unwrap();
        // B id B and B ∩ B = B, so the composite is the identity again.
        assert_eq!(conservative_det(&id).unwrap(), id);
    }

    #[test]
    fn one_point_carrier() {
        let u = Universe::anonymous(0).unwrap();
        let empty = RelMorphism::new(&u, ObjectType::w(1), ObjectType::w(1), []).unwrap();
        assert!(conservative_det(&empty).unwrap().is_empty());
        let full = identity(&u, &ObjectType::w(1)).unwrap();
        assert_eq!(conservative_det(&full).unwrap().len(), 1);
    }

    #[test]
    fn swapped_legs_give_back_the_determiner() {
        let u = Universe::anonymous(2).unwrap();
        for kind in builtin_kinds() {
            let d = quantifier_morphism(&GeneralizedQuantifier::builtin(kind), &u).unwrap();
            let swapped = conservative_det_diagram(&d, DetWiring::SwappedLegs)
                .unwrap()
                .to_morphism()
                .unwrap();
            assert_eq!(swapped, d);
        }
    }

    #[test]
    fn meaning_restricts_to_the_noun() {
        let u = Universe::anonymous(3).unwrap();
        let some = quantifier_morphism(&GeneralizedQuantifier::builtin(QuantifierKind::Some), &u).unwrap();
        let meaning = determiner_meaning(&some).unwrap();
        for (b, x) in as_pairs(&meaning) {
            assert_eq!(x & !b, 0);
            assert_ne!(x, 0);
        }
        let n = u.subset(0b011).unwrap();
        let xs: Vec<Mask> = detnoun_state(&meaning, &n).unwrap().iter().map(Subset::bits).collect();
        assert_eq!(xs, vec![0b001, 0b010, 0b011]);
    }

    #[test]
    fn detnoun_examples() {
        let u = Universe::anonymous(3).unwrap();
        let id = identity(&u, &ObjectType::w(1)).unwrap();
        let n = u.subset(0b011).unwrap();
        assert_eq!(detnoun_state(&id, &n).unwrap(), vec![n.clone()]);

        let some = quantifier_morphism(&GeneralizedQuantifier::builtin(QuantifierKind::Some), &u).unwrap();
        let xs = detnoun_state(&some, &n).unwrap();
        assert_eq!(xs.len(), 6);
        assert!(xs.iter().all(|x| x.bits() & n.bits() != 0));

        let empty = RelMorphism::new(&u, ObjectType::w(1), ObjectType::w(1), []).unwrap();
        assert!(detnoun_state(&empty, &n).unwrap().is_empty());

        assert!(matches!(
            detnoun_state(&delta_w(&u).unwrap(), &n),
            Err(Error::TypeMismatch(_))
        ));
    }

    #[test]
    fn composite_rejects_wrong_types_and_sizes() {
        let u = Universe::anonymous(1).unwrap();
        assert!(matches!(
            conservative_det(&mu_w(&u).unwrap()),
            Err(Error::TypeMismatch(_))
        ));
        let big = Universe::anonymous(6).unwrap();
        let id = identity(&big, &ObjectType::w(1)).unwrap();
        assert!(matches!(conservative_det(&id), Err(Error::CapExceeded { .. })));
    }
}
