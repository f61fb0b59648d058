//! Branching readings: the set-theoretic definition by exhaustive search over
//! witness pairs, and the diagram in which a three-legged verb state joins two
//! determiner-noun legs.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{cap_check, Error, Result};
use crate::finite_model::{masks, BinRel, Mask, Subset};
use crate::quantifier::GeneralizedQuantifier;
use crate::rel::diagram::{Block, Diagram};
use crate::rel::morphism::*;
use crate::rel::object::{ObjectType, Point, STAR};
use crate::vect::DEFAULT_VECTOR_CAP;

use super::categorical::{det_boxes, generators, Mode};
use super::TransitiveDenotation;

/// Largest universe for the brute-force witness search (`4^|U|` pairs).
pub const DEFAULT_BRANCHING_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchCase {
    /// Witnesses must satisfy `X × Y ⊆ v`.
    Upward,
    /// Witnesses must satisfy `X × Y ⊇ v`.
    Downward,
}

impl fmt::Display for BranchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchCase::Upward => "upward",
            BranchCase::Downward => "downward",
        })
    }
}

/// How the verb state of the branching diagram relates `(X, ⋆, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BranchEncoding {
    /// `X × Y ⊆ v` (upward) or `X × Y ⊇ v` (downward).
    #[default]
    Product,
    /// `v(X) ⊆ Y` (upward) or `v(X) ⊇ Y` (downward), with `v(X)` the
    /// forward image. Kept for comparison: it does not agree with the
    /// witness search (see the tests below).
    ForwardImage,
}

/// Upward when both determiners are upward monotone (constant ones count as
/// both), downward when both are downward; anything else is rejected.
pub fn branch_case(
    d1: &GeneralizedQuantifier,
    d2: &GeneralizedQuantifier,
    u: &crate::finite_model::Universe,
) -> Result<BranchCase> {
    let (m1, m2) = (d1.monotonicity(u)?, d2.monotonicity(u)?);
    if m1.is_upward() && m2.is_upward() {
        Ok(BranchCase::Upward)
    } else if m1.is_downward() && m2.is_downward() {
        Ok(BranchCase::Downward)
    } else {
        Err(Error::MixedMonotonicity {
            first: d1.name().to_string(),
            first_mono: m1.to_string(),
            second: d2.name().to_string(),
            second_mono: m2.to_string(),
        })
    }
}

fn product_condition(v: &BinRel, case: BranchCase, x: Mask, y: Mask) -> bool {
    match case {
        BranchCase::Upward => v.covers_product(x, y),
        BranchCase::Downward => v.within_product(x, y),
    }
}

fn submasks(of: Mask, n: usize) -> impl Iterator<Item = Mask> {
    masks(n).filter(move |m| m & !of == 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingWitness {
    pub x: Subset,
    pub y: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingResult {
    pub case: BranchCase,
    pub truth: bool,
    /// The first witness pair, `X` ascending then `Y` ascending.
    pub witness: Option<BranchingWitness>,
}

/// Searches `X ⊆ n1`, `Y ⊆ n2` with `d1 n1 X`, `d2 n2 Y` and the product
/// condition of the monotonicity case.
pub fn barwise(s: &TransitiveDenotation) -> Result<BranchingResult> {
    s.check()?;
    let u = s.n1.universe();
    let n = u.size();
    cap_check("branching universe size", n, DEFAULT_BRANCHING_CAP)?;
    let case = branch_case(&s.d1, &s.d2, u)?;
    let (n1, n2) = (s.n1.bits(), s.n2.bits());
    for x in submasks(n1, n).filter(|&x| s.d1.holds_mask(n1, x)) {
        for y in submasks(n2, n).filter(|&y| s.d2.holds_mask(n2, y)) {
            if product_condition(&s.v, case, x, y) {
                return Ok(BranchingResult {
                    case,
                    truth: true,
                    witness: Some(BranchingWitness {
                        x: u.subset(x)?,
                        y: u.subset(y)?,
                    }),
                });
            }
        }
    }
    Ok(BranchingResult {
        case,
        truth: false,
        witness: None,
    })
}

/// The verb state `I → W ⊗ S ⊗ W` of the branching diagram.
pub fn branching_verb_state(v: &BinRel, case: BranchCase, encoding: BranchEncoding) -> Result<RelMorphism> {
    let u = v.universe();
    let n = u.size();
    cap_check("branching universe size", n, DEFAULT_BRANCHING_CAP)?;
    let related = |x: Mask, y: Mask| match (encoding, case) {
        (BranchEncoding::Product, _) => product_condition(v, case, x, y),
        (BranchEncoding::ForwardImage, BranchCase::Upward) => v.image_mask(x) & !y == 0,
        (BranchEncoding::ForwardImage, BranchCase::Downward) => y & !v.image_mask(x) == 0,
    };
    let points: Vec<Point> = masks(n)
        .flat_map(|x| masks(n).map(move |y| (x, y)))
        .filter(|&(x, y)| related(x, y))
        .map(|(x, y)| Point::from_slice(&[x, STAR, y]))
        .collect();
    state(u, ObjectType::wsw(), points)
}

pub(crate) fn diagram_with(s: &TransitiveDenotation, encoding: BranchEncoding, mode: Mode) -> Result<Diagram> {
    s.check()?;
    let u = s.n1.universe();
    let case = branch_case(&s.d1, &s.d2, u)?;
    let (det1, det2) = (det_boxes(&s.d1, u)?, det_boxes(&s.d2, u)?);
    let g = generators(u)?;
    let vbar: Block = Block::Morphism(Arc::new(branching_verb_state(&s.v, case, encoding)?));
    let w1 = || Block::Identity(ObjectType::w(1));
    // The two determiner-noun legs meet the verb state one after the other,
    // which keeps the intermediate point sets small.
    Diagram::identity(u, ObjectType::unit())
        .then_layer(vec![subset_state(&s.n1)?.into()])?
        .then_layer(vec![det1.block(mode)])?
        .then_layer(vec![w1(), vbar])?
        .then_layer(vec![g.epsilon.clone().into(), g.counit.clone().into(), w1()])?
        .then_layer(vec![w1(), subset_state(&s.n2)?.into()])?
        .then_layer(vec![w1(), det2.block(mode)])?
        .then_layer(vec![g.epsilon.clone().into()])
}

/// `ε ∘ (1 ⊗ d2) ∘ (1 ⊗ n2) ∘ (ε ⊗ ⋆ ⊗ 1) ∘ (1 ⊗ v̄) ∘ d1 ∘ n1`
pub fn branching_sentence_diagram(s: &TransitiveDenotation, encoding: BranchEncoding) -> Result<Diagram> {
    diagram_with(s, encoding, Mode::Truth)
}

pub fn diagram_truth(s: &TransitiveDenotation) -> Result<bool> {
    diagram_truth_with(s, BranchEncoding::Product)
}

pub fn diagram_truth_with(s: &TransitiveDenotation, encoding: BranchEncoding) -> Result<bool> {
    diagram_with(s, encoding, Mode::Truth)?.scalar::<bool>()
}

pub fn diagram_count(s: &TransitiveDenotation) -> Result<u128> {
    cap_check("vector universe size", s.n1.universe().size(), DEFAULT_VECTOR_CAP)?;
    diagram_with(s, BranchEncoding::Product, Mode::Count)?.scalar::<u128>()
}
