//! Sentences as closed relational diagrams `I → I`.
//!
//! Determiners enter through [`determiner_meaning_diagram`], nouns as states
//! of `W`, and transitive verbs as the state `I → W ⊗ S ⊗ W` relating every
//! `A` to its forward image. With `bool` weights a diagram is true when `⋆`
//! reaches `⋆`; with `u128` weights its value counts witness paths, including
//! the internal choices made inside each determiner composite.
//!
//! Linear readings are evaluated in two passes. For each entity `x` a closed
//! diagram checks the narrow-scope clause on the fiber `v_x`; the entities
//! whose check succeeds form a state `Z`, and a second diagram applies the
//! wide-scope determiner to `Z`. The collection step sits outside the
//! diagram language: every composite of relations is monotone in its boxes,
//! while the truth of a linear reading need not be monotone in the
//! narrow-scope determiner.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{cap_check, Result};
use crate::finite_model::{masks, BinRel, Mask, Subset, Universe};
use crate::lang::Reading;
use crate::quantifier::{Definition, GeneralizedQuantifier, QuantifierKind};
use crate::rel::det::determiner_meaning_diagram;
use crate::rel::diagram::{Block, Diagram, MemoDiagram};
use crate::rel::morphism::*;
use crate::rel::object::{ObjectType, Point, STAR};
use crate::vect::DEFAULT_VECTOR_CAP;

use super::{IntransitiveDenotation, TransitiveDenotation};

/// Which coefficients a sentence diagram is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Relational truth. Determiners enter as their materialized relation.
    Truth,
    /// Witness counting. Determiners enter as their unevaluated composite.
    Count,
}

pub(crate) struct DetBoxes {
    meaning: Arc<RelMorphism>,
    diagram: Arc<MemoDiagram>,
}

impl DetBoxes {
    pub(crate) fn block(&self, mode: Mode) -> Block {
        match mode {
            Mode::Truth => Block::Morphism(self.meaning.clone()),
            Mode::Count => Block::Memo(self.diagram.clone()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum DetKey {
    Builtin(QuantifierKind),
    Table(Vec<(Mask, Mask)>),
}

type DetCache = Mutex<HashMap<(DetKey, Vec<String>), Arc<DetBoxes>>>;

const DET_CACHE_LIMIT: usize = 512;

/// The determiner meaning of `q` on `u`, built once per quantifier and universe.
pub(crate) fn det_boxes(q: &GeneralizedQuantifier, u: &Universe) -> Result<Arc<DetBoxes>> {
    static CACHE: OnceLock<DetCache> = OnceLock::new();
    let key = match q.definition() {
        Definition::Builtin(kind) => DetKey::Builtin(*kind),
        Definition::Table(t) => DetKey::Table(t.pairs().collect()),
    };
    let key = (key, u.entities().to_vec());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(hit.clone());
    }
    let diagram = determiner_meaning_diagram(&quantifier_morphism(q, u)?)?;
    let boxes = Arc::new(DetBoxes {
        meaning: Arc::new(diagram.to_morphism()?),
        diagram: Arc::new(MemoDiagram::new(diagram)),
    });
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() >= DET_CACHE_LIMIT {
        guard.clear();
    }
    guard.insert(key, boxes.clone());
    Ok(boxes)
}

/// The generators sentence diagrams use, built once per universe.
pub(crate) struct Generators {
    pub(crate) epsilon: Arc<RelMorphism>,
    pub(crate) delta: Arc<RelMorphism>,
    pub(crate) mu: Arc<RelMorphism>,
    pub(crate) counit: Arc<RelMorphism>,
}

pub(crate) fn generators(u: &Universe) -> Result<Arc<Generators>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<String>, Arc<Generators>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(u.entities()) {
        return Ok(hit.clone());
    }
    let g = Arc::new(Generators {
        epsilon: Arc::new(epsilon_w(u)?),
        delta: Arc::new(delta_w(u)?),
        mu: Arc::new(mu_w(u)?),
        counit: Arc::new(sentence_counit(u)?),
    });
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() >= DET_CACHE_LIMIT {
        guard.clear();
    }
    guard.insert(u.entities().to_vec(), g.clone());
    Ok(g)
}

fn w(n: usize) -> Block {
    Block::Identity(ObjectType::w(n))
}

fn noun(s: &Subset) -> Result<Block> {
    Ok(subset_state(s)?.into())
}

/// `⋆ ↦ (A, ⋆, v(A))` for every `A ⊆ U`.
pub fn verb_state(v: &BinRel) -> Result<RelMorphism> {
    let u = v.universe();
    state(
        u,
        ObjectType::wsw(),
        masks(u.size()).map(|a| Point::from_slice(&[a, STAR, v.image_mask(a)])),
    )
}

/// The roles of a linear reading: `(wide d, wide n, narrow d, narrow n, verb)`.
type Roles<'a> = (
    &'a GeneralizedQuantifier,
    &'a Subset,
    &'a GeneralizedQuantifier,
    &'a Subset,
    BinRel,
);

fn roles(s: &TransitiveDenotation, r: Reading) -> Result<Roles<'_>> {
    match r {
        Reading::SubjectWide => Ok((&s.d1, &s.n1, &s.d2, &s.n2, s.v.clone())),
        Reading::ObjectWide => Ok((&s.d2, &s.n2, &s.d1, &s.n1, s.v.converse())),
        Reading::Branching => Err(s.not_linear(r)),
    }
}

/// The closed diagram checking the narrow-scope clause for entity `x`:
/// `ε ∘ (μ ⊗ d) ∘ (v_x ⊗ n ⊗ n)`, with `v_x = (ε ⊗ ⋆ ⊗ 1) ∘ ({x} ⊗ v)`.
pub fn entity_check_diagram(s: &TransitiveDenotation, r: Reading, x: usize) -> Result<Diagram> {
    s.check()?;
    let (_, _, narrow, narrow_n, verb) = roles(s, r)?;
    let u = s.n1.universe();
    entity_check(
        u,
        &*det_boxes(narrow, u)?,
        narrow_n,
        &Arc::new(verb_state(&verb)?),
        x,
        Mode::Truth,
    )
}

fn entity_check(
    u: &Universe,
    det: &DetBoxes,
    n: &Subset,
    verb: &Arc<RelMorphism>,
    x: usize,
    mode: Mode,
) -> Result<Diagram> {
    let g = generators(u)?;
    Diagram::identity(u, ObjectType::unit())
        .then_layer(vec![
            subset_state(&u.singleton(x)?)?.into(),
            Block::Morphism(verb.clone()),
            noun(n)?,
            noun(n)?,
        ])?
        .then_layer(vec![g.epsilon.clone().into(), g.counit.clone().into(), w(3)])?
        .then_layer(vec![g.mu.clone().into(), det.block(mode)])?
        .then_layer(vec![g.epsilon.clone().into()])
}

/// The entities whose narrow-scope check holds, collected from the
/// per-entity diagrams.
pub fn scope_state(s: &TransitiveDenotation, r: Reading) -> Result<Subset> {
    s.check()?;
    let u = s.n1.universe();
    cap_check("composite universe size", u.size(), crate::rel::DEFAULT_COMPOSITE_CAP)?;
    let (_, _, narrow, narrow_n, verb) = roles(s, r)?;
    let det = det_boxes(narrow, u)?;
    let vs = Arc::new(verb_state(&verb)?);
    let mut bits: Mask = 0;
    for x in 0..u.size() {
        if entity_check(u, &det, narrow_n, &vs, x, Mode::Truth)?.scalar::<bool>()? {
            bits |= 1 << x;
        }
    }
    u.subset(bits)
}

pub(crate) fn linear_diagram(s: &TransitiveDenotation, r: Reading, mode: Mode) -> Result<Diagram> {
    let z = scope_state(s, r)?;
    let (wide, wide_n, _, _, _) = roles(s, r)?;
    let u = s.n1.universe();
    let det = det_boxes(wide, u)?;
    let g = generators(u)?;
    Diagram::identity(u, ObjectType::unit())
        .then_layer(vec![noun(wide_n)?, noun(&z)?])?
        .then_layer(vec![g.delta.clone().into(), w(1)])?
        .then_layer(vec![det.block(mode), g.mu.clone().into()])?
        .then_layer(vec![g.epsilon.clone().into()])
}

/// The sentence diagram of a linear reading, with the scope state already
/// collected: `ε ∘ (d ⊗ μ) ∘ (δ ⊗ 1) ∘ (n ⊗ Z)`.
pub fn linear_sentence_diagram(s: &TransitiveDenotation, r: Reading) -> Result<Diagram> {
    linear_diagram(s, r, Mode::Truth)
}

pub fn linear_truth(s: &TransitiveDenotation, r: Reading) -> Result<bool> {
    linear_diagram(s, r, Mode::Truth)?.scalar::<bool>()
}

pub fn linear_count(s: &TransitiveDenotation, r: Reading) -> Result<u128> {
    cap_check("vector universe size", s.n1.universe().size(), DEFAULT_VECTOR_CAP)?;
    linear_diagram(s, r, Mode::Count)?.scalar::<u128>()
}

pub(crate) fn intransitive_diagram(s: &IntransitiveDenotation, mode: Mode) -> Result<Diagram> {
    s.check()?;
    let u = s.n.universe();
    let det = det_boxes(&s.d, u)?;
    let g = generators(u)?;
    Diagram::identity(u, ObjectType::unit())
        .then_layer(vec![noun(&s.vp)?, noun(&s.n)?, noun(&s.n)?])?
        .then_layer(vec![g.mu.clone().into(), det.block(mode)])?
        .then_layer(vec![g.epsilon.clone().into()])
}

/// `ε ∘ (μ ⊗ d) ∘ (vp ⊗ n ⊗ n)`
pub fn intransitive_sentence_diagram(s: &IntransitiveDenotation) -> Result<Diagram> {
    intransitive_diagram(s, Mode::Truth)
}

pub fn intransitive_truth(s: &IntransitiveDenotation) -> Result<bool> {
    intransitive_diagram(s, Mode::Truth)?.scalar::<bool>()
}

pub fn intransitive_count(s: &IntransitiveDenotation) -> Result<u128> {
    cap_check("vector universe size", s.n.universe().size(), DEFAULT_VECTOR_CAP)?;
    intransitive_diagram(s, Mode::Count)?.scalar::<u128>()
}
