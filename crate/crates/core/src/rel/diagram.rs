//! Layered string diagrams evaluated point by point.
//!
//! A [`Diagram`] is a vertical stack of layers; each layer is a tensor product
//! of [`Block`]s. Evaluation pushes a weighted set of points through the
//! layers, so only the reachable part of each intermediate object is ever
//! built. With `bool` weights this is relational composition; with `u128`
//! weights it is multiplication of the 0/1 matrices of the blocks, counting
//! witness paths.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::{Arc, Mutex};

use crate::error::{cap_check, Error, Result};
use crate::finite_model::{Mask, Universe};

use super::morphism::{RelMorphism, DEFAULT_MORPHISM_CAP};
use super::object::{concat, ObjectType, Point};

/// Coefficients a diagram can be evaluated over.
pub trait Weight: Copy + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Result<Self>;
    fn mul(self, other: Self) -> Result<Self>;
    /// The weight of `n` parallel paths.
    fn from_count(n: u128) -> Self;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Weight for bool {
    fn zero() -> Self {
        false
    }

    fn one() -> Self {
        true
    }

    fn add(self, other: Self) -> Result<Self> {
        Ok(self || other)
    }

    fn mul(self, other: Self) -> Result<Self> {
        Ok(self && other)
    }

    fn from_count(n: u128) -> Self {
        n > 0
    }
}

impl Weight for u128 {
    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn add(self, other: Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    fn mul(self, other: Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }

    fn from_count(n: u128) -> Self {
        n
    }
}

#[derive(Clone)]
pub enum Block {
    Identity(ObjectType),
    Morphism(Arc<RelMorphism>),
    Diagram(Arc<Diagram>),
    /// A nested diagram whose path counts are kept once computed.
    Memo(Arc<MemoDiagram>),
}

type CountRow = Arc<Vec<(Point, u128)>>;

/// A diagram with a lazily filled table of its path counts, one entry per
/// input point. Evaluating through it gives the same weights as nesting the
/// diagram itself.
pub struct MemoDiagram {
    diagram: Diagram,
    table: Mutex<HashMap<Point, CountRow>>,
}

impl MemoDiagram {
    pub fn new(diagram: Diagram) -> Self {
        MemoDiagram {
            diagram,
            table: Mutex::new(HashMap::new()),
        }
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn counts(&self, x: &[Mask]) -> Result<CountRow> {
        if let Some(hit) = self.table.lock().unwrap_or_else(|e| e.into_inner()).get(x) {
            return Ok(hit.clone());
        }
        let counts = Arc::new(self.diagram.apply::<u128>(x)?);
        self.table
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(Point::from_slice(x), counts.clone());
        Ok(counts)
    }
}

impl Block {
    pub fn dom(&self) -> &ObjectType {
        match self {
            Block::Identity(t) => t,
            Block::Morphism(f) => f.dom(),
            Block::Diagram(d) => &d.dom,
            Block::Memo(m) => &m.diagram.dom,
        }
    }

    pub fn cod(&self) -> &ObjectType {
        match self {
            Block::Identity(t) => t,
            Block::Morphism(f) => f.cod(),
            Block::Diagram(d) => &d.cod,
            Block::Memo(m) => &m.diagram.cod,
        }
    }

    pub fn converse(&self) -> Block {
        match self {
            Block::Identity(t) => Block::Identity(t.clone()),
            Block::Morphism(f) => Block::Morphism(Arc::new(f.converse())),
            Block::Diagram(d) => Block::Diagram(Arc::new(d.converse())),
            Block::Memo(m) => Block::Memo(Arc::new(MemoDiagram::new(m.diagram.converse()))),
        }
    }

    fn image<W: Weight>(&self, x: &[Mask]) -> Result<Vec<(Point, W)>> {
        match self {
            Block::Identity(_) => Ok(vec![(Point::from_slice(x), W::one())]),
            Block::Morphism(f) => Ok(f.image(x).map(|y| (y.clone(), W::one())).collect()),
            Block::Diagram(d) => d.apply(x),
            Block::Memo(m) => Ok(m
                .counts(x)?
                .iter()
                .map(|(y, n)| (y.clone(), W::from_count(*n)))
                .collect()),
        }
    }
}

impl From<RelMorphism> for Block {
    fn from(f: RelMorphism) -> Self {
        Block::Morphism(Arc::new(f))
    }
}

impl From<Arc<RelMorphism>> for Block {
    fn from(f: Arc<RelMorphism>) -> Self {
        Block::Morphism(f)
    }
}

impl From<Diagram> for Block {
    fn from(d: Diagram) -> Self {
        Block::Diagram(Arc::new(d))
    }
}

impl From<Arc<Diagram>> for Block {
    fn from(d: Arc<Diagram>) -> Self {
        Block::Diagram(d)
    }
}

#[derive(Clone)]
pub struct Diagram {
    universe: Universe,
    dom: ObjectType,
    cod: ObjectType,
    layers: Vec<Vec<Block>>,
}

impl Diagram {
    /// The empty diagram on `t`.
    pub fn identity(universe: &Universe, t: ObjectType) -> Diagram {
        Diagram {
            universe: universe.clone(),
            dom: t.clone(),
            cod: t,
            layers: Vec::new(),
        }
    }

    pub fn from_block(universe: &Universe, block: impl Into<Block>) -> Diagram {
        let block = block.into();
        Diagram {
            universe: universe.clone(),
            dom: block.dom().clone(),
            cod: block.cod().clone(),
            layers: vec![vec![block]],
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn dom(&self) -> &ObjectType {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectType {
        &self.cod
    }

    pub fn layers(&self) -> &[Vec<Block>] {
        &self.layers
    }

    /// Appends a layer: the tensor product of `blocks`, whose domain must be
    /// the current codomain.
    pub fn then_layer(mut self, blocks: Vec<Block>) -> Result<Diagram> {
        let dom = blocks.iter().fold(ObjectType::unit(), |acc, b| acc.tensor(b.dom()));
        if dom != self.cod {
            return Err(Error::TypeMismatch(format!(
                "layer expects {dom}, diagram produces {}",
                self.cod
            )));
        }
        for b in &blocks {
            check_block_universe(&self.universe, b)?;
        }
        self.cod = blocks.iter().fold(ObjectType::unit(), |acc, b| acc.tensor(b.cod()));
        self.layers.push(blocks);
        Ok(self)
    }

    /// Sequential composite "first `self`, then `next`".
    pub fn then(mut self, next: &Diagram) -> Result<Diagram> {
        if !self.universe.same_as(&next.universe) {
            return Err(Error::UniverseMismatch);
        }
        if self.cod != next.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.dom, self.cod, next.dom, next.cod
            )));
        }
        self.layers.extend(next.layers.iter().cloned());
        self.cod = next.cod.clone();
        Ok(self)
    }

    pub fn tensor(&self, other: &Diagram) -> Result<Diagram> {
        if !self.universe.same_as(&other.universe) {
            return Err(Error::UniverseMismatch);
        }
        Diagram::identity(&self.universe, self.dom.tensor(&other.dom)).then_layer(vec![
            Block::Diagram(Arc::new(self.clone())),
            Block::Diagram(Arc::new(other.clone())),
        ])
    }

    /// The diagram read upside down: layers reversed, every block conversed.
    pub fn converse(&self) -> Diagram {
        Diagram {
            universe: self.universe.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            layers: self
                .layers
                .iter()
                .rev()
                .map(|layer| layer.iter().map(Block::converse).collect())
                .collect(),
        }
    }

    /// Weighted image of a single input point, sorted by output point.
    pub fn apply<W: Weight>(&self, x: &[Mask]) -> Result<Vec<(Point, W)>> {
        self.dom.check_point(&Point::from_slice(x), self.universe.size())?;
        let mut states = HashMap::new();
        states.insert(Point::from_slice(x), W::one());
        for layer in &self.layers {
            states = push_layer(layer, states)?;
        }
        let mut out: Vec<(Point, W)> = states.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Pushes a weighted set of domain points through the diagram.
    pub fn push<W: Weight>(&self, input: &BTreeMap<Point, W>) -> Result<BTreeMap<Point, W>> {
        let mut states: HashMap<Point, W> = HashMap::new();
        for (p, w) in input {
            self.dom.check_point(p, self.universe.size())?;
            if !w.is_zero() {
                states.insert(p.clone(), *w);
            }
        }
        for layer in &self.layers {
            states = push_layer(layer, states)?;
        }
        Ok(states.into_iter().collect())
    }

    /// The value of a closed diagram `I → I`.
    pub fn scalar<W: Weight>(&self) -> Result<W> {
        if !self.dom.is_unit() || !self.cod.is_unit() {
            return Err(Error::TypeMismatch(format!(
                "a scalar needs a diagram I → I, got {} → {}",
                self.dom, self.cod
            )));
        }
        Ok(self.apply::<W>(&[])?.into_iter().next().map_or(W::zero(), |(_, w)| w))
    }

    /// Materializes the relation the diagram denotes.
    pub fn to_morphism(&self) -> Result<RelMorphism> {
        let n = self.universe.size();
        cap_check("diagram domain size", self.dom.cardinality(n), DEFAULT_MORPHISM_CAP)?;
        let mut pairs = Vec::new();
        for x in self.dom.points(n) {
            for (y, _) in self.apply::<bool>(&x)? {
                pairs.push((x.clone(), y));
            }
            cap_check("morphism graph size", pairs.len(), DEFAULT_MORPHISM_CAP)?;
        }
        Ok(RelMorphism::from_graph_unchecked(
            &self.universe,
            self.dom.clone(),
            self.cod.clone(),
            pairs.into_iter().collect(),
        ))
    }
}

fn check_block_universe(u: &Universe, b: &Block) -> Result<()> {
    let ok = match b {
        Block::Identity(_) => true,
        Block::Morphism(f) => f.universe().same_as(u),
        Block::Diagram(d) => d.universe.same_as(u),
        Block::Memo(m) => m.diagram.universe.same_as(u),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

type Image<W> = Rc<Vec<(Point, W)>>;

fn push_layer<W: Weight>(layer: &[Block], states: HashMap<Point, W>) -> Result<HashMap<Point, W>> {
    let mut caches: Vec<HashMap<Point, Image<W>>> = vec![HashMap::new(); layer.len()];
    let mut out: HashMap<Point, W> = HashMap::new();
    for (p, w) in states {
        let mut partial: Vec<(Point, W)> = vec![(Point::new(), w)];
        let mut offset = 0;
        for (block, cache) in layer.iter().zip(caches.iter_mut()) {
            let k = block.dom().arity();
            let slice = &p[offset..offset + k];
            offset += k;
            let image = match cache.get(slice) {
                Some(img) => img.clone(),
                None => {
                    let img: Image<W> = Rc::new(block.image(slice)?);
                    cache.insert(Point::from_slice(slice), img.clone());
                    img
                }
            };
            if image.is_empty() {
                partial.clear();
                break;
            }
            let mut next = Vec::with_capacity(partial.len() * image.len());
            for (q, wq) in &partial {
                for (r, wr) in image.iter() {
                    next.push((concat(q, r), wq.mul(*wr)?));
                }
            }
            partial = next;
        }
        for (q, wq) in partial {
            if wq.is_zero() {
                continue;
            }
            match out.get_mut(&q) {
                Some(acc) => *acc = acc.add(wq)?,
                None => {
                    out.insert(q, wq);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel::morphism::*;

    #[test]
    fn layered_composite_matches_graph_composition() {
        let u = Universe::anonymous(2).unwrap();
        let w1 = ObjectType::w(1);
        // (δ ⊗ 1) then (1 ⊗ μ): W⊗W → W⊗W, (A, B) ↦ (A, A ∩ B)
        let d = Diagram::identity(&u, ObjectType::w(2))
            .then_layer(vec![delta_w(&u).unwrap().into(), Block::Identity(w1.clone())])
            .unwrap()
            .then_layer(vec![Block::Identity(w1.clone()), mu_w(&u).unwrap().into()])
            .unwrap();
        let by_graph = delta_w(&u)
            .unwrap()
            .tensor(&identity(&u, &w1).unwrap())
            .unwrap()
            .compose(&identity(&u, &w1).unwrap().tensor(&mu_w(&u).unwrap()).unwrap())
            .unwrap();
        assert_eq!(d.to_morphism().unwrap(), by_graph);
        assert_eq!(d.converse().to_morphism().unwrap(), by_graph.converse());
    }

    #[test]
    fn counting_weights_count_paths() {
        let u = Universe::anonymous(2).unwrap();
        // η then ε: one path per subset.
        let loop_ = Diagram::from_block(&u, eta_w(&u).unwrap())
            .then(&Diagram::from_block(&u, epsilon_w(&u).unwrap()))
            .unwrap();
        assert_eq!(loop_.scalar::<u128>().unwrap(), 4);
        assert!(loop_.scalar::<bool>().unwrap());
    }

    #[test]
    fn memo_blocks_match_nested_diagrams() {
        let u = Universe::anonymous(2).unwrap();
        let inner = Diagram::from_block(&u, mu_w(&u).unwrap())
            .then(&Diagram::from_block(&u, mu_w(&u).unwrap().converse()))
            .unwrap();
        let memo = Arc::new(MemoDiagram::new(inner.clone()));
        let with = |b: Block| {
            Diagram::from_block(&u, eta_w(&u).unwrap())
                .then_layer(vec![b])
                .unwrap()
                .then_layer(vec![epsilon_w(&u).unwrap().into()])
                .unwrap()
        };
        let nested = with(Block::Diagram(Arc::new(inner)));
        let memoized = with(Block::Memo(memo.clone()));
        assert_eq!(nested.scalar::<u128>().unwrap(), memoized.scalar::<u128>().unwrap());
        assert_eq!(nested.scalar::<bool>().unwrap(), memoized.scalar::<bool>().unwrap());
        // Second evaluation reads the table.
        assert_eq!(nested.scalar::<u128>().unwrap(), memoized.scalar::<u128>().unwrap());
        assert_eq!(nested.to_morphism().unwrap(), memoized.to_morphism().unwrap());
    }

    #[test]
    fn layer_type_errors() {
        let u = Universe::anonymous(1).unwrap();
        let err = Diagram::identity(&u, ObjectType::w(1))
            .then_layer(vec![mu_w(&u).unwrap().into()])
            .err()
            .unwrap();
        assert!(matches!(err, Error::TypeMismatch(_)));
        let other = Universe::new(["x", "y"]).unwrap();
        let err = Diagram::identity(&u, ObjectType::w(1))
            .then_layer(vec![delta_w(&other).unwrap().into()])
            .err()
            .unwrap();
        assert_eq!(err, Error::UniverseMismatch);
    }

    #[test]
    fn scalar_needs_closed_diagram() {
        let u = Universe::anonymous(1).unwrap();
        let d = Diagram::from_block(&u, delta_w(&u).unwrap());
        assert!(matches!(d.scalar::<bool>(), Err(Error::TypeMismatch(_))));
    }
}
