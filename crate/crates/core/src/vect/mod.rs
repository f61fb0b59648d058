//! The vector-space instantiation: `W` becomes the free vector space on the
//! powerset of the universe, relations become their 0/1 matrices, and closed
//! diagrams evaluate to nonnegative integers.
//!
//! Matrices are indexed `(row, column) = (codomain point, domain point)`, so
//! the relational composite "first `f`, then `g`" embeds as the product
//! `embed(g) · embed(f)`; [`LinMap::then`] computes exactly that product.
//! Entries are exact `u128` counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{cap_check, Error, Result};
use crate::finite_model::{full_mask, Mask, Universe};
use crate::laws::{bialgebra_laws, snake_laws, Arrow, BialgebraReport, SnakeReport, Structure};
use crate::rel::diagram::Diagram;
use crate::rel::morphism::{RelMorphism, DEFAULT_MORPHISM_CAP};
use crate::rel::object::{concat, ObjectType, Point, PointDisplay};

/// Largest universe for vector-space evaluation.
pub const DEFAULT_VECTOR_CAP: usize = 6;
/// Largest universe for exhaustive matrix law checks.
pub const DEFAULT_VECT_LAW_CAP: usize = 3;

/// A sparse linear map between interpreted objects. Absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    universe: Universe,
    dom: ObjectType,
    cod: ObjectType,
    entries: BTreeMap<(Point, Point), u128>,
}

impl LinMap {
    pub fn new<I>(universe: &Universe, dom: ObjectType, cod: ObjectType, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((Point, Point), u128)>,
    {
        let n = universe.size();
        let mut map = BTreeMap::new();
        for ((row, col), w) in entries {
            cod.check_point(&row, n)?;
            dom.check_point(&col, n)?;
            if w != 0 {
                let slot = map.entry((row, col)).or_insert(0u128);
                *slot = slot.checked_add(w).ok_or(Error::Overflow)?;
            }
            cap_check("linear map entries", map.len(), DEFAULT_MORPHISM_CAP)?;
        }
        Ok(LinMap {
            universe: universe.clone(),
            dom,
            cod,
            entries: map,
        })
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

    pub fn entry(&self, row: &[Mask], col: &[Mask]) -> u128 {
        self.entries
            .get(&(Point::from_slice(row), Point::from_slice(col)))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(Point, Point), u128> {
        &self.entries
    }

    /// Nonzero positions as relational pairs `(column, row)`.
    pub fn support(&self) -> std::collections::BTreeSet<(Point, Point)> {
        self.entries
            .keys()
            .map(|(row, col)| (col.clone(), row.clone()))
            .collect()
    }

    /// The image of a basis vector, as `(row, value)` pairs.
    pub fn column(&self, col: &[Mask]) -> Vec<(Point, u128)> {
        self.entries
            .iter()
            .filter(|((_, c), _)| c.as_slice() == col)
            .map(|((r, _), w)| (r.clone(), *w))
            .collect()
    }

    /// The product `next · self`.
    pub fn then(&self, next: &LinMap) -> Result<LinMap> {
        if !self.universe.same_as(&next.universe) {
            return Err(Error::UniverseMismatch);
        }
        if self.cod != next.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.dom, self.cod, next.dom, next.cod
            )));
        }
        let mut by_col: HashMap<&Point, Vec<(&Point, u128)>> = HashMap::new();
        for ((row, col), w) in &next.entries {
            by_col.entry(col).or_default().push((row, *w));
        }
        let mut acc: BTreeMap<(Point, Point), u128> = BTreeMap::new();
        for ((mid, col), a) in &self.entries {
            for (row, b) in by_col.get(mid).map(Vec::as_slice).unwrap_or(&[]) {
                let slot = acc.entry(((*row).clone(), col.clone())).or_insert(0);
                let term = a.checked_mul(*b).ok_or(Error::Overflow)?;
                *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
            }
            cap_check("linear map entries", acc.len(), DEFAULT_MORPHISM_CAP)?;
        }
        Ok(LinMap {
            universe: self.universe.clone(),
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            entries: acc,
        })
    }

    /// Kronecker product on concatenated points.
    pub fn tensor(&self, other: &LinMap) -> Result<LinMap> {
        if !self.universe.same_as(&other.universe) {
            return Err(Error::UniverseMismatch);
        }
        cap_check(
            "linear map entries",
            self.entries.len().saturating_mul(other.entries.len()),
            DEFAULT_MORPHISM_CAP,
        )?;
        let mut entries = BTreeMap::new();
        for ((r1, c1), a) in &self.entries {
            for ((r2, c2), b) in &other.entries {
                let w = a.checked_mul(*b).ok_or(Error::Overflow)?;
                entries.insert((concat(r1, r2), concat(c1, c2)), w);
            }
        }
        Ok(LinMap {
            universe: self.universe.clone(),
            dom: self.dom.tensor(&other.dom),
            cod: self.cod.tensor(&other.cod),
            entries,
        })
    }

    pub fn transpose(&self) -> LinMap {
        LinMap {
            universe: self.universe.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            entries: self
                .entries
                .iter()
                .map(|((r, c), w)| ((c.clone(), r.clone()), *w))
                .collect(),
        }
    }

    /// Sorted `(row, column, value)` triples.
    pub fn triples(&self) -> Vec<(String, String, u128)> {
        self.entries
            .iter()
            .map(|((r, c), w)| (PointDisplay::typed(r, &self.cod), PointDisplay::typed(c, &self.dom), *w))
            .collect()
    }

    pub fn to_canonical_text(&self) -> String {
        let mut out = format!("{} -> {}\n", self.dom, self.cod);
        for (r, c, w) in self.triples() {
            let _ = writeln!(out, "{r} {c} {w}");
        }
        out
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_text())
    }
}

impl Arrow for LinMap {
    fn then(&self, next: &Self) -> Result<Self> {
        LinMap::then(self, next)
    }

    fn tensor(&self, other: &Self) -> Result<Self> {
        LinMap::tensor(self, other)
    }
}

/// The 0/1 matrix of a relation.
pub fn embed(f: &RelMorphism) -> Result<LinMap> {
    LinMap::new(
        f.universe(),
        f.dom().clone(),
        f.cod().clone(),
        f.graph().iter().map(|(x, y)| ((y.clone(), x.clone()), 1)),
    )
}

/// The counting matrix of a diagram: entry `(y, x)` is the number of paths
/// from `x` to `y`.
pub fn embed_diagram(d: &Diagram) -> Result<LinMap> {
    let n = d.universe().size();
    cap_check("diagram domain size", d.dom().cardinality(n), DEFAULT_MORPHISM_CAP)?;
    let mut entries = Vec::new();
    for x in d.dom().points(n) {
        for (y, w) in d.apply::<u128>(&x)? {
            entries.push(((y, x.clone()), w));
        }
    }
    LinMap::new(d.universe(), d.dom().clone(), d.cod().clone(), entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StructuralKind {
    Epsilon,
    Eta,
    Delta,
    Iota,
    Mu,
    Zeta,
}

impl StructuralKind {
    pub const ALL: [StructuralKind; 6] = [
        StructuralKind::Epsilon,
        StructuralKind::Eta,
        StructuralKind::Delta,
        StructuralKind::Iota,
        StructuralKind::Mu,
        StructuralKind::Zeta,
    ];
}

/// The structure maps written directly on basis vectors `|A⟩`, `A ⊆ U`.
type Entry = ((Point, Point), u128);

pub fn vect_structural(kind: StructuralKind, u: &Universe) -> Result<LinMap> {
    cap_check("vector universe size", u.size(), DEFAULT_VECTOR_CAP)?;
    let basis: Vec<Mask> = (0..=full_mask(u.size())).collect();
    let p = Point::from_slice;
    let (dom, cod, entries): (ObjectType, ObjectType, Vec<Entry>) = match kind {
        // ε(|A⟩ ⊗ |B⟩) = ⟨A|B⟩
        StructuralKind::Epsilon => (
            ObjectType::w(2),
            ObjectType::unit(),
            basis
                .iter()
                .flat_map(|&a| basis.iter().map(move |&b| (a, b)))
                .filter(|(a, b)| a == b)
                .map(|(a, b)| ((p(&[]), p(&[a, b])), 1))
                .collect(),
        ),
        // η(1) = Σ_A |A⟩ ⊗ |A⟩
        StructuralKind::Eta => (
            ObjectType::unit(),
            ObjectType::w(2),
            basis.iter().map(|&a| ((p(&[a, a]), p(&[])), 1)).collect(),
        ),
        // δ|A⟩ = |A⟩ ⊗ |A⟩
        StructuralKind::Delta => (
            ObjectType::w(1),
            ObjectType::w(2),
            basis.iter().map(|&a| ((p(&[a, a]), p(&[a])), 1)).collect(),
        ),
        // ι|A⟩ = 1
        StructuralKind::Iota => (
            ObjectType::w(1),
            ObjectType::unit(),
            basis.iter().map(|&a| ((p(&[]), p(&[a])), 1)).collect(),
        ),
        // μ(|A⟩ ⊗ |B⟩) = |A ∩ B⟩
        StructuralKind::Mu => (
            ObjectType::w(2),
            ObjectType::w(1),
            basis
                .iter()
                .flat_map(|&a| basis.iter().map(move |&b| ((p(&[a & b]), p(&[a, b])), 1)))
                .collect(),
        ),
        // ζ = |U⟩
        StructuralKind::Zeta => (
            ObjectType::unit(),
            ObjectType::w(1),
            vec![((p(&[u.full_mask()]), p(&[])), 1)],
        ),
    };
    LinMap::new(u, dom, cod, entries)
}

fn identity_matrix(u: &Universe, t: &ObjectType) -> Result<LinMap> {
    let pts = t.points(u.size());
    LinMap::new(u, t.clone(), t.clone(), pts.into_iter().map(|x| ((x.clone(), x), 1)))
}

fn swap_matrix(u: &Universe) -> Result<LinMap> {
    let pts = ObjectType::w(2).points(u.size());
    LinMap::new(
        u,
        ObjectType::w(2),
        ObjectType::w(2),
        pts.into_iter().map(|x| ((Point::from_slice(&[x[1], x[0]]), x), 1)),
    )
}

pub fn vector_structure(u: &Universe) -> Result<Structure<LinMap>> {
    Ok(Structure {
        delta: vect_structural(StructuralKind::Delta, u)?,
        iota: vect_structural(StructuralKind::Iota, u)?,
        mu: vect_structural(StructuralKind::Mu, u)?,
        zeta: vect_structural(StructuralKind::Zeta, u)?,
        epsilon: vect_structural(StructuralKind::Epsilon, u)?,
        eta: vect_structural(StructuralKind::Eta, u)?,
        id_w: identity_matrix(u, &ObjectType::w(1))?,
        id_unit: identity_matrix(u, &ObjectType::unit())?,
        swap_ww: swap_matrix(u)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VectLawReport {
    pub bialgebra: BialgebraReport,
    pub snakes: SnakeReport,
}

impl VectLawReport {
    pub fn all(&self) -> bool {
        self.bialgebra.all() && self.snakes.all()
    }
}

pub fn check_vect_laws(u: &Universe) -> Result<VectLawReport> {
    cap_check("vector law check universe size", u.size(), DEFAULT_VECT_LAW_CAP)?;
    let s = vector_structure(u)?;
    Ok(VectLawReport {
        bialgebra: bialgebra_laws(&s)?,
        snakes: snake_laws(&s)?,
    })
}

/// A sentence value: the number of witness paths of a closed diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Scalar {
    pub count: u128,
}

impl Scalar {
    pub fn value(&self) -> f64 {
        self.count as f64
    }

    pub fn is_positive(&self) -> bool {
        self.count > 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count)
    }
}

/// The single entry of a map `I → I`.
pub fn scalar_of(f: &LinMap) -> Result<Scalar> {
    if !f.dom.is_unit() || !f.cod.is_unit() {
        return Err(Error::TypeMismatch(format!(
            "a scalar needs a map I → I, got {} → {}",
            f.dom, f.cod
        )));
    }
    Ok(Scalar {
        count: f.entry(&[], &[]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel::morphism::*;

    #[test]
    fn embedding_of_identity_is_the_identity_matrix() {
        let u = Universe::anonymous(2).unwrap();
        let m = embed(&identity(&u, &ObjectType::w(1)).unwrap()).unwrap();
        assert_eq!(m.entries().len(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m.entry(&[a], &[b]), u128::from(a == b));
            }
        }
    }

    #[test]
    fn delta_copies_basis_vectors() {
        let u = Universe::anonymous(3).unwrap();
        let d = embed(&delta_w(&u).unwrap()).unwrap();
        for a in 0..8 {
            assert_eq!(d.column(&[a]), vec![(Point::from_slice(&[a, a]), 1)]);
        }
    }

    #[test]
    fn structural_maps_match_embedded_generators() {
        for n in 0..=3 {
            let u = Universe::anonymous(n).unwrap();
            let rel = [
                epsilon_w(&u).unwrap(),
                eta_w(&u).unwrap(),
                delta_w(&u).unwrap(),
                iota_w(&u).unwrap(),
                mu_w(&u).unwrap(),
                zeta_w(&u).unwrap(),
            ];
            for (kind, f) in StructuralKind::ALL.iter().zip(rel.iter()) {
                assert_eq!(vect_structural(*kind, &u).unwrap(), embed(f).unwrap(), "{kind:?}");
            }
        }
    }

    #[test]
    fn iota_and_zeta_shapes() {
        let u = Universe::anonymous(2).unwrap();
        let iota = vect_structural(StructuralKind::Iota, &u).unwrap();
        assert_eq!(iota.entries().len(), 4);
        assert!(iota.entries().values().all(|w| *w == 1));
        let zeta = vect_structural(StructuralKind::Zeta, &u).unwrap();
        assert_eq!(zeta.column(&[]), vec![(Point::from_slice(&[3]), 1)]);
    }

    #[test]
    fn epsilon_of_the_diagonal_counts_the_basis() {
        for n in 0..=3 {
            let u = Universe::anonymous(n).unwrap();
            let eta = vect_structural(StructuralKind::Eta, &u).unwrap();
            let eps = vect_structural(StructuralKind::Epsilon, &u).unwrap();
            let s = scalar_of(&eta.then(&eps).unwrap()).unwrap();
            assert_eq!(s.count, 1 << n);
        }
    }

    #[test]
    fn laws_hold_exactly() {
        for n in 0..=DEFAULT_VECT_LAW_CAP {
            let u = Universe::anonymous(n).unwrap();
            assert!(check_vect_laws(&u).unwrap().all(), "size {n}");
        }
        assert!(check_vect_laws(&Universe::anonymous(4).unwrap()).is_err());
    }

    #[test]
    fn q2_is_the_column_u_tensor_u() {
        let u = Universe::anonymous(2).unwrap();
        let s = vector_structure(&u).unwrap();
        let lhs = s.zeta.then(&s.delta).unwrap();
        assert_eq!(lhs, s.zeta.tensor(&s.zeta).unwrap());
        assert_eq!(lhs.column(&[]), vec![(Point::from_slice(&[3, 3]), 1)]);
    }

    #[test]
    fn scalar_examples() {
        let u = Universe::anonymous(1).unwrap();
        let empty = RelMorphism::new(&u, ObjectType::unit(), ObjectType::unit(), []).unwrap();
        assert_eq!(scalar_of(&embed(&empty).unwrap()).unwrap().count, 0);
        let one = identity(&u, &ObjectType::unit()).unwrap();
        assert_eq!(scalar_of(&embed(&one).unwrap()).unwrap().count, 1);
        assert!(scalar_of(&embed(&mu_w(&u).unwrap()).unwrap()).is_err());
    }

    #[test]
    fn diagram_embedding_counts_paths() {
        let u = Universe::anonymous(2).unwrap();
        // μ then its converse: (A, B) ↦ (C, D) with C ∩ D = A ∩ B.
        let d = Diagram::from_block(&u, mu_w(&u).unwrap())
            .then(&Diagram::from_block(&u, mu_w(&u).unwrap().converse()))
            .unwrap();
        let m = embed_diagram(&d).unwrap();
        let product = embed(&mu_w(&u).unwrap())
            .unwrap()
            .then(&embed(&mu_w(&u).unwrap().converse()).unwrap())
            .unwrap();
        assert_eq!(m, product);
        assert!(m.entries().values().all(|w| *w == 1));
    }
}
