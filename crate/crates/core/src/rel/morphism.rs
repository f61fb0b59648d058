use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{cap_check, Error, Result};
use crate::finite_model::{Mask, Subset, Universe};

use super::object::{concat, ObjectType, Point, PointDisplay, STAR};

/// Hard limit on the number of pairs a materialized morphism may hold.
pub const DEFAULT_MORPHISM_CAP: usize = 1 << 20;

/// A relation between the interpreted objects `dom` and `cod`, stored as its
/// full graph.
#[derive(Clone, PartialEq, Eq)]
pub struct RelMorphism {
    universe: Universe,
    dom: ObjectType,
    cod: ObjectType,
    graph: BTreeSet<(Point, Point)>,
}

impl RelMorphism {
    pub fn new<I>(universe: &Universe, dom: ObjectType, cod: ObjectType, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let n = universe.size();
        let mut graph = BTreeSet::new();
        for (x, y) in pairs {
            dom.check_point(&x, n)?;
            cod.check_point(&y, n)?;
            graph.insert((x, y));
            cap_check("morphism graph size", graph.len(), DEFAULT_MORPHISM_CAP)?;
        }
        Ok(RelMorphism {
            universe: universe.clone(),
            dom,
            cod,
            graph,
        })
    }

    /// Builds the relation that sends each point of `dom` to the points `image` lists.
    pub fn from_fn<F>(universe: &Universe, dom: ObjectType, cod: ObjectType, image: F) -> Result<Self>
    where
        F: Fn(&[Mask]) -> Vec<Point>,
    {
        cap_check(
            "morphism domain size",
            dom.cardinality(universe.size()),
            DEFAULT_MORPHISM_CAP,
        )?;
        let pairs: Vec<(Point, Point)> = dom
            .points(universe.size())
            .into_iter()
            .flat_map(|x| image(&x).into_iter().map(move |y| (x.clone(), y)))
            .collect();
        RelMorphism::new(universe, dom, cod, pairs)
    }

    pub(crate) fn from_graph_unchecked(
        universe: &Universe,
        dom: ObjectType,
        cod: ObjectType,
        graph: BTreeSet<(Point, Point)>,
    ) -> Self {
        RelMorphism {
            universe: universe.clone(),
            dom,
            cod,
            graph,
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

    pub fn graph(&self) -> &BTreeSet<(Point, Point)> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn relates(&self, x: &[Mask], y: &[Mask]) -> bool {
        self.graph.contains(&(Point::from_slice(x), Point::from_slice(y)))
    }

    /// Points related to `x`, ascending.
    pub fn image<'a>(&'a self, x: &[Mask]) -> impl Iterator<Item = &'a Point> + 'a {
        let key = Point::from_slice(x);
        self.graph
            .range((key.clone(), Point::new())..)
            .take_while(move |(a, _)| *a == key)
            .map(|(_, b)| b)
    }

    fn same_universe(&self, other: &RelMorphism) -> Result<()> {
        if self.universe.same_as(&other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Relational composite "first `self`, then `g`".
    pub fn compose(&self, g: &RelMorphism) -> Result<RelMorphism> {
        self.same_universe(g)?;
        if self.cod != g.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.dom, self.cod, g.dom, g.cod
            )));
        }
        let mut graph = BTreeSet::new();
        for (x, y) in &self.graph {
            for z in g.image(y) {
                graph.insert((x.clone(), z.clone()));
            }
            cap_check("morphism graph size", graph.len(), DEFAULT_MORPHISM_CAP)?;
        }
        Ok(RelMorphism::from_graph_unchecked(
            &self.universe,
            self.dom.clone(),
            g.cod.clone(),
            graph,
        ))
    }

    pub fn tensor(&self, g: &RelMorphism) -> Result<RelMorphism> {
        self.same_universe(g)?;
        cap_check(
            "morphism graph size",
            self.len().saturating_mul(g.len()),
            DEFAULT_MORPHISM_CAP,
        )?;
        let graph = self
            .graph
            .iter()
            .flat_map(|(x1, y1)| g.graph.iter().map(move |(x2, y2)| (concat(x1, x2), concat(y1, y2))))
            .collect();
        Ok(RelMorphism::from_graph_unchecked(
            &self.universe,
            self.dom.tensor(&g.dom),
            self.cod.tensor(&g.cod),
            graph,
        ))
    }

    /// The opposite relation `cod → dom`.
    pub fn converse(&self) -> RelMorphism {
        RelMorphism::from_graph_unchecked(
            &self.universe,
            self.cod.clone(),
            self.dom.clone(),
            self.graph.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        )
    }

    /// Sorted pair list, one pair per line, preceded by a type header.
    /// `W` slots print as bitmasks and `S` slots as `*`.
    pub fn to_canonical_text(&self) -> String {
        let mut out = format!("{} -> {}\n", self.dom, self.cod);
        for (x, y) in &self.graph {
            let _ = writeln!(
                out,
                "{} -> {}",
                PointDisplay::typed(x, &self.dom),
                PointDisplay::typed(y, &self.cod)
            );
        }
        out
    }
}

impl std::fmt::Debug for RelMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_canonical_text())
    }
}

pub fn identity(u: &Universe, t: &ObjectType) -> Result<RelMorphism> {
    RelMorphism::from_fn(u, t.clone(), t.clone(), |x| vec![Point::from_slice(x)])
}

pub fn compose(f: &RelMorphism, g: &RelMorphism) -> Result<RelMorphism> {
    f.compose(g)
}

pub fn tensor(f: &RelMorphism, g: &RelMorphism) -> Result<RelMorphism> {
    f.tensor(g)
}

/// The swap `a ⊗ b → b ⊗ a`.
pub fn symmetry(u: &Universe, a: &ObjectType, b: &ObjectType) -> Result<RelMorphism> {
    let k = a.arity();
    RelMorphism::from_fn(u, a.tensor(b), b.tensor(a), |x| vec![concat(&x[k..], &x[..k])])
}

/// `ε : W ⊗ W → I`, relating `(A, A)` to the unique point of `I`.
pub fn epsilon_w(u: &Universe) -> Result<RelMorphism> {
    RelMorphism::from_fn(u, ObjectType::w(2), ObjectType::unit(), |x| {
        if x[0] == x[1] {
            vec![Point::new()]
        } else {
            vec![]
        }
    })
}

/// `η : I → W ⊗ W`, the converse of ε.
pub fn eta_w(u: &Universe) -> Result<RelMorphism> {
    Ok(epsilon_w(u)?.converse())
}

/// `δ : W → W ⊗ W`, `A ↦ (A, A)`.
pub fn delta_w(u: &Universe) -> Result<RelMorphism> {
    RelMorphism::from_fn(u, ObjectType::w(1), ObjectType::w(2), |x| {
        vec![Point::from_slice(&[x[0], x[0]])]
    })
}

/// `ι : W → I`, total.
pub fn iota_w(u: &Universe) -> Result<RelMorphism> {
    RelMorphism::from_fn(u, ObjectType::w(1), ObjectType::unit(), |_| vec![Point::new()])
}

/// `μ : W ⊗ W → W`, `(A, B) ↦ A ∩ B`.
pub fn mu_w(u: &Universe) -> Result<RelMorphism> {
    RelMorphism::from_fn(u, ObjectType::w(2), ObjectType::w(1), |x| {
        vec![Point::from_slice(&[x[0] & x[1]])]
    })
}

/// `ζ : I → W`, the state of the whole universe.
pub fn zeta_w(u: &Universe) -> Result<RelMorphism> {
    state(u, ObjectType::w(1), [Point::from_slice(&[u.full_mask()])])
}

/// A state `I → t` holding exactly the given points.
pub fn state<I: IntoIterator<Item = Point>>(u: &Universe, t: ObjectType, points: I) -> Result<RelMorphism> {
    RelMorphism::new(u, ObjectType::unit(), t, points.into_iter().map(|p| (Point::new(), p)))
}

/// The state `I → W` of a single subset, e.g. a noun denotation.
pub fn subset_state(s: &Subset) -> Result<RelMorphism> {
    state(s.universe(), ObjectType::w(1), [Point::from_slice(&[s.bits()])])
}

/// `S → I`. In this instantiation `S` has a single point, so this is an isomorphism.
pub fn sentence_counit(u: &Universe) -> Result<RelMorphism> {
    RelMorphism::new(
        u,
        ObjectType::s(),
        ObjectType::unit(),
        [(Point::from_slice(&[STAR]), Point::new())],
    )
}

/// A quantifier relation as a morphism `W → W`: `A ↦ X` whenever `A q X`.
pub fn quantifier_morphism(q: &crate::quantifier::GeneralizedQuantifier, u: &Universe) -> Result<RelMorphism> {
    let pairs = q
        .table_masks(u)?
        .into_iter()
        .map(|(a, x)| (Point::from_slice(&[a]), Point::from_slice(&[x])));
    RelMorphism::new(u, ObjectType::w(1), ObjectType::w(1), pairs)
}

/// Whether a morphism has the given type; used by operations that accept only `W → W`.
pub(crate) fn expect_type(f: &RelMorphism, dom: &ObjectType, cod: &ObjectType) -> Result<()> {
    if f.dom() == dom && f.cod() == cod {
        Ok(())
    } else {
        Err(Error::TypeMismatch(format!(
            "expected {dom} → {cod}, got {} → {}",
            f.dom(),
            f.cod()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantifier::{GeneralizedQuantifier, QuantifierKind};

    fn p(slots: &[Mask]) -> Point {
        Point::from_slice(slots)
    }

    #[test]
    fn identity_examples() {
        let zero = Universe::anonymous(0).unwrap();
        let id_i = identity(&zero, &ObjectType::unit()).unwrap();
        assert_eq!(id_i.graph().iter().cloned().collect::<Vec<_>>(), vec![(p(&[]), p(&[]))]);

        let one = Universe::anonymous(1).unwrap();
        let id_w = identity(&one, &ObjectType::w(1)).unwrap();
        assert_eq!(
            id_w.graph().iter().cloned().collect::<Vec<_>>(),
            vec![(p(&[0]), p(&[0])), (p(&[1]), p(&[1]))]
        );
    }

    #[test]
    fn generator_examples() {
        let one = Universe::anonymous(1).unwrap();
        let eps = epsilon_w(&one).unwrap();
        assert_eq!(eps.len(), 2);
        assert!(eps.relates(&[0, 0], &[]) && eps.relates(&[1, 1], &[]));
        assert_eq!(eta_w(&one).unwrap(), eps.converse());

        let delta = delta_w(&one).unwrap();
        assert_eq!(
            delta.graph().iter().cloned().collect::<Vec<_>>(),
            vec![(p(&[0]), p(&[0, 0])), (p(&[1]), p(&[1, 1]))]
        );

        let u = Universe::anonymous(4).unwrap();
        let mu = mu_w(&u).unwrap();
        assert_eq!(
            mu.image(&[0b0110, 0b1100]).cloned().collect::<Vec<_>>(),
            vec![p(&[0b0100])]
        );

        let zeta = zeta_w(&u).unwrap();
        let zeta_a = zeta.tensor(&subset_state(&u.subset(0b0101).unwrap()).unwrap()).unwrap();
        let unit_law = zeta_a.compose(&mu).unwrap();
        assert_eq!(unit_law.image(&[]).cloned().collect::<Vec<_>>(), vec![p(&[0b0101])]);
    }

    #[test]
    fn compose_examples() {
        let u = Universe::anonymous(3).unwrap();
        let copy_meet = delta_w(&u).unwrap().compose(&mu_w(&u).unwrap()).unwrap();
        assert_eq!(copy_meet, identity(&u, &ObjectType::w(1)).unwrap());

        let q4 = zeta_w(&u).unwrap().compose(&iota_w(&u).unwrap()).unwrap();
        assert_eq!(q4, identity(&u, &ObjectType::unit()).unwrap());

        let a = state(&u, ObjectType::w(1), [p(&[1])]).unwrap();
        let b = RelMorphism::new(&u, ObjectType::w(1), ObjectType::w(1), [(p(&[2]), p(&[3]))]).unwrap();
        assert!(a.compose(&b).unwrap().is_empty());

        let err = delta_w(&u).unwrap().compose(&delta_w(&u).unwrap()).unwrap_err();
        assert!(matches!(err, Error::TypeMismatch(_)));
    }

    #[test]
    fn tensor_examples() {
        let u = Universe::anonymous(2).unwrap();
        let f = delta_w(&u).unwrap();
        let g = mu_w(&u).unwrap();
        let id_i = identity(&u, &ObjectType::unit()).unwrap();
        assert_eq!(id_i.tensor(&f).unwrap(), f);
        assert_eq!(f.tensor(&g).unwrap().len(), f.len() * g.len());

        let iota = iota_w(&u).unwrap();
        let lhs = iota.tensor(&iota).unwrap();
        let rhs = mu_w(&u).unwrap().compose(&iota).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn type_checking_rejects_bad_points() {
        let u = Universe::anonymous(1).unwrap();
        let bad = RelMorphism::new(&u, ObjectType::w(1), ObjectType::unit(), [(p(&[2]), p(&[]))]);
        assert!(matches!(bad, Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let u = Universe::anonymous(6).unwrap();
        // W^4 over six entities has 2^24 points.
        assert!(matches!(
            identity(&u, &ObjectType::w(4)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_text_is_sorted() {
        let u = Universe::anonymous(1).unwrap();
        let some = quantifier_morphism(&GeneralizedQuantifier::builtin(QuantifierKind::Some), &u).unwrap();
        assert_eq!(some.to_canonical_text(), "W -> W\n[1] -> [1]\n");
        let verb_like = state(&u, ObjectType::wsw(), [p(&[1, STAR, 0]), p(&[0, STAR, 1])]).unwrap();
        assert_eq!(
            verb_like.to_canonical_text(),
            "I -> W⊗S⊗W\n[] -> [0,*,1]\n[] -> [1,*,0]\n"
        );
    }
}
