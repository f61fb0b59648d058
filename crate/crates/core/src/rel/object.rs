use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::finite_model::{full_mask, Mask};

/// Generating objects: `W` is interpreted as the powerset of the universe,
/// `S` as the one-point sentence set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    W,
    S,
}

/// A formal tensor product of atoms. The empty list is the monoidal unit `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectType(Vec<Atom>);

impl ObjectType {
    pub fn unit() -> Self {
        ObjectType(Vec::new())
    }

    pub fn new(atoms: impl Into<Vec<Atom>>) -> Self {
        ObjectType(atoms.into())
    }

    /// `W ⊗ … ⊗ W` with `n` factors.
    pub fn w(n: usize) -> Self {
        ObjectType(vec![Atom::W; n])
    }

    pub fn s() -> Self {
        ObjectType(vec![Atom::S])
    }

    /// `W ⊗ S ⊗ W`, the type of a transitive verb state.
    pub fn wsw() -> Self {
        ObjectType(vec![Atom::W, Atom::S, Atom::W])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(&self, other: &ObjectType) -> ObjectType {
        let mut atoms = self.0.clone();
        atoms.extend_from_slice(&other.0);
        ObjectType(atoms)
    }

    /// Number of points of the interpreted object over a universe of `n` entities.
    pub fn cardinality(&self, n: usize) -> usize {
        let ws = self.0.iter().filter(|a| **a == Atom::W).count();
        1usize
            .checked_shl((n * ws) as u32)
            .filter(|_| n * ws < usize::BITS as usize)
            .unwrap_or(usize::MAX)
    }

    /// Every point of the interpreted object, in ascending lexicographic order.
    pub fn points(&self, n: usize) -> Vec<Point> {
        let top = full_mask(n);
        let mut out = vec![Point::new()];
        for atom in &self.0 {
            let mut next = Vec::with_capacity(out.len() << if *atom == Atom::W { n } else { 0 });
            for p in &out {
                match atom {
                    Atom::S => {
                        let mut q = p.clone();
                        q.push(STAR);
                        next.push(q);
                    }
                    Atom::W => {
                        for m in 0..=top {
                            let mut q = p.clone();
                            q.push(m);
                            next.push(q);
                        }
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Checks that `p` is a point of this object over `n` entities.
    pub fn check_point(&self, p: &Point, n: usize) -> Result<()> {
        if p.len() != self.0.len() {
            return Err(Error::TypeMismatch(format!(
                "point {} has arity {}, object {} has arity {}",
                PointDisplay(p),
                p.len(),
                self,
                self.0.len()
            )));
        }
        let top = full_mask(n);
        for (slot, atom) in p.iter().zip(&self.0) {
            let ok = match atom {
                Atom::W => slot & !top == 0,
                Atom::S => *slot == STAR,
            };
            if !ok {
                return Err(Error::TypeMismatch(format!(
                    "point {} is not an element of {} over {} entities",
                    PointDisplay(p),
                    self,
                    n
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ObjectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|a| match a {
                Atom::W => "W",
                Atom::S => "S",
            })
            .collect();
        f.write_str(&names.join("⊗"))
    }
}

impl fmt::Debug for ObjectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of an interpreted object: one subset mask per `W` slot and the
/// placeholder [`STAR`] per `S` slot.
pub type Point = SmallVec<[Mask; 6]>;

/// Slot value of the unique element of `S`.
pub const STAR: Mask = 0;

pub(crate) fn concat(a: &[Mask], b: &[Mask]) -> Point {
    let mut p = Point::with_capacity(a.len() + b.len());
    p.extend_from_slice(a);
    p.extend_from_slice(b);
    p
}

/// Renders a point as `[3,*,1]`; `S` slots need the type to be told apart and
/// are printed by [`PointDisplay::typed`].
pub struct PointDisplay<'a>(pub &'a [Mask]);

impl PointDisplay<'_> {
    pub fn typed(p: &[Mask], t: &ObjectType) -> String {
        let slots: Vec<String> = p
            .iter()
            .zip(t.atoms())
            .map(|(m, a)| match a {
                Atom::W => m.to_string(),
                Atom::S => "*".to_owned(),
            })
            .collect();
        format!("[{}]", slots.join(","))
    }
}

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", slots.join(","))
    }
}
