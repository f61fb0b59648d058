//! Universes, subsets as bitmasks, and binary relations between entities.
//!
//! A [`Universe`] is a cheap, shareable handle. Every [`Subset`] and [`BinRel`]
//! carries the handle of the universe it was built over, and binary operations
//! refuse operands from different universes.

use std::fmt;
use std::sync::Arc;

use crate::error::{cap_check, Error, Result};

/// Bitmask over entity positions. Bit `i` stands for the `i`-th entity.
pub type Mask = u32;

/// Largest universe accepted by [`Universe::new`].
pub const DEFAULT_UNIVERSE_CAP: usize = 12;

#[derive(Debug)]
struct UniverseInner {
    entities: Vec<String>,
}

/// An ordered, finite set of named entities.
#[derive(Clone)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    pub fn new<I, S>(entities: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(entities, DEFAULT_UNIVERSE_CAP)
    }

    pub fn with_cap<I, S>(entities: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let entities: Vec<String> = entities.into_iter().map(Into::into).collect();
        // Masks are 32 bits wide whatever the configured cap says.
        cap_check("universe size", entities.len(), cap.min(Mask::BITS as usize - 1))?;
        for (i, name) in entities.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyEntityName);
            }
            if entities[..i].contains(name) {
                return Err(Error::Duplicate {
                    kind: "entity",
                    name: name.clone(),
                });
            }
        }
        Ok(Universe(Arc::new(UniverseInner { entities })))
    }

    /// A universe whose entities are named `e0 .. e{n-1}`.
    pub fn anonymous(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| format!("e{i}")))
    }

    pub fn size(&self) -> usize {
        self.0.entities.len()
    }

    pub fn entities(&self) -> &[String] {
        &self.0.entities
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.0.entities.get(index).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .entities
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownEntity(name.to_owned()))
    }

    /// Mask with every entity set.
    pub fn full_mask(&self) -> Mask {
        full_mask(self.size())
    }

    pub fn empty(&self) -> Subset {
        Subset {
            bits: 0,
            universe: self.clone(),
        }
    }

    pub fn full(&self) -> Subset {
        Subset {
            bits: self.full_mask(),
            universe: self.clone(),
        }
    }

    pub fn subset(&self, bits: Mask) -> Result<Subset> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::IndexOutOfRange {
                index: (Mask::BITS - bits.leading_zeros() - 1) as usize,
                size: self.size(),
            });
        }
        Ok(Subset {
            bits,
            universe: self.clone(),
        })
    }

    pub fn subset_of_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<Subset> {
        let mut bits = 0;
        for i in indices {
            self.check_index(i)?;
            bits |= 1 << i;
        }
        self.subset(bits)
    }

    pub fn subset_of_names<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0;
        for name in names {
            bits |= 1 << self.index_of(name.as_ref())?;
        }
        self.subset(bits)
    }

    pub fn singleton(&self, index: usize) -> Result<Subset> {
        self.check_index(index)?;
        self.subset(1 << index)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.size(),
            })
        }
    }

    /// Whether `other` is the same universe: the same handle, or the same
    /// ordered entity list.
    pub fn same_as(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.entities == other.0.entities
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.0.entities).finish()
    }
}

pub(crate) fn full_mask(size: usize) -> Mask {
    if size == 0 {
        0
    } else {
        Mask::MAX >> (Mask::BITS as usize - size)
    }
}

fn same_universe(a: &Universe, b: &Universe) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// A subset of a universe, stored as a bitmask over entity positions.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    bits: Mask,
    universe: Universe,
}

impl Subset {
    pub fn bits(&self) -> Mask {
        self.bits
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe.size() && self.bits & (1 << index) != 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe.size()).filter(move |&i| self.bits & (1 << i) != 0)
    }

    pub fn names(&self) -> Vec<String> {
        self.indices().map(|i| self.universe.entities()[i].clone()).collect()
    }

    pub fn intersect(&self, other: &Subset) -> Result<Subset> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.with_bits(self.bits & other.bits))
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.with_bits(self.bits | other.bits))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.with_bits(self.bits & !other.bits))
    }

    pub fn complement(&self) -> Subset {
        self.with_bits(!self.bits & self.universe.full_mask())
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.bits & !other.bits == 0)
    }

    fn with_bits(&self, bits: Mask) -> Subset {
        Subset {
            bits,
            universe: self.universe.clone(),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// Free-standing form of [`Subset::intersect`].
pub fn intersect(a: &Subset, b: &Subset) -> Result<Subset> {
    a.intersect(b)
}

/// A binary relation on the entities of a universe, stored row-wise: row `a`
/// is the mask of every `b` with `(a, b)` in the relation.
#[derive(Clone, PartialEq, Eq)]
pub struct BinRel {
    rows: Vec<Mask>,
    universe: Universe,
}

impl BinRel {
    pub fn empty(universe: &Universe) -> BinRel {
        BinRel {
            rows: vec![0; universe.size()],
            universe: universe.clone(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(universe: &Universe, pairs: I) -> Result<BinRel> {
        let mut rel = BinRel::empty(universe);
        for (a, b) in pairs {
            universe.check_index(a)?;
            universe.check_index(b)?;
            rel.rows[a] |= 1 << b;
        }
        Ok(rel)
    }

    pub fn from_named_pairs<I, S>(universe: &Universe, pairs: I) -> Result<BinRel>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let indexed = pairs
            .into_iter()
            .map(|(a, b)| Ok((universe.index_of(a.as_ref())?, universe.index_of(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        BinRel::from_pairs(universe, indexed)
    }

    /// The relation whose pairs are the set bits of `code`, pair `(a, b)` at
    /// bit `a * size + b`. Enumerating `code` over `0 .. 2^(size^2)` visits
    /// every relation once.
    pub fn from_code(universe: &Universe, code: u64) -> Result<BinRel> {
        let n = universe.size();
        cap_check("relation code width", n * n, 63)?;
        if code >> (n * n) != 0 {
            return Err(Error::IndexOutOfRange {
                index: (u64::BITS - code.leading_zeros() - 1) as usize,
                size: n * n,
            });
        }
        let rows = (0..n).map(|a| ((code >> (a * n)) as Mask) & full_mask(n)).collect();
        Ok(BinRel {
            rows,
            universe: universe.clone(),
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.rows.len() && b < self.rows.len() && self.rows[a] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Pairs in ascending (subject, object) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        (0..n)
            .flat_map(|a| {
                (0..n)
                    .filter(move |&b| self.rows[a] & (1 << b) != 0)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn named_pairs(&self) -> Vec<(String, String)> {
        let names = self.universe.entities();
        self.pairs()
            .into_iter()
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect()
    }

    pub fn converse(&self) -> BinRel {
        let n = self.rows.len();
        let mut rows = vec![0; n];
        for (a, b) in self.pairs() {
            rows[b] |= 1 << a;
        }
        BinRel {
            rows,
            universe: self.universe.clone(),
        }
    }

    /// `{ b | a v b }`
    pub fn fiber(&self, a: usize) -> Result<Subset> {
        self.universe.check_index(a)?;
        self.universe.subset(self.rows[a])
    }

    /// `{ b | exists a in x with a v b }`
    pub fn forward_image(&self, x: &Subset) -> Result<Subset> {
        same_universe(&self.universe, x.universe())?;
        self.universe.subset(self.image_mask(x.bits()))
    }

    pub(crate) fn image_mask(&self, x: Mask) -> Mask {
        self.rows
            .iter()
            .enumerate()
            .filter(|(a, _)| x & (1 << a) != 0)
            .fold(0, |acc, (_, &row)| acc | row)
    }

    /// Whether `x × y` is contained in the relation.
    pub(crate) fn covers_product(&self, x: Mask, y: Mask) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(a, &row)| x & (1 << a) == 0 || y & !row == 0)
    }

    /// Whether every pair of the relation lies in `x × y`.
    pub(crate) fn within_product(&self, x: Mask, y: Mask) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(a, &row)| row == 0 || (x & (1 << a) != 0 && row & !y == 0))
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.named_pairs()).finish()
    }
}

pub fn forward_image(v: &BinRel, x: &Subset) -> Result<Subset> {
    v.forward_image(x)
}

pub fn converse(v: &BinRel) -> BinRel {
    v.converse()
}

pub fn fiber(v: &BinRel, a: usize) -> Result<Subset> {
    v.fiber(a)
}

/// Every subset of `u` in ascending bitmask order.
pub fn enumerate_powerset(u: &Universe) -> Result<Vec<Subset>> {
    enumerate_powerset_with_cap(u, DEFAULT_UNIVERSE_CAP)
}

pub fn enumerate_powerset_with_cap(u: &Universe, cap: usize) -> Result<Vec<Subset>> {
    cap_check("powerset universe size", u.size(), cap)?;
    Ok(masks(u.size())
        .map(|bits| Subset {
            bits,
            universe: u.clone(),
        })
        .collect())
}

/// All masks of a universe of `size` entities, ascending.
pub(crate) fn masks(size: usize) -> std::ops::RangeInclusive<Mask> {
    0..=full_mask(size)
}
