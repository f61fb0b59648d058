//! Generalised quantifiers as binary relations over the powerset of a universe.
//!
//! `holds(q, a, x)` reads "`a` is related to `x` by `q`": for a determiner `d`
//! and noun denotation `a`, the sets `x` with `holds(d, a, x)` are the
//! properties that `d a` quantifies over.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{cap_check, Error, Result};
use crate::finite_model::{masks, Mask, Subset, Universe};

/// Largest universe over which quantifier relations are tabulated or checked.
pub const DEFAULT_TABLE_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantifierKind {
    Some,
    All,
    No,
    AtLeast(u32),
    AtMost(u32),
    Exactly(u32),
    /// Strict majority: `|a ∩ x| > |a \ x|`.
    Most,
    /// `|a ∩ x| < ceil(|a| / 3)`.
    Few,
}

impl QuantifierKind {
    fn holds(self, a: Mask, x: Mask) -> bool {
        let inside = (a & x).count_ones();
        match self {
            QuantifierKind::Some => inside > 0,
            QuantifierKind::All => a & !x == 0,
            QuantifierKind::No => inside == 0,
            QuantifierKind::AtLeast(k) => inside >= k,
            QuantifierKind::AtMost(k) => inside <= k,
            QuantifierKind::Exactly(k) => inside == k,
            QuantifierKind::Most => inside > (a & !x).count_ones(),
            QuantifierKind::Few => inside < a.count_ones().div_ceil(3),
        }
    }
}

impl fmt::Display for QuantifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantifierKind::Some => f.write_str("some"),
            QuantifierKind::All => f.write_str("all"),
            QuantifierKind::No => f.write_str("no"),
            QuantifierKind::AtLeast(k) => write!(f, "at_least({k})"),
            QuantifierKind::AtMost(k) => write!(f, "at_most({k})"),
            QuantifierKind::Exactly(k) => write!(f, "exactly({k})"),
            QuantifierKind::Most => f.write_str("most"),
            QuantifierKind::Few => f.write_str("few"),
        }
    }
}

impl FromStr for QuantifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let simple = match s {
            "some" => Some(QuantifierKind::Some),
            "all" => Some(QuantifierKind::All),
            "no" => Some(QuantifierKind::No),
            "most" => Some(QuantifierKind::Most),
            "few" => Some(QuantifierKind::Few),
            _ => None,
        };
        if let Some(kind) = simple {
            return Ok(kind);
        }
        let bad = || Error::Unresolved {
            kind: "quantifier kind",
            name: s.to_owned(),
        };
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let k: u32 = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        match head.trim() {
            "at_least" => Ok(QuantifierKind::AtLeast(k)),
            "at_most" => Ok(QuantifierKind::AtMost(k)),
            "exactly" => Ok(QuantifierKind::Exactly(k)),
            _ => Err(bad()),
        }
    }
}

/// An explicit quantifier relation over the powerset of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantifierTable {
    universe: Universe,
    pairs: BTreeSet<(Mask, Mask)>,
}

impl QuantifierTable {
    pub fn new<I: IntoIterator<Item = (Subset, Subset)>>(universe: &Universe, pairs: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, x) in pairs {
            if !a.universe().same_as(universe) || !x.universe().same_as(universe) {
                return Err(Error::UniverseMismatch);
            }
            set.insert((a.bits(), x.bits()));
        }
        Ok(QuantifierTable {
            universe: universe.clone(),
            pairs: set,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Mask, Mask)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    Builtin(QuantifierKind),
    Table(QuantifierTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Upward,
    Downward,
    Both,
    Neither,
}

impl Monotonicity {
    pub fn is_upward(self) -> bool {
        matches!(self, Monotonicity::Upward | Monotonicity::Both)
    }

    pub fn is_downward(self) -> bool {
        matches!(self, Monotonicity::Downward | Monotonicity::Both)
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Upward => "upward",
            Monotonicity::Downward => "downward",
            Monotonicity::Both => "both",
            Monotonicity::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedQuantifier {
    name: String,
    definition: Definition,
}

impl GeneralizedQuantifier {
    pub fn builtin(kind: QuantifierKind) -> Self {
        GeneralizedQuantifier {
            name: kind.to_string(),
            definition: Definition::Builtin(kind),
        }
    }

    pub fn named_builtin(name: impl Into<String>, kind: QuantifierKind) -> Self {
        GeneralizedQuantifier {
            name: name.into(),
            definition: Definition::Builtin(kind),
        }
    }

    pub fn table(name: impl Into<String>, table: QuantifierTable) -> Self {
        GeneralizedQuantifier {
            name: name.into(),
            definition: Definition::Table(table),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn definition(&self) -> &Definition {
        &self.definition
    }

    /// Membership test on raw masks. Callers are responsible for universe
    /// agreement; table quantifiers answer `false` outside their table.
    pub fn holds_mask(&self, a: Mask, x: Mask) -> bool {
        match &self.definition {
            Definition::Builtin(kind) => kind.holds(a, x),
            Definition::Table(t) => t.pairs.contains(&(a, x)),
        }
    }

    pub(crate) fn check_universe(&self, u: &Universe) -> Result<()> {
        match &self.definition {
            Definition::Table(t) if !t.universe.same_as(u) => Err(Error::UniverseMismatch),
            _ => Ok(()),
        }
    }

    pub fn holds(&self, a: &Subset, x: &Subset) -> Result<bool> {
        if !a.universe().same_as(x.universe()) {
            return Err(Error::UniverseMismatch);
        }
        self.check_universe(a.universe())?;
        Ok(self.holds_mask(a.bits(), x.bits()))
    }

    /// Every `(a, x)` with `holds(a, x)`, ordered by `a` then `x`.
    pub fn as_table(&self, u: &Universe) -> Result<Vec<(Subset, Subset)>> {
        self.table_masks(u)?
            .into_iter()
            .map(|(a, x)| Ok((u.subset(a)?, u.subset(x)?)))
            .collect()
    }

    pub(crate) fn table_masks(&self, u: &Universe) -> Result<Vec<(Mask, Mask)>> {
        cap_check("quantifier table universe size", u.size(), DEFAULT_TABLE_CAP)?;
        self.check_universe(u)?;
        let n = u.size();
        Ok(masks(n)
            .flat_map(|a| masks(n).map(move |x| (a, x)))
            .filter(|&(a, x)| self.holds_mask(a, x))
            .collect())
    }

    pub fn is_conservative(&self, u: &Universe) -> Result<bool> {
        cap_check("quantifier check universe size", u.size(), DEFAULT_TABLE_CAP)?;
        self.check_universe(u)?;
        let n = u.size();
        Ok(masks(n).all(|a| masks(n).all(|x| self.holds_mask(a, x) == self.holds_mask(a, x & a))))
    }

    /// Monotonicity in the second argument.
    pub fn monotonicity(&self, u: &Universe) -> Result<Monotonicity> {
        cap_check("quantifier check universe size", u.size(), DEFAULT_TABLE_CAP)?;
        self.check_universe(u)?;
        let n = u.size();
        let (mut upward, mut downward) = (true, true);
        // Single-element extensions suffice: inclusion chains are built from them.
        for a in masks(n) {
            for x in masks(n) {
                for i in 0..n {
                    let bit = 1 << i;
                    if x & bit != 0 {
                        continue;
                    }
                    let small = self.holds_mask(a, x);
                    let large = self.holds_mask(a, x | bit);
                    upward &= !small || large;
                    downward &= !large || small;
                }
            }
        }
        Ok(match (upward, downward) {
            (true, true) => Monotonicity::Both,
            (true, false) => Monotonicity::Upward,
            (false, true) => Monotonicity::Downward,
            (false, false) => Monotonicity::Neither,
        })
    }
}

impl fmt::Display for GeneralizedQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub fn holds(q: &GeneralizedQuantifier, a: &Subset, x: &Subset) -> Result<bool> {
    q.holds(a, x)
}

pub fn as_table(q: &GeneralizedQuantifier, u: &Universe) -> Result<Vec<(Subset, Subset)>> {
    q.as_table(u)
}

pub fn is_conservative(q: &GeneralizedQuantifier, u: &Universe) -> Result<bool> {
    q.is_conservative(u)
}

pub fn monotonicity(q: &GeneralizedQuantifier, u: &Universe) -> Result<Monotonicity> {
    q.monotonicity(u)
}

/// Every builtin kind the library ships, with small parameters.
pub fn builtin_kinds() -> Vec<QuantifierKind> {
    use QuantifierKind::*;
    vec![
        Some,
        All,
        No,
        AtLeast(0),
        AtLeast(1),
        AtLeast(2),
        AtMost(0),
        AtMost(1),
        Exactly(0),
        Exactly(1),
        Exactly(2),
        Most,
        Few,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use QuantifierKind::*;

    fn q(kind: QuantifierKind) -> GeneralizedQuantifier {
        GeneralizedQuantifier::builtin(kind)
    }

    #[test]
    fn holds_examples() {
        let u = Universe::anonymous(4).unwrap();
        let s = |ix: &[usize]| u.subset_of_indices(ix.iter().copied()).unwrap();
        assert!(holds(&q(Some), &s(&[1, 2]), &s(&[2, 3])).unwrap());
        assert!(!holds(&q(All), &s(&[1, 2]), &s(&[1])).unwrap());
        assert!(holds(&q(Most), &s(&[1, 2, 3]), &s(&[1, 2])).unwrap());
        assert!(holds(&q(Exactly(2)), &u.full(), &s(&[0, 3])).unwrap());
        assert!(!holds(&q(Exactly(2)), &u.full(), &s(&[0])).unwrap());
        assert!(holds(&q(No), &s(&[0]), &s(&[1])).unwrap());
        // ceil(3 / 3) = 1, so only the empty overlap counts as few
        assert!(holds(&q(Few), &s(&[0, 1, 2]), &s(&[3])).unwrap());
        assert!(!holds(&q(Few), &s(&[0, 1, 2]), &s(&[0])).unwrap());
        assert!(holds(&q(Few), &u.full(), &s(&[0])).unwrap());
    }

    #[test]
    fn holds_rejects_mixed_universes() {
        let u = Universe::anonymous(2).unwrap();
        let w = Universe::new(["x"]).unwrap();
        assert_eq!(holds(&q(Some), &u.full(), &w.full()), Err(Error::UniverseMismatch));
        let t = QuantifierTable::new(&w, []).unwrap();
        let tq = GeneralizedQuantifier::table("t", t);
        assert_eq!(tq.holds(&u.full(), &u.full()), Err(Error::UniverseMismatch));
    }

    #[test]
    fn table_examples() {
        let one = Universe::anonymous(1).unwrap();
        let e = one.full();
        assert_eq!(as_table(&q(Some), &one).unwrap(), vec![(e.clone(), e.clone())]);
        assert_eq!(
            as_table(&q(All), &one).unwrap(),
            vec![
                (one.empty(), one.empty()),
                (one.empty(), e.clone()),
                (e.clone(), e.clone())
            ]
        );
        let zero = Universe::anonymous(0).unwrap();
        assert_eq!(as_table(&q(No), &zero).unwrap(), vec![(zero.empty(), zero.empty())]);
        let seven = Universe::anonymous(7).unwrap();
        assert!(matches!(as_table(&q(Some), &seven), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn conservativity_examples() {
        let one = Universe::anonymous(1).unwrap();
        let t = QuantifierTable::new(&one, [(one.empty(), one.full())]).unwrap();
        assert!(!is_conservative(&GeneralizedQuantifier::table("odd", t), &one).unwrap());
        for n in 0..=4 {
            let u = Universe::anonymous(n).unwrap();
            for kind in builtin_kinds() {
                assert!(is_conservative(&q(kind), &u).unwrap(), "{kind} over size {n}");
            }
        }
    }

    #[test]
    fn monotonicity_examples() {
        for n in 1..=3 {
            let u = Universe::anonymous(n).unwrap();
            assert_eq!(monotonicity(&q(Some), &u).unwrap(), Monotonicity::Upward);
            assert_eq!(monotonicity(&q(All), &u).unwrap(), Monotonicity::Upward);
            assert_eq!(monotonicity(&q(No), &u).unwrap(), Monotonicity::Downward);
            // Below two entities these two are constant, hence both ways monotone.
            let expect = |m| if n < 2 { Monotonicity::Both } else { m };
            assert_eq!(monotonicity(&q(AtLeast(2)), &u).unwrap(), expect(Monotonicity::Upward));
            assert_eq!(monotonicity(&q(AtMost(1)), &u).unwrap(), expect(Monotonicity::Downward));
        }
        let two = Universe::anonymous(2).unwrap();
        assert_eq!(monotonicity(&q(Exactly(1)), &two).unwrap(), Monotonicity::Neither);
        // On a one-point powerset nothing can grow.
        let zero = Universe::anonymous(0).unwrap();
        assert_eq!(monotonicity(&q(Exactly(1)), &zero).unwrap(), Monotonicity::Both);
    }

    #[test]
    fn table_and_predicate_agree() {
        for n in 0..=4 {
            let u = Universe::anonymous(n).unwrap();
            for kind in builtin_kinds() {
                let gq = q(kind);
                let table: BTreeSet<(Mask, Mask)> = gq.table_masks(&u).unwrap().into_iter().collect();
                let tq =
                    GeneralizedQuantifier::table("copy", QuantifierTable::new(&u, gq.as_table(&u).unwrap()).unwrap());
                for a in masks(n) {
                    for x in masks(n) {
                        assert_eq!(gq.holds_mask(a, x), table.contains(&(a, x)));
                        assert_eq!(gq.holds_mask(a, x), tq.holds_mask(a, x));
                    }
                }
            }
        }
    }

    #[test]
    fn synonymous_builtins() {
        for n in 0..=4 {
            let u = Universe::anonymous(n).unwrap();
            assert_eq!(q(Some).table_masks(&u), q(AtLeast(1)).table_masks(&u));
            assert_eq!(q(No).table_masks(&u), q(AtMost(0)).table_masks(&u));
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in builtin_kinds() {
            assert_eq!(kind.to_string().parse::<QuantifierKind>().unwrap(), kind);
        }
        assert!("several".parse::<QuantifierKind>().is_err());
        assert!("at_least(x)".parse::<QuantifierKind>().is_err());
    }
}
