//! Bialgebra and compact-closure equations, written once over any category
//! whose morphisms can be composed, tensored and compared.

use serde::Serialize;

use crate::error::Result;

pub trait Arrow: Sized + PartialEq {
    /// "first `self`, then `next`"
    fn then(&self, next: &Self) -> Result<Self>;
    fn tensor(&self, other: &Self) -> Result<Self>;
}

/// The structure maps on `W` together with the identities and the swap the
/// equations mention.
pub struct Structure<M> {
    pub delta: M,
    pub iota: M,
    pub mu: M,
    pub zeta: M,
    pub epsilon: M,
    pub eta: M,
    pub id_w: M,
    pub id_unit: M,
    pub swap_ww: M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BialgebraReport {
    /// `ι ∘ μ = ι ⊗ ι`
    pub q1: bool,
    /// `δ ∘ ζ = ζ ⊗ ζ`
    pub q2: bool,
    /// `δ ∘ μ = (μ ⊗ μ) ∘ (1 ⊗ σ ⊗ 1) ∘ (δ ⊗ δ)`
    pub q3: bool,
    /// `ι ∘ ζ = 1_I`
    pub q4: bool,
}

impl BialgebraReport {
    pub fn all(&self) -> bool {
        self.q1 && self.q2 && self.q3 && self.q4
    }

    pub fn named(&self) -> [(&'static str, bool); 4] {
        [("Q1", self.q1), ("Q2", self.q2), ("Q3", self.q3), ("Q4", self.q4)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SnakeReport {
    /// `(1 ⊗ ε) ∘ (η ⊗ 1) = 1_W`
    pub left: bool,
    /// `(ε ⊗ 1) ∘ (1 ⊗ η) = 1_W`
    pub right: bool,
}

impl SnakeReport {
    pub fn all(&self) -> bool {
        self.left && self.right
    }

    pub fn named(&self) -> [(&'static str, bool); 2] {
        [("snake-left", self.left), ("snake-right", self.right)]
    }
}

pub fn bialgebra_laws<M: Arrow>(s: &Structure<M>) -> Result<BialgebraReport> {
    let q1 = s.mu.then(&s.iota)? == s.iota.tensor(&s.iota)?;
    let q2 = s.zeta.then(&s.delta)? == s.zeta.tensor(&s.zeta)?;
    let middle = s.id_w.tensor(&s.swap_ww)?.tensor(&s.id_w)?;
    let q3 = s.mu.then(&s.delta)? == s.delta.tensor(&s.delta)?.then(&middle)?.then(&s.mu.tensor(&s.mu)?)?;
    let q4 = s.zeta.then(&s.iota)? == s.id_unit;
    Ok(BialgebraReport { q1, q2, q3, q4 })
}

pub fn snake_laws<M: Arrow>(s: &Structure<M>) -> Result<SnakeReport> {
    let left = s.eta.tensor(&s.id_w)?.then(&s.id_w.tensor(&s.epsilon)?)? == s.id_w;
    let right = s.id_w.tensor(&s.eta)?.then(&s.epsilon.tensor(&s.id_w)?)? == s.id_w;
    Ok(SnakeReport { left, right })
}
