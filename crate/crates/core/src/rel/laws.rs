use crate::error::{cap_check, Result};
use crate::finite_model::Universe;
use crate::laws::{bialgebra_laws, snake_laws, Arrow, BialgebraReport, SnakeReport, Structure};

use super::morphism::*;
use super::object::ObjectType;

/// Largest universe for exhaustive relational law checks.
pub const DEFAULT_LAW_CAP: usize = 4;

impl Arrow for RelMorphism {
    fn then(&self, next: &Self) -> Result<Self> {
        self.compose(next)
    }

    fn tensor(&self, other: &Self) -> Result<Self> {
        RelMorphism::tensor(self, other)
    }
}

/// The powerset bialgebra `(P(U), δ, ι, μ, ζ)` with its cups and caps.
pub fn powerset_structure(u: &Universe) -> Result<Structure<RelMorphism>> {
    let w = ObjectType::w(1);
    Ok(Structure {
        delta: delta_w(u)?,
        iota: iota_w(u)?,
        mu: mu_w(u)?,
        zeta: zeta_w(u)?,
        epsilon: epsilon_w(u)?,
        eta: eta_w(u)?,
        id_w: identity(u, &w)?,
        id_unit: identity(u, &ObjectType::unit())?,
        swap_ww: symmetry(u, &w, &w)?,
    })
}

pub fn check_bialgebra_laws(u: &Universe) -> Result<BialgebraReport> {
    cap_check("law check universe size", u.size(), DEFAULT_LAW_CAP)?;
    bialgebra_laws(&powerset_structure(u)?)
}

pub fn check_snake_equations(u: &Universe) -> Result<SnakeReport> {
    cap_check("law check universe size", u.size(), DEFAULT_LAW_CAP)?;
    snake_laws(&powerset_structure(u)?)
}
