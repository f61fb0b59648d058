//! Set-theoretic truth: the clauses every other backend is checked against.

use crate::error::Result;
use crate::finite_model::{Mask, Subset};
use crate::lang::Reading;

use super::{IntransitiveDenotation, TransitiveDenotation};

/// `d n vp` is true iff `holds(d, n, vp)`.
pub fn intransitive(s: &IntransitiveDenotation) -> Result<bool> {
    s.check()?;
    Ok(s.d.holds_mask(s.n.bits(), s.vp.bits()))
}

/// The inner set of a linear reading: `{a ∈ n1 | d2 n2 (n2 ∩ v_a)}` for
/// subject-wide, `{b ∈ n2 | d1 n1 (n1 ∩ v⁻¹_b)}` for object-wide.
pub fn scope_set(s: &TransitiveDenotation, r: Reading) -> Result<Subset> {
    s.check()?;
    let (rows, outer, inner, q): (Vec<Mask>, Mask, Mask, _) = match r {
        Reading::SubjectWide => (s.v.rows().to_vec(), s.n1.bits(), s.n2.bits(), &s.d2),
        Reading::ObjectWide => (s.v.converse().rows().to_vec(), s.n2.bits(), s.n1.bits(), &s.d1),
        Reading::Branching => return Err(s.not_linear(r)),
    };
    let bits = rows
        .iter()
        .enumerate()
        .filter(|&(a, &row)| outer & (1 << a) != 0 && q.holds_mask(inner, inner & row))
        .fold(0, |acc, (a, _)| acc | (1 << a));
    s.n1.universe().subset(bits)
}

pub fn linear(s: &TransitiveDenotation, r: Reading) -> Result<bool> {
    let z = scope_set(s, r)?;
    Ok(match r {
        Reading::SubjectWide => s.d1.holds_mask(s.n1.bits(), z.bits()),
        _ => s.d2.holds_mask(s.n2.bits(), z.bits()),
    })
}
