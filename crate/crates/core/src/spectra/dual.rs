use num_complex::Complex;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, HypergroupData, StructureConstants};
use crate::scalar::{c_zero, Scalar};

/// Coefficients of `χ_i χ_j` in the character basis below this are genuine
/// obstructions; those in `[-DUAL_CLAMP, 0)` are treated as zero.
pub const DUAL_CLAMP: f64 = 1e-9;

/// A product `χ_i χ_j` with a negative (or non-real) coefficient on `χ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualObstruction<S> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coefficient: Complex<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DualResult<S> {
    /// The character set with pointwise products is a hypergroup whose Haar
    /// measure is the Plancherel measure.
    Dual(FiniteHypergroup<S>),
    Obstruction(DualObstruction<S>),
}

impl<S> DualResult<S> {
    pub fn dual(self) -> Option<FiniteHypergroup<S>> {
        match self {
            DualResult::Dual(h) => Some(h),
            DualResult::Obstruction(_) => None,
        }
    }
}

/// Expansion coefficient of `χ_i χ_j` on `χ_k`:
/// `k_k λ(H)⁻¹ Σ_x χ_i(x) χ_j(x) conj χ_k(x) λ(x)`.
pub fn product_coefficient<S: Scalar>(table: &CharacterTable<S>, i: usize, j: usize, k: usize) -> Complex<S> {
    let h = table.host();
    let acc = (0..h.order()).fold(c_zero::<S>(), |acc, x| {
        acc + table.value(i, x).clone() * table.value(j, x).clone() * table.value(k, x).clone().conj() * h.haar()[x].clone()
    });
    acc * table.hyperdim()[k].clone() / h.total_haar().clone()
}

/// Builds the dual hypergroup on the character set, or the first
/// `(i, j, k)` (lexicographically) whose coefficient is negative or
/// non-real. Characters are labelled `chi0, chi1, …` in table order.
pub fn dual_hypergroup<S: Scalar>(table: &CharacterTable<S>) -> Result<DualResult<S>> {
    let m = table.len();
    let mut constants = StructureConstants::zeros(m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let a = product_coefficient(table, i, j, k);
                let im_bad = !a.im.within(DUAL_CLAMP);
                if a.re.below(DUAL_CLAMP) || im_bad {
                    return Ok(DualResult::Obstruction(DualObstruction { i, j, k, coefficient: a }));
                }
                let value = if a.re.is_negative() { S::zero() } else { a.re };
                constants.set(i, j, k, value);
            }
        }
    }
    let involution = (0..m).map(|i| table.conjugate_index(i)).collect();
    let dual = FiniteHypergroup::from_data(HypergroupData {
        labels: (0..m).map(|i| format!("chi{i}")).collect(),
        identity: table.trivial_index(),
        involution,
        constants,
    })?;
    for (i, (l, k)) in dual.haar().iter().zip(table.hyperdim()).enumerate() {
        if !(l.clone() - k.clone()).within(1e-8) {
            return Err(Error::Verification(format!(
                "dual Haar weight {l} differs from hyperdimension {k} at character {i}"
            )));
        }
    }
    Ok(DualResult::Dual(dual))
}
