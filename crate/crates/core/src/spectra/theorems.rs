//! Checks of the dual-space descriptions for joins and quotients.
//!
//! Both checks run on float copies of their inputs with tolerance 1e-8 so
//! they also cover hypergroups whose characters are not rational.

use super::{characters, CharacterTable};
use crate::builders::{quotient, JoinLayout};
use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;
use crate::scalar::Scalar;

const TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinOperand {
    /// A nontrivial character of `K`, extended by zero on `J ∖ {e}`.
    K,
    /// A character of `J`, extended by 1 on `K`.
    J,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JoinMatch {
    /// Character index in the table of `K ∨ J`.
    pub character: usize,
    pub operand: JoinOperand,
    /// Character index in the table of the operand.
    pub source: usize,
    pub hyperdim: f64,
    /// `k_π λ_J(J)` for `K`-characters, `k_π` for `J`-characters.
    pub expected: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JoinDualReport {
    pub matches: Vec<JoinMatch>,
    /// `λ_J(J)` with `λ_J(e) = 1`.
    pub j_total_haar: f64,
}

impl JoinDualReport {
    pub fn max_residual(&self) -> f64 {
        self.matches.iter().map(|m| (m.hyperdim - m.expected).abs()).fold(0.0, f64::max)
    }
}

/// Matches every character of `H = K ∨ J` with its source character and
/// checks the hyperdimension rule.
pub fn verify_join_dual<S: Scalar>(
    k: &FiniteHypergroup<S>,
    j: &FiniteHypergroup<S>,
    h: &FiniteHypergroup<S>,
) -> Result<JoinDualReport> {
    let (k, j, h) = (k.to_f64(), j.to_f64(), h.to_f64());
    let layout = JoinLayout::new(&k, &j);
    if layout.order() != h.order() {
        return Err(Error::Verification(format!("join should have {} elements, found {}", layout.order(), h.order())));
    }
    let (tk, tj, th) = (characters(&k)?, characters(&j)?, characters(&h)?);
    let lambda_j = *j.total_haar();
    let j_rest: Vec<usize> = (0..j.order()).filter(|&s| s != j.identity()).collect();

    let mut used_k = vec![false; tk.len()];
    let mut used_j = vec![false; tj.len()];
    let mut matches = Vec::with_capacity(th.len());
    for (ci, sigma) in th.chars().iter().enumerate() {
        let trivial_on_k = layout.from_k.iter().all(|&x| (sigma[x] - 1.0).norm() <= TOL);
        let zero_on_j = j_rest.iter().all(|&s| sigma[layout.from_j[s]].norm() <= TOL);
        let (operand, source, expected) = if trivial_on_k {
            let restricted: Vec<_> = layout.from_j.iter().map(|&x| sigma[x]).collect();
            let src = tj.find(&restricted).ok_or_else(|| unmatched(ci, "J"))?;
            (JoinOperand::J, src, tj.hyperdim()[src])
        } else if zero_on_j {
            let restricted: Vec<_> = layout.from_k.iter().map(|&x| sigma[x]).collect();
            let src = tk.find(&restricted).ok_or_else(|| unmatched(ci, "K"))?;
            if src == tk.trivial_index() {
                return Err(Error::Verification(format!("character {ci} restricts to the trivial character of K")));
            }
            (JoinOperand::K, src, tk.hyperdim()[src] * lambda_j)
        } else {
            return Err(unmatched(ci, "either operand"));
        };
        let used = match operand {
            JoinOperand::K => &mut used_k[source],
            JoinOperand::J => &mut used_j[source],
        };
        if std::mem::replace(used, true) {
            return Err(Error::Verification(format!("character {source} of {operand:?} matched twice")));
        }
        let hyperdim = th.hyperdim()[ci];
        if (hyperdim - expected).abs() > TOL * expected.max(1.0) {
            return Err(Error::Verification(format!(
                "character {ci}: hyperdimension {hyperdim} but expected {expected}"
            )));
        }
        matches.push(JoinMatch { character: ci, operand, source, hyperdim, expected });
    }
    let expected_count = tk.len() - 1 + tj.len();
    if j.order() > 1 && matches.len() != expected_count {
        return Err(Error::Verification(format!("{} characters, expected {expected_count}", matches.len())));
    }
    Ok(JoinDualReport { matches, j_total_haar: lambda_j })
}

fn unmatched(ci: usize, which: &str) -> Error {
    Error::Verification(format!("character {ci} of the join does not extend a character of {which}"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMatch {
    /// Character of `H` that is trivial on `K`.
    pub character: usize,
    /// Its descent in the table of `H/K`.
    pub quotient_character: usize,
    pub hyperdim: f64,
    pub quotient_hyperdim: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientDualReport {
    pub matches: Vec<QuotientMatch>,
    pub quotient_order: usize,
}

/// Checks that the characters of `H` trivial on `K` descend bijectively to
/// the characters of `H/K` with the same hyperdimensions.
pub fn verify_quotient_dual<S: Scalar>(h: &FiniteHypergroup<S>, sub: &[usize]) -> Result<QuotientDualReport> {
    let h = h.to_f64();
    let q = quotient(&h, sub)?;
    let th = characters(&h)?;
    let tq: CharacterTable<f64> = characters(&q.hypergroup)?;
    let mut used = vec![false; tq.len()];
    let mut matches = Vec::new();
    for (ci, chi) in th.chars().iter().enumerate() {
        if !sub.iter().all(|&x| (chi[x] - 1.0).norm() <= TOL) {
            continue;
        }
        for coset in &q.cosets {
            if coset.iter().any(|&x| (chi[x] - chi[coset[0]]).norm() > TOL) {
                return Err(Error::Verification(format!("character {ci} is not constant on a coset")));
            }
        }
        let descended: Vec<_> = q.cosets.iter().map(|c| chi[c[0]]).collect();
        let qi = tq
            .find(&descended)
            .ok_or_else(|| Error::Verification(format!("character {ci} does not descend to a character of H/K")))?;
        if std::mem::replace(&mut used[qi], true) {
            return Err(Error::Verification(format!("quotient character {qi} hit twice")));
        }
        let (kh, kq) = (th.hyperdim()[ci], tq.hyperdim()[qi]);
        if (kh - kq).abs() > TOL * kh.max(1.0) {
            return Err(Error::Verification(format!("hyperdimension {kh} does not match quotient {kq}")));
        }
        matches.push(QuotientMatch { character: ci, quotient_character: qi, hyperdim: kh, quotient_hyperdim: kq });
    }
    if matches.len() != tq.len() {
        return Err(Error::Verification(format!(
            "{} characters descend but H/K has {}",
            matches.len(),
            tq.len()
        )));
    }
    Ok(QuotientDualReport { matches, quotient_order: q.hypergroup.order() })
}
