use num_complex::Complex;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::hypergroup::HFunction;
use crate::scalar::{c_abs_f64, c_real, c_zero, Scalar};

/// `f̂(χ_i) = λ(H)⁻¹ Σ_x f(x) conj χ_i(x) λ(x)`.
pub fn fourier<S: Scalar>(table: &CharacterTable<S>, f: &HFunction<S>) -> Result<Vec<Complex<S>>> {
    let h = table.host();
    if !f.lives_on(h) {
        return Err(Error::HostMismatch);
    }
    let total = h.total_haar().clone();
    Ok(table
        .chars()
        .iter()
        .map(|chi| {
            let acc = (0..h.order()).fold(c_zero::<S>(), |acc, x| {
                acc + f.value(x).clone() * chi[x].clone().conj() * h.haar()[x].clone()
            });
            acc / total.clone()
        })
        .collect())
}

/// `f(x) = Σ_i k_i f̂_i χ_i(x)`.
pub fn inverse_fourier<S: Scalar>(table: &CharacterTable<S>, coefficients: &[Complex<S>]) -> Result<HFunction<S>> {
    if coefficients.len() != table.len() {
        return Err(Error::LengthMismatch { expected: table.len(), actual: coefficients.len() });
    }
    let h = table.host();
    let values = (0..h.order())
        .map(|x| {
            table.chars().iter().zip(coefficients).zip(table.hyperdim()).fold(c_zero::<S>(), |acc, ((chi, c), k)| {
                acc + chi[x].clone() * c.clone() * k.clone()
            })
        })
        .collect();
    HFunction::new(h, values)
}

/// `‖f‖²` with respect to the normalized Haar measure.
pub fn l2_norm_sq<S: Scalar>(table: &CharacterTable<S>, f: &HFunction<S>) -> S {
    let h = table.host();
    (0..h.order()).fold(S::zero(), |acc, x| acc + f.value(x).norm_sqr() * h.haar()[x].clone()) / h.total_haar().clone()
}

/// `Σ_i k_i |f̂_i|²`.
pub fn plancherel_norm_sq<S: Scalar>(table: &CharacterTable<S>, coefficients: &[Complex<S>]) -> S {
    coefficients.iter().zip(table.hyperdim()).fold(S::zero(), |acc, (c, k)| acc + c.norm_sqr() * k.clone())
}

/// Relative Parseval defect `|‖f‖² − Σ k |f̂|²| / ‖f‖²`.
pub fn parseval_defect<S: Scalar>(table: &CharacterTable<S>, f: &HFunction<S>) -> Result<f64> {
    let coeffs = fourier(table, f)?;
    let lhs = l2_norm_sq(table, f).to_f64();
    let rhs = plancherel_norm_sq(table, &coeffs).to_f64();
    Ok(if lhs == 0.0 { rhs.abs() } else { (lhs - rhs).abs() / lhs })
}

/// Relative round-trip defect `‖F⁻¹F f − f‖∞ / ‖f‖∞`.
pub fn round_trip_defect<S: Scalar>(table: &CharacterTable<S>, f: &HFunction<S>) -> Result<f64> {
    let back = inverse_fourier(table, &fourier(table, f)?)?;
    let scale = f.max_abs();
    let diff = back.max_abs_diff(f);
    Ok(if scale == 0.0 { diff } else { diff / scale })
}

/// Minimal idempotents `p_i = (k_i / λ(H)) χ_i` of `ℓ¹(H, λ)`:
/// `p_i * p_j = δ_ij p_i` under [`crate::hypergroup::convolve_l1`] and
/// `Σ_i p_i = δ_e`.
pub fn minimal_idempotents<S: Scalar>(table: &CharacterTable<S>) -> Vec<HFunction<S>> {
    let h = table.host();
    table
        .chars()
        .iter()
        .zip(table.hyperdim())
        .map(|(chi, k)| {
            let w = c_real(k.clone() / h.total_haar().clone());
            HFunction::new(h, chi.iter().map(|v| v.clone() * w.clone()).collect()).expect("row length is |H|")
        })
        .collect()
}

/// Sup-norm of a coefficient vector, as a float.
pub fn max_abs(coefficients: &[Complex<impl Scalar>]) -> f64 {
    coefficients.iter().map(c_abs_f64).fold(0.0, f64::max)
}
