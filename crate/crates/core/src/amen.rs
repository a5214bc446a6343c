//! The diagonal of `ℓ¹(H, λ)` and the amenability constant of a finite
//! commutative hypergroup.
//!
//! With canonical Haar weights (`λ(e) = 1`) the unique diagonal is
//! `Δ(x, y) = λ(H)⁻² Σ_χ k_χ² χ(x) χ(y)`; its `ℓ¹(H×H, λ×λ)` norm is
//! `AM = λ(H)⁻² Σ_{x,y} |Σ_χ k_χ² χ(x) conj χ(y)| λ(x) λ(y)` (the two sums
//! differ by the relabeling `y ↦ ỹ`).

use num_complex::Complex;

use crate::builders::{hp, product};
use crate::error::{Error, Result};
use crate::hypergroup::{convolve_l1, FiniteHypergroup, HFunction};
use crate::scalar::{c_abs_f64, c_modulus, c_zero, Scalar};
use crate::spectra::{characters, CharacterTable};

/// `Δ` as an `n × n` array indexed `[x][y]`.
pub type Diagonal<S> = Vec<Vec<Complex<S>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct AMReport<S> {
    /// `‖Δ‖`, the amenability constant.
    pub am: S,
    pub diagonal: Diagonal<S>,
    /// `max_ψ ‖m(Δ) * ψ − ψ‖∞` over the characters.
    pub residual_identity: f64,
    /// `max_ψ ‖ψ·Δ − Δ·ψ‖∞` over the characters.
    pub residual_commute: f64,
}

pub fn diagonal<S: Scalar>(table: &CharacterTable<S>) -> Diagonal<S> {
    let h = table.host();
    let n = h.order();
    let total_sq = h.total_haar().clone() * h.total_haar().clone();
    let weights: Vec<S> = table.hyperdim().iter().map(|k| k.clone() * k.clone()).collect();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let acc = table.chars().iter().zip(&weights).fold(c_zero::<S>(), |acc, (chi, w)| {
                        acc + chi[x].clone() * chi[y].clone() * w.clone()
                    });
                    acc / total_sq.clone()
                })
                .collect()
        })
        .collect()
}

/// Closed-form amenability constant. Exact scalars need every inner sum to
/// have a rational modulus, otherwise [`Error::NotExact`].
pub fn amenability_constant<S: Scalar>(table: &CharacterTable<S>) -> Result<S> {
    let h = table.host();
    let n = h.order();
    let weights: Vec<S> = table.hyperdim().iter().map(|k| k.clone() * k.clone()).collect();
    let mut total = S::zero();
    for x in 0..n {
        for y in 0..n {
            let inner = table.chars().iter().zip(&weights).fold(c_zero::<S>(), |acc, (chi, w)| {
                acc + chi[x].clone() * chi[y].clone().conj() * w.clone()
            });
            let modulus = c_modulus(&inner).ok_or_else(|| Error::NotExact(format!("|{inner}| is irrational")))?;
            total = total + modulus * h.haar()[x].clone() * h.haar()[y].clone();
        }
    }
    let lambda = h.total_haar().clone();
    Ok(total / (lambda.clone() * lambda))
}

/// `Σ_{x,y} |Δ(x,y)| λ(x) λ(y)` computed from the explicit diagonal.
pub fn diagonal_norm<S: Scalar>(h: &FiniteHypergroup<S>, delta: &Diagonal<S>) -> Result<S> {
    let mut total = S::zero();
    for (x, row) in delta.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            let modulus = c_modulus(v).ok_or_else(|| Error::NotExact(format!("|{v}| is irrational")))?;
            total = total + modulus * h.haar()[x].clone() * h.haar()[y].clone();
        }
    }
    Ok(total)
}

/// `m(Δ)`, the image of `Δ` under the multiplication map of `ℓ¹(H, λ)`:
/// `m(Δ)(z) = Σ_{x,y} Δ(x,y) λ(x) c[x̃][z][y]`.
pub fn multiply_out<S: Scalar>(h: &FiniteHypergroup<S>, delta: &Diagonal<S>) -> HFunction<S> {
    let n = h.order();
    let mut out = vec![c_zero::<S>(); n];
    for (x, row) in delta.iter().enumerate() {
        let xi = h.inverse(x);
        for (z, slot) in out.iter_mut().enumerate() {
            for (y, c) in h.product(xi, z) {
                *slot = slot.clone() + row[*y].clone() * h.haar()[x].clone() * c.clone();
            }
        }
    }
    HFunction::new(h, out).expect("length is |H|")
}

pub fn am_report<S: Scalar>(table: &CharacterTable<S>) -> Result<AMReport<S>> {
    let h = table.host();
    let n = h.order();
    let delta = diagonal(table);
    let am = amenability_constant(table)?;
    let m = multiply_out(h, &delta);
    let mut residual_identity = 0.0f64;
    let mut residual_commute = 0.0f64;
    for chi in table.chars() {
        let psi = HFunction::new(h, chi.clone())?;
        let left = convolve_l1(h, &m, &psi)?;
        residual_identity = residual_identity.max(left.max_abs_diff(&psi));
        let right = convolve_l1(h, &psi, &m)?;
        residual_identity = residual_identity.max(right.max_abs_diff(&psi));

        // ψ·Δ acts on the first tensor factor, Δ·ψ on the second
        let mut left_action = vec![vec![c_zero::<S>(); n]; n];
        for y in 0..n {
            let column = HFunction::new(h, (0..n).map(|x| delta[x][y].clone()).collect())?;
            let conv = convolve_l1(h, &psi, &column)?;
            for x in 0..n {
                left_action[x][y] = conv.value(x).clone();
            }
        }
        for x in 0..n {
            let row = HFunction::new(h, delta[x].clone())?;
            let conv = convolve_l1(h, &row, &psi)?;
            for y in 0..n {
                residual_commute = residual_commute.max(c_abs_f64(&(left_action[x][y].clone() - conv.value(y).clone())));
            }
        }
    }
    Ok(AMReport { am, diagonal: delta, residual_identity, residual_commute })
}

/// `‖Δ * Δ − Δ‖∞` in `ℓ¹(H×H, λ×λ)`, with the product hypergroup built
/// explicitly.
pub fn idempotency_residual<S: Scalar>(table: &CharacterTable<S>) -> Result<f64> {
    let h = table.host();
    let n = h.order();
    let square = product(h, h);
    let delta = diagonal(table);
    let flat: Vec<Complex<S>> = (0..n * n).map(|i| delta[i / n][i % n].clone()).collect();
    let f = HFunction::new(&square, flat)?;
    let ff = convolve_l1(&square, &f, &f)?;
    Ok(ff.max_abs_diff(&f))
}

/// Closed form for `AM(ℓ¹(H_p))`: `(5p² − 2p + 1) / (p + 1)²`.
pub fn hp_amenability_formula<S: Scalar>(p: &S) -> S {
    let two = S::one() + S::one();
    let five = two.clone() + two.clone() + S::one();
    let num = five * p.clone() * p.clone() - two * p.clone() + S::one();
    let den = (p.clone() + S::one()) * (p.clone() + S::one());
    num / den
}

fn hp_am(p: f64) -> Result<f64> {
    amenability_constant(&characters(&hp(p)?)?)
}

/// Finds `p` with `AM(ℓ¹(H_p)) = r` to within `1e-9` by bisection on the
/// computed (not closed-form) constant; needs `1 < r < 5`.
pub fn hp_for_amenability_constant(r: f64) -> Result<f64> {
    if !(r > 1.0 && r < 5.0) {
        return Err(Error::Domain(format!("AM(H_p) ranges over (1, 5); {r} is outside")));
    }
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hp_am(hi)? < r {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Degenerate("bracket for p diverged".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let am = hp_am(mid)?;
        if (am - r).abs() <= 1e-10 {
            return Ok(mid);
        }
        if am < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A commutative hypergroup whose diagonal (an idempotent) has norm `r > 1`:
/// the `m`-fold power `H_p × … × H_p` with `AM(H_p)^m = r`. Returns
/// `(p, m)`.
pub fn idempotent_norm_witness(r: f64) -> Result<(f64, u32)> {
    if r <= 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("idempotent norms realised here exceed 1; got {r}")));
    }
    let mut m = 1u32;
    while 5f64.powi(m as i32) <= r {
        m += 1;
    }
    let p = hp_for_amenability_constant(r.powf(1.0 / m as f64))?;
    Ok((p, m))
}

/// `m`-fold product of a hypergroup with itself.
pub fn power<S: Scalar>(h: &FiniteHypergroup<S>, m: u32) -> FiniteHypergroup<S> {
    let mut out = h.clone();
    for _ in 1..m {
        out = product(&out, h);
    }
    out
}
