use num_complex::Complex;
use num_traits::Zero;

use super::FiniteHypergroup;
use crate::error::{Error, Result};
use crate::scalar::{c_abs_f64, c_one, c_real, c_zero, Scalar};

/// A complex-valued function on the elements of a hypergroup.
#[derive(Clone, Debug, PartialEq)]
pub struct HFunction<S> {
    host: u64,
    values: Vec<Complex<S>>,
}

impl<S: Scalar> HFunction<S> {
    pub fn new(host: &FiniteHypergroup<S>, values: Vec<Complex<S>>) -> Result<Self> {
        if values.len() != host.order() {
            return Err(Error::LengthMismatch { expected: host.order(), actual: values.len() });
        }
        Ok(Self { host: host.fingerprint(), values })
    }

    pub fn from_real(host: &FiniteHypergroup<S>, values: Vec<S>) -> Result<Self> {
        Self::new(host, values.into_iter().map(c_real).collect())
    }

    pub fn zeros(host: &FiniteHypergroup<S>) -> Self {
        Self { host: host.fingerprint(), values: vec![c_zero(); host.order()] }
    }

    /// Indicator of the single element `x`.
    pub fn point(host: &FiniteHypergroup<S>, x: usize) -> Self {
        let mut f = Self::zeros(host);
        f.values[x] = c_one();
        f
    }

    pub fn constant(host: &FiniteHypergroup<S>, value: Complex<S>) -> Self {
        Self { host: host.fingerprint(), values: vec![value; host.order()] }
    }

    /// Indicator of a subset of indices.
    pub fn indicator(host: &FiniteHypergroup<S>, subset: &[usize]) -> Self {
        let mut f = Self::zeros(host);
        for &x in subset {
            f.values[x] = c_one();
        }
        f
    }

    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn lives_on(&self, h: &FiniteHypergroup<S>) -> bool {
        self.host == h.fingerprint() && self.values.len() == h.order()
    }

    pub fn values(&self) -> &[Complex<S>] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Complex<S> {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, factor: &Complex<S>) -> Self {
        Self { host: self.host, values: self.values.iter().map(|v| v.clone() * factor.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_host(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { host: self.host, values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_host(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { host: self.host, values })
    }

    /// Sup-norm distance, as a float.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| c_abs_f64(&(a.clone() - b.clone())))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(c_abs_f64).fold(0.0, f64::max)
    }

    fn same_host(&self, other: &Self) -> Result<()> {
        if self.host != other.host || self.values.len() != other.values.len() {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }
}

fn check_host<S: Scalar>(h: &FiniteHypergroup<S>, f: &HFunction<S>) -> Result<()> {
    if f.lives_on(h) {
        Ok(())
    } else {
        Err(Error::HostMismatch)
    }
}

/// Convolution in `ℓ¹(H, λ)` with the canonical Haar weights:
/// `(f * g)(x) = Σ_y f(y) g(ỹ * x) λ(y)`, where
/// `g(ỹ * x) = Σ_z c[ỹ][x][z] g(z)`. Its unit is `δ_e`.
pub fn convolve_l1<S: Scalar>(
    h: &FiniteHypergroup<S>,
    f: &HFunction<S>,
    g: &HFunction<S>,
) -> Result<HFunction<S>> {
    check_host(h, f)?;
    check_host(h, g)?;
    let n = h.order();
    let mut out = vec![c_zero::<S>(); n];
    for y in 0..n {
        let fy = &f.values[y];
        if fy.is_zero() {
            continue;
        }
        let weight = fy.clone() * h.haar()[y].clone();
        let y_inv = h.inverse(y);
        for (x, slot) in out.iter_mut().enumerate() {
            let mut translated = c_zero::<S>();
            for (z, c) in h.product(y_inv, x) {
                translated = translated + g.values[*z].clone() * c.clone();
            }
            if !translated.is_zero() {
                *slot = slot.clone() + weight.clone() * translated;
            }
        }
    }
    Ok(HFunction { host: f.host, values: out })
}

/// Convolution with respect to the normalized Haar measure `λ / λ(H)`:
/// `(f * g)(x) = λ(H)⁻¹ Σ_y f(y) g(ỹ * x) λ(y)`. Under this product
/// `k_χ χ` is idempotent and the unit is `λ(H) δ_e`.
pub fn convolve<S: Scalar>(
    h: &FiniteHypergroup<S>,
    f: &HFunction<S>,
    g: &HFunction<S>,
) -> Result<HFunction<S>> {
    let raw = convolve_l1(h, f, g)?;
    let total = h.total_haar().clone();
    Ok(HFunction { host: raw.host, values: raw.values.into_iter().map(|v| v / total.clone()).collect() })
}

/// Unit of [`convolve`]: `λ(H) δ_e`.
pub fn convolution_identity<S: Scalar>(h: &FiniteHypergroup<S>) -> HFunction<S> {
    let mut f = HFunction::zeros(h);
    f.values[h.identity()] = c_real(h.total_haar().clone());
    f
}
