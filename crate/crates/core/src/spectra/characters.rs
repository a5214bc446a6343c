use std::cmp::Ordering;

use num_complex::Complex;

use super::eigen::{joint_eigenvectors, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;
use crate::scalar::{c_abs_f64, c_one, c_real, c_within, c_zero, Scalar};

/// Residual bound for accepting a float character table.
pub const MULTIPLICATIVITY_TOLERANCE: f64 = 1e-8;

/// All characters of a commutative finite hypergroup.
///
/// Rows are characters, columns elements. Row 0 is the trivial character;
/// the rest are sorted by descending hyperdimension, ties broken by the
/// lexicographic order of their values.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable<S> {
    host: FiniteHypergroup<S>,
    chars: Vec<Vec<Complex<S>>>,
    hyperdim: Vec<S>,
    dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct CharacterOptions {
    pub seed: u64,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

/// Character table with the default seed.
pub fn characters<S: Scalar>(h: &FiniteHypergroup<S>) -> Result<CharacterTable<S>> {
    characters_with(h, CharacterOptions::default())
}

/// Computes every character as a common eigenvector of the translation
/// operators. For exact scalars the float eigenvectors are lifted to
/// rationals and multiplicativity is then checked exactly; a failed lift is
/// [`Error::NotExact`].
pub fn characters_with<S: Scalar>(h: &FiniteHypergroup<S>, opts: CharacterOptions) -> Result<CharacterTable<S>> {
    if !h.is_commutative() {
        return Err(Error::Unsupported("characters of a noncommutative hypergroup".into()));
    }
    let raw = joint_eigenvectors(&h.to_f64(), opts.seed)?;
    let float_table = CharacterTable::from_characters(h.to_f64(), raw)?;
    let lifted = float_table
        .chars
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let re = S::from_f64(v.re);
                    let im = S::from_f64(v.im);
                    match (re, im) {
                        (Some(re), Some(im)) => Ok(Complex::new(re, im)),
                        _ => Err(Error::NotExact(format!("character value {v} has no small rational form"))),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterTable::from_characters(h.clone(), lifted).map_err(|e| match e {
        Error::Degenerate(msg) if S::EXACT => Error::NotExact(format!("characters have no exact rational form ({msg})")),
        other => other,
    })
}

impl<S: Scalar> CharacterTable<S> {
    /// Builds a table from candidate characters, computing hyperdimensions
    /// `k = λ(H) / Σ_x |χ(x)|² λ(x)` and checking multiplicativity, the
    /// involution symmetry and completeness.
    pub fn from_characters(host: FiniteHypergroup<S>, chars: Vec<Vec<Complex<S>>>) -> Result<Self> {
        let n = host.order();
        if chars.len() != n {
            return Err(Error::Degenerate(format!("found {} characters for {n} elements", chars.len())));
        }
        if let Some(row) = chars.iter().find(|row| row.len() != n) {
            return Err(Error::LengthMismatch { expected: n, actual: row.len() });
        }
        let chars: Vec<Vec<Complex<S>>> = if S::EXACT { chars } else { chars.into_iter().map(|r| r.into_iter().map(snap).collect()).collect() };
        let tol = MULTIPLICATIVITY_TOLERANCE;
        let e = host.identity();
        for (i, chi) in chars.iter().enumerate() {
            if !c_within(&(chi[e].clone() - c_one()), tol) {
                return Err(Error::Degenerate(format!("character {i} is not 1 at the identity")));
            }
            for x in 0..n {
                if !c_within(&(chi[host.inverse(x)].clone() - chi[x].clone().conj()), tol) {
                    return Err(Error::Degenerate(format!("character {i} is not involution-symmetric")));
                }
            }
        }
        let residual = multiplicativity_residual(&host, &chars);
        if residual.iter().any(|ok| !ok.0) {
            let worst = residual.iter().map(|r| r.1).fold(0.0, f64::max);
            return Err(Error::Degenerate(format!("multiplicativity residual {worst:e} exceeds {tol:e}")));
        }
        let total = host.total_haar().clone();
        let mut hyperdim = Vec::with_capacity(n);
        for chi in &chars {
            let norm = chi
                .iter()
                .zip(host.haar())
                .fold(S::zero(), |acc, (v, l)| acc + v.norm_sqr() * l.clone());
            if norm.is_zero() {
                return Err(Error::Degenerate("zero character".into()));
            }
            hyperdim.push(total.clone() / norm);
        }

        let trivial = chars
            .iter()
            .position(|chi| chi.iter().all(|v| c_within(&(v.clone() - c_one()), tol)))
            .ok_or_else(|| Error::Degenerate("trivial character missing".into()))?;
        let mut order: Vec<usize> = (0..n).filter(|&i| i != trivial).collect();
        order.sort_by(|&a, &b| compare_characters(&hyperdim[a], &chars[a], &hyperdim[b], &chars[b]));
        order.insert(0, trivial);
        for w in order.windows(2).skip(1) {
            let diff = chars[w[0]].iter().zip(&chars[w[1]]).map(|(a, b)| c_abs_f64(&(a.clone() - b.clone()))).fold(0.0, f64::max);
            if diff <= tol {
                return Err(Error::Degenerate("two characters coincide".into()));
            }
        }
        let chars: Vec<_> = order.iter().map(|&i| chars[i].clone()).collect();
        let hyperdim: Vec<_> = order.iter().map(|&i| hyperdim[i].clone()).collect();
        Ok(Self { host, chars, hyperdim, dims: vec![1; n] })
    }

    pub fn host(&self) -> &FiniteHypergroup<S> {
        &self.host
    }

    /// Number of characters (equal to `|H|`).
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[Vec<Complex<S>>] {
        &self.chars
    }

    pub fn character(&self, i: usize) -> &[Complex<S>] {
        &self.chars[i]
    }

    pub fn value(&self, i: usize, x: usize) -> &Complex<S> {
        &self.chars[i][x]
    }

    pub fn hyperdim(&self) -> &[S] {
        &self.hyperdim
    }

    /// Plancherel weights; equal to the hyperdimensions.
    pub fn plancherel(&self) -> &[S] {
        &self.hyperdim
    }

    /// Representation dimensions; always 1 for a commutative hypergroup.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    /// Index of the character equal to `conj(χ_i)`.
    pub fn conjugate_index(&self, i: usize) -> usize {
        let target: Vec<_> = self.chars[i].iter().map(|v| v.clone().conj()).collect();
        self.find(&target).expect("conjugate of a character is a character")
    }

    /// Index of the character matching `values` within 1e-8 (exactly, for
    /// exact scalars).
    pub fn find(&self, values: &[Complex<S>]) -> Option<usize> {
        self.chars.iter().position(|chi| {
            chi.iter().zip(values).all(|(a, b)| c_within(&(a.clone() - b.clone()), MULTIPLICATIVITY_TOLERANCE))
        })
    }

    /// `max |Σ_z c[x][y][z] χ(z) − χ(x) χ(y)|` over all characters and pairs.
    pub fn multiplicativity_residual(&self) -> f64 {
        multiplicativity_residual(&self.host, &self.chars).iter().map(|r| r.1).fold(0.0, f64::max)
    }

    /// Max deviation of `λ(H)⁻¹ Σ_x χ_i(x) conj χ_j(x) λ(x)` from `δ_ij / k_i`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let h = &self.host;
        let total = h.total_haar().clone();
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let mut acc = c_zero::<S>();
                for x in 0..h.order() {
                    acc = acc + self.chars[i][x].clone() * self.chars[j][x].clone().conj() * h.haar()[x].clone();
                }
                let expected = if i == j { c_real(S::one() / self.hyperdim[i].clone()) } else { c_zero() };
                worst = worst.max(c_abs_f64(&(acc / total.clone() - expected)));
            }
        }
        worst
    }

    /// Max deviation of `Σ_i k_i χ_i(x) conj χ_i(y)` from `δ_xy λ(H) / λ(x)`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let h = &self.host;
        let mut worst = 0.0f64;
        for x in 0..h.order() {
            for y in 0..h.order() {
                let mut acc = c_zero::<S>();
                for i in 0..self.len() {
                    acc = acc + self.chars[i][x].clone() * self.chars[i][y].clone().conj() * self.hyperdim[i].clone();
                }
                let expected = if x == y { c_real(h.total_haar().clone() / h.haar()[x].clone()) } else { c_zero() };
                worst = worst.max(c_abs_f64(&(acc - expected)));
            }
        }
        worst
    }

    /// Same table over `f64`.
    pub fn to_f64(&self) -> CharacterTable<f64> {
        CharacterTable {
            host: self.host.to_f64(),
            chars: self.chars.iter().map(|r| r.iter().map(crate::scalar::to_c64).collect()).collect(),
            hyperdim: self.hyperdim.iter().map(|k| k.to_f64()).collect(),
            dims: self.dims.clone(),
        }
    }
}

/// Per character: (within tolerance, worst residual).
fn multiplicativity_residual<S: Scalar>(h: &FiniteHypergroup<S>, chars: &[Vec<Complex<S>>]) -> Vec<(bool, f64)> {
    let n = h.order();
    chars
        .iter()
        .map(|chi| {
            let mut ok = true;
            let mut worst = 0.0f64;
            for x in 0..n {
                for y in 0..n {
                    let lhs = h.product(x, y).iter().fold(c_zero::<S>(), |acc, (z, c)| acc + chi[*z].clone() * c.clone());
                    let d = lhs - chi[x].clone() * chi[y].clone();
                    worst = worst.max(c_abs_f64(&d));
                    ok &= c_within(&d, MULTIPLICATIVITY_TOLERANCE);
                }
            }
            (ok, worst)
        })
        .collect()
}

/// Clears float noise so that real characters print as real numbers.
fn snap<S: Scalar>(v: Complex<S>) -> Complex<S> {
    let clean = |x: S| if x.to_f64().abs() < 1e-13 { S::zero() } else { x };
    Complex::new(clean(v.re), clean(v.im))
}

fn compare_values(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= 1e-9 {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

fn compare_characters<S: Scalar>(ka: &S, a: &[Complex<S>], kb: &S, b: &[Complex<S>]) -> Ordering {
    compare_values(kb.to_f64(), ka.to_f64()).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(u, v)| compare_values(u.re.to_f64(), v.re.to_f64()).then(compare_values(u.im.to_f64(), v.im.to_f64())))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}
