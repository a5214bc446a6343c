//! Support inequality `λ(H) ≤ λ(supp f) · Σ_{χ ∈ supp f̂} k_χ d_χ` and a
//! heuristic search for functions that make it tight.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::subhypergroups;
use crate::error::{Error, Result};
use crate::hypergroup::HFunction;
use crate::scalar::{c_abs_f64, Scalar};
use crate::spectra::{fourier, CharacterTable};

/// Default relative support threshold.
pub const DEFAULT_TAU: f64 = 1e-9;

/// Largest order for which the scan enumerates subhypergroups.
pub const SUBHYPERGROUP_SCAN_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct UncertaintyReport<S> {
    /// `λ(supp f)`.
    pub support_size: S,
    /// `Σ_{χ ∈ supp f̂} k_χ d_χ`.
    pub dual_mass: S,
    /// `λ(H)`.
    pub lhs: S,
    pub holds: bool,
    /// `support_size · dual_mass / lhs`.
    pub ratio: f64,
    pub tau: f64,
    pub support: Vec<usize>,
    pub dual_support: Vec<usize>,
}

/// Indices where `|v| > τ · max |v|`. Exact scalars use `v ≠ 0`.
fn support_of<S: Scalar>(values: &[Complex<S>], tau: f64) -> Vec<usize> {
    if S::EXACT {
        return (0..values.len()).filter(|&i| !(values[i].re.is_zero() && values[i].im.is_zero())).collect();
    }
    let peak = values.iter().map(c_abs_f64).fold(0.0, f64::max);
    (0..values.len()).filter(|&i| c_abs_f64(&values[i]) > tau * peak).collect()
}

pub fn uncertainty_check<S: Scalar>(table: &CharacterTable<S>, f: &HFunction<S>) -> Result<UncertaintyReport<S>> {
    uncertainty_check_with(table, f, DEFAULT_TAU)
}

pub fn uncertainty_check_with<S: Scalar>(
    table: &CharacterTable<S>,
    f: &HFunction<S>,
    tau: f64,
) -> Result<UncertaintyReport<S>> {
    let h = table.host();
    if !f.lives_on(h) {
        return Err(Error::HostMismatch);
    }
    if f.is_zero() || (!S::EXACT && f.max_abs() == 0.0) {
        return Err(Error::Domain("the inequality needs a nonzero function".into()));
    }
    let support = support_of(f.values(), tau);
    let fhat = fourier(table, f)?;
    let dual_support = support_of(&fhat, tau);
    let support_size = support.iter().fold(S::zero(), |acc, &x| acc + h.haar()[x].clone());
    let dual_mass = dual_support.iter().fold(S::zero(), |acc, &i| {
        acc + table.hyperdim()[i].clone() * S::from_ratio(table.dims()[i] as i64, 1)
    });
    let lhs = h.total_haar().clone();
    let rhs = support_size.clone() * dual_mass.clone();
    let holds = if S::EXACT { lhs <= rhs } else { lhs.to_f64() <= rhs.to_f64() * (1.0 + 1e-12) };
    let ratio = rhs.to_f64() / lhs.to_f64();
    Ok(UncertaintyReport { support_size, dual_mass, lhs, holds, ratio, tau, support, dual_support })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub random_count: usize,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { random_count: 200, seed: 0x4859_4745 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Subhypergroup(Vec<usize>),
    Point(usize),
    Character(usize),
    /// The `n`-th random sparse function of the scan.
    Random { index: usize, values: Vec<Complex<f64>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub best_ratio: f64,
    pub witness: Witness,
    pub evaluated: usize,
    /// Number of evaluated functions for which the inequality failed; always
    /// zero unless something upstream is broken.
    pub violations: usize,
}

/// Random sparse function with support size uniform in `1..=n` and values
/// drawn from `[-1, 1]²` on a grid of step `1/64` (exact in every scalar type).
pub fn random_sparse<S: Scalar>(table: &CharacterTable<S>, rng: &mut ChaCha8Rng) -> HFunction<S> {
    let h = table.host();
    let n = h.order();
    let size = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    let mut values = vec![Complex::new(S::zero(), S::zero()); n];
    for &x in &idx[..size] {
        loop {
            let re = rng.random_range(-64i64..=64);
            let im = rng.random_range(-64i64..=64);
            if re != 0 || im != 0 {
                values[x] = Complex::new(S::from_ratio(re, 64), S::from_ratio(im, 64));
                break;
            }
        }
    }
    HFunction::new(h, values).expect("length is |H|")
}

pub fn tightness_scan<S: Scalar>(table: &CharacterTable<S>, opts: ScanOptions) -> Result<ScanResult> {
    let h = table.host();
    let mut candidates: Vec<(Witness, HFunction<S>)> = Vec::new();
    if h.order() <= SUBHYPERGROUP_SCAN_LIMIT {
        for k in subhypergroups(h) {
            let f = HFunction::indicator(h, &k);
            candidates.push((Witness::Subhypergroup(k), f));
        }
    }
    for x in 0..h.order() {
        candidates.push((Witness::Point(x), HFunction::point(h, x)));
    }
    for i in 0..table.len() {
        candidates.push((Witness::Character(i), HFunction::new(h, table.character(i).to_vec())?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for index in 0..opts.random_count {
        let f = random_sparse(table, &mut rng);
        let values = f.values().iter().map(|v| Complex::new(v.re.to_f64(), v.im.to_f64())).collect();
        candidates.push((Witness::Random { index, values }, f));
    }

    let mut best: Option<(f64, Witness)> = None;
    let mut violations = 0;
    let evaluated = candidates.len();
    for (witness, f) in candidates {
        let report = uncertainty_check(table, &f)?;
        if !report.holds {
            violations += 1;
        }
        if best.as_ref().is_none_or(|(r, _)| report.ratio < *r) {
            best = Some((report.ratio, witness));
        }
    }
    let (best_ratio, witness) = best.ok_or_else(|| Error::Degenerate("nothing to scan".into()))?;
    Ok(ScanResult { best_ratio, witness, evaluated, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{conjugacy_hypergroup, group_hypergroup, hp, CayleyTable};
    use crate::scalar::Rational;
    use crate::spectra::characters;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn delta_e_is_extremal() {
        let t = characters(&hp(r(2, 1)).unwrap()).unwrap();
        let rep = uncertainty_check(&t, &HFunction::point(t.host(), 0)).unwrap();
        assert_eq!(rep.support_size, r(1, 1));
        assert_eq!(rep.dual_mass, r(3, 1));
        assert!(rep.holds);
        assert_eq!(rep.ratio, 1.0);
    }

    #[test]
    fn h2_point_and_character() {
        let t = characters(&hp(r(2, 1)).unwrap()).unwrap();
        let rep = uncertainty_check(&t, &HFunction::point(t.host(), 1)).unwrap();
        assert_eq!(rep.support_size.clone() * rep.dual_mass.clone(), r(6, 1));
        let chi = HFunction::new(t.host(), t.character(1).to_vec()).unwrap();
        let rep = uncertainty_check(&t, &chi).unwrap();
        assert_eq!(rep.support_size, r(3, 1));
        assert_eq!(rep.dual_mass, r(2, 1));
        assert_eq!(rep.dual_support, vec![1]);
    }

    #[test]
    fn zero_function_is_rejected() {
        let t = characters(&hp(r(2, 1)).unwrap()).unwrap();
        assert!(matches!(uncertainty_check(&t, &HFunction::zeros(t.host())), Err(Error::Domain(_))));
    }

    #[test]
    fn relative_tolerance_ignores_noise() {
        let t = characters(&hp(2.0f64).unwrap()).unwrap();
        let f = HFunction::from_real(t.host(), vec![1.0, 1e-14]).unwrap();
        let rep = uncertainty_check(&t, &f).unwrap();
        assert_eq!(rep.support, vec![0]);
    }

    #[test]
    fn subgroup_indicators_are_tight() {
        let t = characters(&group_hypergroup::<f64>(&CayleyTable::cyclic(6))).unwrap();
        let subs = subhypergroups(t.host());
        assert_eq!(subs.len(), 4);
        for k in subs {
            let rep = uncertainty_check(&t, &HFunction::indicator(t.host(), &k)).unwrap();
            assert!((rep.ratio - 1.0).abs() < 1e-10, "subgroup {k:?}");
        }
    }

    #[test]
    fn scan_finds_ratio_one() {
        let t = characters(&conjugacy_hypergroup::<Rational>(&CayleyTable::symmetric(3).unwrap())).unwrap();
        let res = tightness_scan(&t, ScanOptions { random_count: 50, seed: 7 }).unwrap();
        assert_eq!(res.best_ratio, 1.0);
        assert_eq!(res.witness, Witness::Subhypergroup(vec![0]));
        assert_eq!(res.violations, 0);
        let k = uncertainty_check(&t, &HFunction::indicator(t.host(), &[0, 2])).unwrap();
        assert_eq!(k.ratio, 1.0);
    }
}
