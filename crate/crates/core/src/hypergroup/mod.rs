//! The finite hypergroup data model: structure constants, involution,
//! identity, axiom validation, the canonical Haar measure and convolution of
//! functions.

mod constants;
mod function;
mod validate;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

pub use constants::StructureConstants;
pub use function::{convolution_identity, convolve, convolve_l1, HFunction};
pub use validate::{validate, Axiom, ValidationReport, Violation};


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Candidate hypergroup data prior to validation.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergroupData<S> {
    pub labels: Vec<String>,
    pub identity: usize,
    pub involution: Vec<usize>,
    pub constants: StructureConstants<S>,
}

/// A validated finite hypergroup.
///
/// The Haar weights are the canonical ones with `λ(e) = 1`, i.e.
/// `λ(x) = 1 / (δ_x̃ * δ_x)(e)`. Instances are immutable.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteHypergroup<S> {
    labels: Vec<String>,
    identity: usize,
    involution: Vec<usize>,
    constants: StructureConstants<S>,
    haar: Vec<S>,
    total_haar: S,
    commutative: bool,
    fingerprint: u64,
}

impl<S: Scalar> FiniteHypergroup<S> {
    /// Validates `data` and builds the hypergroup.
    pub fn from_data(data: HypergroupData<S>) -> Result<Self> {
        let report = validate(&data)?;
        if !report.passed() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::from_trusted(data))
    }

    /// Builds without validation; only for data valid by construction.
    pub(crate) fn from_trusted(data: HypergroupData<S>) -> Self {
        let HypergroupData { labels, identity, involution, constants } = data;
        let n = labels.len();
        let haar: Vec<S> =
            (0..n).map(|x| S::one() / constants.get(involution[x], x, identity)).collect();
        let total_haar = haar.iter().fold(S::zero(), |acc, v| acc + v.clone());
        let tol = S::axiom_tolerance();
        let commutative = (0..n).all(|x| {
            (x + 1..n).all(|y| {
                let (a, b) = (constants.product(x, y), constants.product(y, x));
                a.iter().chain(b.iter()).all(|(z, _)| {
                    (constants.get(x, y, *z) - constants.get(y, x, *z)).within(tol)
                })
            })
        });
        let mut hasher = DefaultHasher::new();
        labels.hash(&mut hasher);
        identity.hash(&mut hasher);
        involution.hash(&mut hasher);
        for (x, y, z, c) in constants.entries() {
            (x, y, z).hash(&mut hasher);
            c.to_string().hash(&mut hasher);
        }
        Self {
            labels,
            identity,
            involution,
            constants,
            haar,
            total_haar,
            commutative,
            fingerprint: hasher.finish(),
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.involution[x]
    }

    pub fn constants(&self) -> &StructureConstants<S> {
        &self.constants
    }

    pub fn coefficient(&self, x: usize, y: usize, z: usize) -> S {
        self.constants.get(x, y, z)
    }

    /// Nonzero coefficients of `δ_x * δ_y`.
    pub fn product(&self, x: usize, y: usize) -> &[(usize, S)] {
        self.constants.product(x, y)
    }

    /// Canonical Haar weights, `λ(e) = 1`.
    pub fn haar(&self) -> &[S] {
        &self.haar
    }

    /// `λ(H)`.
    pub fn total_haar(&self) -> &S {
        &self.total_haar
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// True iff every `λ(x) = 1`, equivalently every `δ_x * δ_y` is a point
    /// mass.
    pub fn is_group(&self) -> bool {
        let tol = S::axiom_tolerance();
        self.haar.iter().all(|l| (l.clone() - S::one()).within(tol))
    }

    /// Structural hash identifying this hypergroup; functions carry it.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn to_data(&self) -> HypergroupData<S> {
        HypergroupData {
            labels: self.labels.clone(),
            identity: self.identity,
            involution: self.involution.clone(),
            constants: self.constants.clone(),
        }
    }

    /// Same hypergroup over another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FiniteHypergroup<T> {
        FiniteHypergroup::from_trusted(HypergroupData {
            labels: self.labels.clone(),
            identity: self.identity,
            involution: self.involution.clone(),
            constants: self.constants.map(f),
        })
    }

    pub fn to_f64(&self) -> FiniteHypergroup<f64> {
        self.map_scalar(|c| c.to_f64())
    }

    /// Support of `δ_x * δ_y` at the axiom tolerance.
    pub fn support(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        let tol = S::axiom_tolerance();
        self.product(x, y).iter().filter(move |(_, c)| c.above(tol)).map(|(z, _)| *z)
    }

    /// Maximum of `|Σ_y λ(y) c[x][y][z] − λ(z)|` over all `x, z`.
    pub fn haar_invariance_residual(&self) -> f64 {
        let n = self.order();
        let mut worst = 0.0f64;
        for x in 0..n {
            let mut acc = vec![S::zero(); n];
            for y in 0..n {
                for (z, c) in self.product(x, y) {
                    acc[*z] = acc[*z].clone() + self.haar[y].clone() * c.clone();
                }
            }
            for z in 0..n {
                worst = worst.max((acc[z].clone() - self.haar[z].clone()).to_f64().abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{conjugacy_hypergroup, group_hypergroup, hp, CayleyTable};
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn hp_haar_is_one_and_p() {
        let h = hp(r(2, 1)).unwrap();
        assert_eq!(h.haar(), &[r(1, 1), r(2, 1)]);
        assert_eq!(h.total_haar(), &r(3, 1));
        assert!(!h.is_group());
    }

    #[test]
    fn group_haar_is_constant_one() {
        let h = group_hypergroup::<Rational>(&CayleyTable::cyclic(4));
        assert!(h.haar().iter().all(|l| *l == r(1, 1)));
        assert!(h.is_group());
        assert_eq!(h.haar_invariance_residual(), 0.0);
    }

    #[test]
    fn conj_s3_haar_is_class_sizes() {
        let h = conjugacy_hypergroup::<Rational>(&CayleyTable::symmetric(3).unwrap());
        assert_eq!(h.haar(), &[r(1, 1), r(3, 1), r(2, 1)]);
        assert!(!h.is_group());
        assert!(h.is_commutative());
    }

    #[test]
    fn invalid_data_is_rejected() {
        let mut data = hp(r(2, 1)).unwrap().to_data();
        data.constants.set(1, 1, 1, r(1, 4));
        assert!(matches!(FiniteHypergroup::from_data(data), Err(Error::Invalid(_))));
    }

    #[test]
    fn s3_group_is_noncommutative() {
        let h = group_hypergroup::<f64>(&CayleyTable::symmetric(3).unwrap());
        assert!(!h.is_commutative());
        assert!(h.is_group());
    }

    #[test]
    fn fingerprint_distinguishes_structures() {
        let a = hp(r(2, 1)).unwrap();
        let b = hp(r(3, 1)).unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), hp(r(2, 1)).unwrap().fingerprint());
    }
}
