//! Common eigenvectors of the translation operators of a commutative
//! hypergroup.
//!
//! With `D = diag(√λ)` the operators `A_x = D T_x D⁻¹`, where
//! `(T_x)_{y,z} = c[x][y][z]`, satisfy `A_xᵀ = A_x̃` and commute, so a random
//! Hermitian combination of them has the characters (rescaled by `D`) as its
//! eigenvectors. Clustered eigenvalues trigger redraws and, as a last
//! resort, a split of each cluster by a second random combination.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;

pub const DEFAULT_SEED: u64 = 0x4859_4745;
const REDRAWS: usize = 8;
const GAP: f64 = 1e-6;

type CMatrix = DMatrix<Complex<f64>>;

fn symmetrized_translations(h: &FiniteHypergroup<f64>) -> Vec<DMatrix<f64>> {
    let n = h.order();
    let sqrt_haar: Vec<f64> = h.haar().iter().map(|l| l.sqrt()).collect();
    (0..n)
        .map(|x| {
            let mut a = DMatrix::zeros(n, n);
            for y in 0..n {
                for (z, c) in h.product(x, y) {
                    a[(y, *z)] = sqrt_haar[y] * c / sqrt_haar[*z];
                }
            }
            a
        })
        .collect()
}

fn random_hermitian(ops: &[DMatrix<f64>], rng: &mut ChaCha8Rng) -> CMatrix {
    let n = ops[0].nrows();
    let mut m = CMatrix::zeros(n, n);
    for a in ops {
        let r: f64 = rng.random_range(-1.0..1.0);
        let s: f64 = rng.random_range(-1.0..1.0);
        for i in 0..n {
            for j in 0..n {
                let sym = 0.5 * (a[(i, j)] + a[(j, i)]);
                let skew = 0.5 * (a[(i, j)] - a[(j, i)]);
                m[(i, j)] += Complex::new(r * sym, s * skew);
            }
        }
    }
    m
}

fn min_gap(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Groups eigenvalue indices whose sorted neighbours are closer than `gap`.
fn clusters(values: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some(last) if values[i] - values[*last.last().unwrap()] < gap => last.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Returns the characters (as vectors indexed by element) of a commutative
/// float hypergroup, normalized so that `χ(e) = 1`, in no particular order.
pub fn joint_eigenvectors(h: &FiniteHypergroup<f64>, seed: u64) -> Result<Vec<Vec<Complex<f64>>>> {
    let n = h.order();
    if n == 1 {
        return Ok(vec![vec![Complex::new(1.0, 0.0)]]);
    }
    let ops = symmetrized_translations(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best: Option<(f64, SymmetricEigen<Complex<f64>, nalgebra::Dyn>, f64)> = None;
    for _ in 0..REDRAWS {
        let m = random_hermitian(&ops, &mut rng);
        let scale = m.norm().max(f64::MIN_POSITIVE);
        let eig = SymmetricEigen::new(m);
        let gap = min_gap(eig.eigenvalues.as_slice()) / scale;
        let better = best.as_ref().is_none_or(|(g, _, _)| gap > *g);
        if better {
            best = Some((gap, eig, scale));
        }
        if gap >= GAP {
            break;
        }
    }
    let (gap, eig, scale) = best.expect("at least one draw");
    let mut vectors = eig.eigenvectors.clone();
    if gap < GAP {
        for cluster in clusters(eig.eigenvalues.as_slice(), GAP * scale) {
            if cluster.len() > 1 {
                split_cluster(&ops, &mut vectors, &cluster, &mut rng)?;
            }
        }
    }

    let e = h.identity();
    let inv_sqrt: Vec<f64> = h.haar().iter().map(|l| 1.0 / l.sqrt()).collect();
    (0..n)
        .map(|col| {
            let v = vectors.column(col);
            let at_e = v[e] * inv_sqrt[e];
            if at_e.norm() < 1e-12 {
                return Err(Error::Degenerate("eigenvector vanishes at the identity".into()));
            }
            Ok((0..n).map(|x| v[x] * inv_sqrt[x] / at_e).collect())
        })
        .collect()
}

/// Rotates the columns of `vectors` listed in `cluster` so they diagonalize
/// further random combinations restricted to their span.
fn split_cluster(ops: &[DMatrix<f64>], vectors: &mut CMatrix, cluster: &[usize], rng: &mut ChaCha8Rng) -> Result<()> {
    let n = vectors.nrows();
    let k = cluster.len();
    let mut basis = CMatrix::zeros(n, k);
    for (j, &c) in cluster.iter().enumerate() {
        basis.set_column(j, &vectors.column(c));
    }
    for _ in 0..REDRAWS {
        let m = random_hermitian(ops, rng);
        let scale = m.norm().max(f64::MIN_POSITIVE);
        let restricted = basis.adjoint() * &m * &basis;
        let restricted = (&restricted + restricted.adjoint()) * Complex::new(0.5, 0.0);
        let eig = SymmetricEigen::new(restricted);
        if min_gap(eig.eigenvalues.as_slice()) / scale >= GAP {
            let rotated = &basis * eig.eigenvectors;
            for (j, &c) in cluster.iter().enumerate() {
                vectors.set_column(c, &rotated.column(j));
            }
            return Ok(());
        }
    }
    Err(Error::Degenerate(format!("could not separate a cluster of {k} eigenvalues")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{group_hypergroup, hp, CayleyTable};

    #[test]
    fn h2_characters() {
        let h = hp(2.0).unwrap();
        let mut chars = joint_eigenvectors(&h, DEFAULT_SEED).unwrap();
        chars.sort_by(|a, b| a[1].re.total_cmp(&b[1].re));
        assert!((chars[0][1].re + 0.5).abs() < 1e-12);
        assert!((chars[1][1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cyclic_characters_are_roots_of_unity() {
        let h = group_hypergroup::<f64>(&CayleyTable::cyclic(5));
        let chars = joint_eigenvectors(&h, 7).unwrap();
        assert_eq!(chars.len(), 5);
        for chi in &chars {
            for v in chi {
                assert!((v.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn cluster_grouping() {
        let c = clusters(&[0.0, 1.0, 1.0 + 1e-9, 3.0], 1e-6);
        assert_eq!(c, vec![vec![0], vec![1, 2], vec![3]]);
    }
}
