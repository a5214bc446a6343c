//! The diagonal is the only element of `ℓ¹(H×H)` with `m(Δ') = δ_e` and
//! `δ_w·Δ' = Δ'·δ_w` for all `w`. Checked by showing the stacked linear
//! conditions have full column rank.

use hyperkit::amen::{diagonal, multiply_out};
use hyperkit::builders::{conjugacy_hypergroup, group_hypergroup, hp, join, CayleyTable};
use hyperkit::hypergroup::convolve_l1;
use hyperkit::spectra::characters;
use hyperkit::{Complex, FloatHypergroup, HFunction};
use nalgebra::DMatrix;

type C = Complex<f64>;

/// `[m(Δ'); (δ_w·Δ' − Δ'·δ_w)_w]` flattened.
fn conditions(h: &FloatHypergroup, d: &[Vec<C>]) -> Vec<C> {
    let n = h.order();
    let mut out: Vec<C> = multiply_out(h, &d.to_vec()).values().to_vec();
    for w in 0..n {
        let delta_w = HFunction::point(h, w);
        let mut left = vec![vec![C::new(0.0, 0.0); n]; n];
        for y in 0..n {
            let col = HFunction::new(h, (0..n).map(|x| d[x][y]).collect()).unwrap();
            let conv = convolve_l1(h, &delta_w, &col).unwrap();
            for x in 0..n {
                left[x][y] = *conv.value(x);
            }
        }
        for x in 0..n {
            let row = HFunction::new(h, d[x].clone()).unwrap();
            let conv = convolve_l1(h, &row, &delta_w).unwrap();
            for y in 0..n {
                out.push(left[x][y] - conv.value(y));
            }
        }
    }
    out
}

fn check_unique(h: &FloatHypergroup) {
    let n = h.order();
    let zero = vec![vec![C::new(0.0, 0.0); n]; n];
    let rows = conditions(h, &zero).len();
    let mut m = DMatrix::<C>::zeros(rows, n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = zero.clone();
            e[a][b] = C::new(1.0, 0.0);
            for (r, v) in conditions(h, &e).into_iter().enumerate() {
                m[(r, a * n + b)] = v;
            }
        }
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(smallest > 1e-8, "conditions are rank deficient for {:?}: {smallest}", h.labels());

    let t = characters(h).unwrap();
    let delta = diagonal(&t);
    let got = conditions(h, &delta);
    for (i, v) in got.iter().enumerate() {
        let expected = if i == h.identity() { 1.0 } else { 0.0 };
        assert!((v - C::new(expected, 0.0)).norm() < 1e-10, "condition {i}: {v}");
    }
}

#[test]
fn diagonal_is_unique_on_corpus() {
    let mut corpus: Vec<FloatHypergroup> = (1..=6).map(|n| group_hypergroup(&CayleyTable::cyclic(n))).collect();
    corpus.push(hp(1.5).unwrap());
    corpus.push(hp(3.0).unwrap());
    corpus.push(conjugacy_hypergroup(&CayleyTable::symmetric(3).unwrap()));
    corpus.push(conjugacy_hypergroup(&CayleyTable::quaternion()));
    corpus.push(join(&group_hypergroup(&CayleyTable::cyclic(2)), &hp(2.0).unwrap()).unwrap());
    for h in &corpus {
        check_unique(h);
    }
}
