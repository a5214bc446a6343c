use crate::scalar::Scalar;

/// Sparse structure tensor: for every ordered pair `(x, y)` the nonzero
/// coefficients of `δ_x * δ_y`, sorted by target index.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<S> {
    n: usize,
    cells: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> StructureConstants<S> {
    pub fn zeros(n: usize) -> Self {
        Self { n, cells: vec![Vec::new(); n * n] }
    }

    /// Builds from a dense `n × n × n` tensor.
    pub fn from_dense(dense: &[Vec<Vec<S>>]) -> Self {
        let n = dense.len();
        let mut c = Self::zeros(n);
        for (x, plane) in dense.iter().enumerate() {
            for (y, row) in plane.iter().enumerate() {
                for (z, v) in row.iter().enumerate() {
                    c.set(x, y, z, v.clone());
                }
            }
        }
        c
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficients of `δ_x * δ_y` as `(z, c)` pairs with `c ≠ 0`.
    pub fn product(&self, x: usize, y: usize) -> &[(usize, S)] {
        &self.cells[x * self.n + y]
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> S {
        let cell = self.product(x, y);
        match cell.binary_search_by_key(&z, |(k, _)| *k) {
            Ok(i) => cell[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn set(&mut self, x: usize, y: usize, z: usize, value: S) {
        let n = self.n;
        let cell = &mut self.cells[x * n + y];
        match cell.binary_search_by_key(&z, |(k, _)| *k) {
            Ok(i) if value.is_zero() => {
                cell.remove(i);
            }
            Ok(i) => cell[i].1 = value,
            Err(_) if value.is_zero() => {}
            Err(i) => cell.insert(i, (z, value)),
        }
    }

    pub fn add(&mut self, x: usize, y: usize, z: usize, value: S) {
        let sum = self.get(x, y, z) + value;
        self.set(x, y, z, sum);
    }

    /// All nonzero entries as `(x, y, z, c)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        self.cells.iter().enumerate().flat_map(move |(xy, cell)| {
            let (x, y) = (xy / self.n, xy % self.n);
            cell.iter().map(move |(z, c)| (x, y, *z, c))
        })
    }

    pub fn nnz(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstants<T> {
        let mut out = StructureConstants::zeros(self.n);
        for (x, y, z, c) in self.entries() {
            out.set(x, y, z, f(c));
        }
        out
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for x in 0..self.n {
            for y in 0..self.n {
                let (a, b) = (self.product(x, y), other.product(x, y));
                for (z, _) in a.iter().chain(b.iter()) {
                    let d = (self.get(x, y, *z) - other.get(x, y, *z)).to_f64().abs();
                    worst = worst.max(d);
                }
            }
        }
        worst
    }

    /// Multiplies a measure (dense coefficient vector) by a point mass on the
    /// right: `μ * δ_y`.
    pub fn measure_times_point(&self, mu: &[S], y: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (x, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (z, c) in self.product(x, y) {
                out[*z] = out[*z].clone() + m.clone() * c.clone();
            }
        }
        out
    }

    /// Convolution of two measures given as dense coefficient vectors.
    pub fn convolve_measures(&self, mu: &[S], nu: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (x, a) in mu.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (y, b) in nu.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let w = a.clone() * b.clone();
                for (z, c) in self.product(x, y) {
                    out[*z] = out[*z].clone() + w.clone() * c.clone();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_keeps_cells_sorted_and_sparse() {
        let mut c = StructureConstants::<f64>::zeros(3);
        c.set(1, 1, 2, 0.5);
        c.set(1, 1, 0, 0.5);
        assert_eq!(c.product(1, 1), &[(0, 0.5), (2, 0.5)]);
        c.set(1, 1, 2, 0.0);
        assert_eq!(c.product(1, 1), &[(0, 0.5)]);
        c.add(1, 1, 0, 0.25);
        assert_eq!(c.get(1, 1, 0), 0.75);
        assert_eq!(c.nnz(), 1);
    }
}
