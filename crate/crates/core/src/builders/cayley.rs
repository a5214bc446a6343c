use crate::error::{Error, Result};

/// Multiplication table of a finite group; `product[i][j]` is the index of
/// `g_i · g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    product: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

/// Conjugacy classes of a group, ordered by their smallest element index
/// (the identity class first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjClassPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

impl CayleyTable {
    /// Checks the group axioms on `product` and locates the identity.
    pub fn new(product: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..product.len()).map(|i| format!("g{i}")).collect();
        Self::with_labels(product, labels)
    }

    pub fn with_labels(product: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = product.len();
        if n == 0 {
            return Err(Error::Structural("empty Cayley table".into()));
        }
        if labels.len() != n {
            return Err(Error::Structural(format!("{} labels for a group of order {n}", labels.len())));
        }
        for (i, row) in product.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Structural(format!("row {i} contains out-of-range index {bad}")));
            }
        }
        let is_perm = |values: Vec<usize>| {
            let mut seen = vec![false; n];
            values.into_iter().all(|v| !std::mem::replace(&mut seen[v], true))
        };
        for i in 0..n {
            if !is_perm(product[i].clone()) {
                return Err(Error::Structural(format!("row {i} is not a permutation")));
            }
            if !is_perm((0..n).map(|r| product[r][i]).collect()) {
                return Err(Error::Structural(format!("column {i} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| product[e][x] == x && product[x][e] == x))
            .ok_or_else(|| Error::Structural("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if product[product[a][b]][c] != product[a][product[b][c]] {
                        return Err(Error::Structural(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| product[a][b] == identity).expect("latin square row contains identity"))
            .collect();
        Ok(Self { product, identity, inverse, labels })
    }

    pub fn order(&self) -> usize {
        self.product.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.product
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.product[a][b] == self.product[b][a]))
    }

    pub fn conjugacy_classes(&self) -> ConjClassPartition {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let order: Vec<usize> =
            std::iter::once(self.identity).chain((0..n).filter(|&x| x != self.identity)).collect();
        for x in order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> =
                (0..n).map(|g| self.mul(self.mul(g, x), self.inverse(g))).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        ConjClassPartition { classes, class_of }
    }

    /// Cyclic group `ℤ_n` with labels `"0" … "n-1"`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let product = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(product, labels).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`; element `i + n·j` is `s^j r^i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let m = 2 * n;
        let decode = |k: usize| (k % n, k / n);
        let product = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let ((i, j), (k, l)) = (decode(a), decode(b));
                        // s^j r^i s^l r^k = s^{j+l} r^{(-1)^l i + k}
                        let rot = if l == 0 { (i + k) % n } else { (n - i + k) % n };
                        rot + n * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..m)
            .map(|k| {
                let (i, j) = decode(k);
                if j == 0 { format!("r{i}") } else { format!("sr{i}") }
            })
            .collect();
        Self::with_labels(product, labels).expect("dihedral table is a group")
    }

    /// Symmetric group `S_n` for `1 ≤ n ≤ 5`, permutations in lexicographic
    /// order, labelled in one-line notation; `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(Error::Domain(format!("symmetric group supported for 1 <= n <= 5, got {n}")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let product = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&(0..n).map(|i| s[t[i]]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| p.iter().map(|v| (v + 1).to_string()).collect()).collect();
        Self::with_labels(product, labels)
    }

    /// Quaternion group `Q₈` ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // units 0..4 = 1, i, j, k; unit products (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let decode = |k: usize| (k % 2 == 1, k / 2);
        let product = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let ((sa, ua), (sb, ub)) = (decode(a), decode(b));
                        let (s, u) = UNIT[ua][ub];
                        2 * u + usize::from(s ^ sa ^ sb)
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::with_labels(product, labels).expect("quaternion table is a group")
    }

    /// Direct product, element `(a, b)` at index `a·|other| + b`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let product = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        let labels = (0..n * m)
            .map(|x| format!("({},{})", self.labels[x / m], other.labels[x % m]))
            .collect();
        Self::with_labels(product, labels).expect("direct product of groups is a group")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
