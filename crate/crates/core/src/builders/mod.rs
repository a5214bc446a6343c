//! Constructors: group and conjugacy-class hypergroups, the two-element
//! family `H_p`, hypergroup joins, subhypergroups, quotients and products.

mod cayley;

pub use cayley::{CayleyTable, ConjClassPartition};


use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, HypergroupData, StructureConstants};
use crate::scalar::Scalar;

/// The group itself: `δ_x * δ_y = δ_{xy}`, involution = inverse.
pub fn group_hypergroup<S: Scalar>(t: &CayleyTable) -> FiniteHypergroup<S> {
    let n = t.order();
    let mut c = StructureConstants::zeros(n);
    for x in 0..n {
        for y in 0..n {
            c.set(x, y, t.mul(x, y), S::one());
        }
    }
    FiniteHypergroup::from_trusted(HypergroupData {
        labels: t.labels().to_vec(),
        identity: t.identity(),
        involution: (0..n).map(|x| t.inverse(x)).collect(),
        constants: c,
    })
}

/// Conjugacy classes with `c[C][D][E] = |{(a,b) ∈ C×D : ab ∈ E}| / (|C||D|)`.
/// Labels are `C(<representative>)`; the Haar weight of a class is its size.
pub fn conjugacy_hypergroup<S: Scalar>(t: &CayleyTable) -> FiniteHypergroup<S> {
    let classes = t.conjugacy_classes();
    let m = classes.len();
    let mut counts = vec![vec![vec![0i64; m]; m]; m];
    for (ci, c) in classes.classes.iter().enumerate() {
        for (di, d) in classes.classes.iter().enumerate() {
            for &a in c {
                for &b in d {
                    counts[ci][di][classes.class_of[t.mul(a, b)]] += 1;
                }
            }
        }
    }
    let sizes = classes.sizes();
    let mut constants = StructureConstants::zeros(m);
    for ci in 0..m {
        for di in 0..m {
            let denom = (sizes[ci] * sizes[di]) as i64;
            for ei in 0..m {
                if counts[ci][di][ei] != 0 {
                    constants.set(ci, di, ei, S::from_ratio(counts[ci][di][ei], denom));
                }
            }
        }
    }
    let labels = classes.classes.iter().map(|c| format!("C({})", t.labels()[c[0]])).collect();
    let involution = classes.classes.iter().map(|c| classes.class_of[t.inverse(c[0])]).collect();
    FiniteHypergroup::from_trusted(HypergroupData {
        labels,
        identity: classes.class_of[t.identity()],
        involution,
        constants,
    })
}

/// `H_p = {e, a}` with `δ_a * δ_a = (1/p) δ_e + (1 − 1/p) δ_a`, `p ≥ 1`.
pub fn hp<S: Scalar>(p: S) -> Result<FiniteHypergroup<S>> {
    if p < S::one() {
        return Err(Error::Domain(format!("H_p needs p >= 1, got {p}")));
    }
    let mut c = StructureConstants::zeros(2);
    c.set(0, 0, 0, S::one());
    c.set(0, 1, 1, S::one());
    c.set(1, 0, 1, S::one());
    let inv = S::one() / p;
    c.set(1, 1, 0, inv.clone());
    c.set(1, 1, 1, S::one() - inv);
    FiniteHypergroup::from_data(HypergroupData {
        labels: vec!["e".into(), "a".into()],
        identity: 0,
        involution: vec![0, 1],
        constants: c,
    })
}

/// Where the elements of `K` and `J` sit inside `K ∨ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinLayout {
    /// Index in the join of each element of `K` (the identity order of `K`).
    pub from_k: Vec<usize>,
    /// Index in the join of each element of `J`; `J`'s identity maps to `K`'s.
    pub from_j: Vec<usize>,
}

impl JoinLayout {
    pub fn new<S: Scalar>(k: &FiniteHypergroup<S>, j: &FiniteHypergroup<S>) -> Self {
        let nk = k.order();
        let mut next = nk;
        let from_j = (0..j.order())
            .map(|s| {
                if s == j.identity() {
                    k.identity()
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        Self { from_k: (0..nk).collect(), from_j }
    }

    pub fn order(&self) -> usize {
        self.from_k.len() + self.from_j.len() - 1
    }
}

/// Hypergroup join `K ∨ J`, glued along the identity.
///
/// Products inside `K` are `K`'s; a `K`-element times a non-identity
/// `J`-element is that `J`-element; products inside `J` are `J`'s except that
/// mass on the identity is spread over `K` by the normalized Haar measure of
/// `K`. `J` labels that collide with `K` labels get a `J:` prefix.
pub fn join<S: Scalar>(k: &FiniteHypergroup<S>, j: &FiniteHypergroup<S>) -> Result<FiniteHypergroup<S>> {
    let layout = JoinLayout::new(k, j);
    let n = layout.order();
    let (nk, ek) = (k.order(), k.identity());
    let in_k = |x: usize| x < nk;
    let omega: Vec<S> = k.haar().iter().map(|l| l.clone() / k.total_haar().clone()).collect();

    let mut labels: Vec<String> = k.labels().to_vec();
    for s in (0..j.order()).filter(|&s| s != j.identity()) {
        let mut label = j.label(s).to_string();
        while labels.contains(&label) {
            label = format!("J:{label}");
        }
        labels.push(label);
    }

    // inverse map: join index -> J index for non-K elements
    let mut to_j = vec![usize::MAX; n];
    for (s, &h) in layout.from_j.iter().enumerate() {
        if s != j.identity() {
            to_j[h] = s;
        }
    }

    let mut c = StructureConstants::zeros(n);
    for x in 0..n {
        for y in 0..n {
            match (in_k(x), in_k(y)) {
                (true, true) => {
                    for (z, v) in k.product(x, y) {
                        c.set(x, y, *z, v.clone());
                    }
                }
                (true, false) => c.set(x, y, y, S::one()),
                (false, true) => c.set(x, y, x, S::one()),
                (false, false) => {
                    for (t, alpha) in j.product(to_j[x], to_j[y]) {
                        if *t == j.identity() {
                            for (w, om) in omega.iter().enumerate() {
                                c.add(x, y, w, alpha.clone() * om.clone());
                            }
                        } else {
                            c.add(x, y, layout.from_j[*t], alpha.clone());
                        }
                    }
                }
            }
        }
    }
    let involution = (0..n)
        .map(|x| if in_k(x) { k.inverse(x) } else { layout.from_j[j.inverse(to_j[x])] })
        .collect();
    FiniteHypergroup::from_data(HypergroupData { labels, identity: ek, involution, constants: c })
}

/// `true` iff `subset` contains the identity, is closed under the
/// involution, and `supp(δ_x * δ_y) ⊆ subset` for all `x, y` in it.
pub fn is_subhypergroup<S: Scalar>(h: &FiniteHypergroup<S>, subset: &[usize]) -> bool {
    let n = h.order();
    if subset.is_empty() || subset.iter().any(|&x| x >= n) {
        return false;
    }
    let mut member = vec![false; n];
    for &x in subset {
        member[x] = true;
    }
    member[h.identity()]
        && subset.iter().all(|&x| member[h.inverse(x)])
        && subset.iter().all(|&x| subset.iter().all(|&y| h.support(x, y).all(|z| member[z])))
}

/// Smallest subhypergroup containing `seed`, as a sorted index set.
pub fn generated_subhypergroup<S: Scalar>(h: &FiniteHypergroup<S>, seed: &[usize]) -> Vec<usize> {
    let n = h.order();
    let mut member = vec![false; n];
    member[h.identity()] = true;
    for &x in seed {
        member[x] = true;
    }
    loop {
        let current: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        let mut grew = false;
        for &x in &current {
            let xi = h.inverse(x);
            if !member[xi] {
                member[xi] = true;
                grew = true;
            }
            for &y in &current {
                for z in h.support(x, y) {
                    if !member[z] {
                        member[z] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (0..n).filter(|&x| member[x]).collect();
        }
    }
}

/// Every subhypergroup of `h`, sorted by size then lexicographically.
pub fn subhypergroups<S: Scalar>(h: &FiniteHypergroup<S>) -> Vec<Vec<usize>> {
    let mut found = vec![vec![h.identity()]];
    let mut seen: std::collections::HashSet<Vec<usize>> = found.iter().cloned().collect();
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        for x in 0..h.order() {
            if base.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = base.clone();
            seed.push(x);
            let next = generated_subhypergroup(h, &seed);
            if seen.insert(next.clone()) {
                found.push(next);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

/// Quotient hypergroup `H/K` with its projection.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient<S> {
    pub hypergroup: FiniteHypergroup<S>,
    /// Coset index of every element of `H`.
    pub projection: Vec<usize>,
    /// Cosets as sorted index sets, ordered by smallest member.
    pub cosets: Vec<Vec<usize>>,
}

impl<S: Scalar> Quotient<S> {
    /// Push a measure on `H` forward to `H/K`.
    pub fn pushforward(&self, mu: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.cosets.len()];
        for (x, m) in mu.iter().enumerate() {
            out[self.projection[x]] = out[self.projection[x]].clone() + m.clone();
        }
        out
    }
}

/// Quotient of a commutative hypergroup by a subhypergroup `K`.
///
/// Cosets are `xK = supp(δ_x * ω_K)` with `ω_K` the normalized Haar measure
/// of `K`; `c[xK][yK][zK] = Σ_{w ∈ zK} (δ_x * ω_K * δ_y)(w)`. Every choice of
/// representatives is checked to give the same constants.
pub fn quotient<S: Scalar>(h: &FiniteHypergroup<S>, sub: &[usize]) -> Result<Quotient<S>> {
    if !h.is_commutative() {
        return Err(Error::Unsupported("quotient of a noncommutative hypergroup".into()));
    }
    if !is_subhypergroup(h, sub) {
        return Err(Error::Domain("index set is not a subhypergroup".into()));
    }
    let n = h.order();
    let tol = S::axiom_tolerance();
    let c = h.constants();
    let mut sub: Vec<usize> = sub.to_vec();
    sub.sort_unstable();
    sub.dedup();
    let k_total = sub.iter().fold(S::zero(), |acc, &x| acc + h.haar()[x].clone());
    let mut omega = vec![S::zero(); n];
    for &x in &sub {
        omega[x] = h.haar()[x].clone() / k_total.clone();
    }
    let coset_of = |x: usize| -> Vec<usize> {
        let mut point = vec![S::zero(); n];
        point[x] = S::one();
        let mu = c.convolve_measures(&point, &omega);
        (0..n).filter(|&z| mu[z].above(tol)).collect()
    };

    let mut projection = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let coset = coset_of(x);
        if coset.iter().any(|&w| projection[w] != usize::MAX) {
            return Err(Error::Inconsistent(format!("coset of {} overlaps an earlier coset", h.label(x))));
        }
        for &w in &coset {
            projection[w] = cosets.len();
        }
        cosets.push(coset);
    }
    for coset in &cosets {
        for &w in coset {
            if coset_of(w) != *coset {
                return Err(Error::Inconsistent(format!("coset of {} depends on the representative", h.label(w))));
            }
        }
    }

    let m = cosets.len();
    let coset_masses = |x: usize, y: usize| -> Vec<S> {
        let mut point = vec![S::zero(); n];
        point[x] = S::one();
        let left = c.convolve_measures(&point, &omega);
        let mu = c.measure_times_point(&left, y);
        let mut out = vec![S::zero(); m];
        for (w, v) in mu.into_iter().enumerate() {
            out[projection[w]] = out[projection[w]].clone() + v;
        }
        out
    };
    let mut constants = StructureConstants::zeros(m);
    for a in 0..m {
        for b in 0..m {
            let reference = coset_masses(cosets[a][0], cosets[b][0]);
            for &x in &cosets[a] {
                for &y in &cosets[b] {
                    let other = coset_masses(x, y);
                    if reference.iter().zip(&other).any(|(p, q)| !(p.clone() - q.clone()).within(tol)) {
                        return Err(Error::Inconsistent(format!(
                            "quotient product depends on representatives {} and {}",
                            h.label(x),
                            h.label(y)
                        )));
                    }
                }
            }
            for (z, v) in reference.into_iter().enumerate() {
                constants.set(a, b, z, v);
            }
        }
    }
    let labels = cosets
        .iter()
        .map(|cs| format!("[{}]", cs.iter().map(|&x| h.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    let involution = cosets.iter().map(|cs| projection[h.inverse(cs[0])]).collect();
    let hypergroup = FiniteHypergroup::from_data(HypergroupData {
        labels,
        identity: projection[h.identity()],
        involution,
        constants,
    })?;
    for (a, cs) in cosets.iter().enumerate() {
        let expected = cs.iter().fold(S::zero(), |acc, &x| acc + h.haar()[x].clone()) / k_total.clone();
        let d = expected - hypergroup.haar()[a].clone();
        if !d.within(1e-8) {
            return Err(Error::Inconsistent(format!("quotient Haar weight mismatch on coset {a}")));
        }
    }
    Ok(Quotient { hypergroup, projection, cosets })
}

/// Product hypergroup `H₁ × H₂`; element `(x, y)` sits at `x·|H₂| + y`.
pub fn product<S: Scalar>(a: &FiniteHypergroup<S>, b: &FiniteHypergroup<S>) -> FiniteHypergroup<S> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut c = StructureConstants::zeros(n);
    for x in 0..n {
        for y in 0..n {
            for (z1, c1) in a.product(x / nb, y / nb) {
                for (z2, c2) in b.product(x % nb, y % nb) {
                    c.set(x, y, z1 * nb + z2, c1.clone() * c2.clone());
                }
            }
        }
    }
    let labels = (0..n).map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb))).collect();
    let involution = (0..n).map(|x| a.inverse(x / nb) * nb + b.inverse(x % nb)).collect();
    FiniteHypergroup::from_trusted(HypergroupData {
        labels,
        identity: a.identity() * nb + b.identity(),
        involution,
        constants: c,
    })
}

/// The one-element hypergroup `{e}`.
pub fn trivial<S: Scalar>() -> FiniteHypergroup<S> {
    let mut c = StructureConstants::zeros(1);
    c.set(0, 0, 0, S::one());
    FiniteHypergroup::from_trusted(HypergroupData {
        labels: vec!["e".into()],
        identity: 0,
        involution: vec![0],
        constants: c,
    })
}
