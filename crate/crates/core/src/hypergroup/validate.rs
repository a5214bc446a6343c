use std::fmt;


use super::{HypergroupData, StructureConstants};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Negative,
    NonStochastic,
    Identity,
    Involution,
    AntiAutomorphism,
    Support,
    Associativity,
    HaarInvariance,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Negative => "Negative",
            Axiom::NonStochastic => "NonStochastic",
            Axiom::Identity => "Identity",
            Axiom::Involution => "Involution",
            Axiom::AntiAutomorphism => "AntiAutomorphism",
            Axiom::Support => "Support",
            Axiom::Associativity => "Associativity",
            Axiom::HaarInvariance => "HaarInvariance",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Largest associativity residual seen, violating or not.
    pub associativity_residual: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, indices: Vec<usize>, residual: f64) {
        self.violations.push(Violation { axiom, indices, residual });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed");
        }
        for v in &self.violations {
            writeln!(f, "{} at {:?} (residual {:e})", v.axiom, v.indices, v.residual)?;
        }
        Ok(())
    }
}

fn check_structure<S: Scalar>(data: &HypergroupData<S>) -> Result<()> {
    let n = data.labels.len();
    if n == 0 {
        return Err(Error::Structural("hypergroup needs at least one element".into()));
    }
    if data.constants.order() != n {
        return Err(Error::Structural(format!(
            "tensor is {0}x{0}x{0} but there are {n} labels",
            data.constants.order()
        )));
    }
    if data.identity >= n {
        return Err(Error::Structural(format!("identity index {} out of range", data.identity)));
    }
    if data.involution.len() != n {
        return Err(Error::Structural(format!(
            "involution has {} entries, expected {n}",
            data.involution.len()
        )));
    }
    if let Some(bad) = data.involution.iter().find(|&&i| i >= n) {
        return Err(Error::Structural(format!("involution target {bad} out of range")));
    }
    let mut seen = std::collections::HashSet::new();
    for label in &data.labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::Structural(format!("duplicate label {label:?}")));
        }
    }
    for (x, y, z, c) in data.constants.entries() {
        if !c.to_f64().is_finite() {
            return Err(Error::Structural(format!("non-finite constant at ({x},{y},{z})")));
        }
    }
    Ok(())
}

/// Checks every hypergroup axiom on candidate data.
///
/// Structural problems (dimension mismatches, bad indices, non-finite
/// entries) are errors; axiom failures are collected in the report.
pub fn validate<S: Scalar>(data: &HypergroupData<S>) -> Result<ValidationReport> {
    check_structure(data)?;
    let tol = S::axiom_tolerance();
    let c = &data.constants;
    let n = data.labels.len();
    let e = data.identity;
    let inv = &data.involution;
    let mut report = ValidationReport::default();

    for (x, y, z, v) in c.entries() {
        if v.below(tol) {
            report.push(Axiom::Negative, vec![x, y, z], v.to_f64());
        }
    }

    for x in 0..n {
        for y in 0..n {
            let total = c.product(x, y).iter().fold(S::zero(), |acc, (_, v)| acc + v.clone());
            let dev = total - S::one();
            if !dev.within(tol) {
                report.push(Axiom::NonStochastic, vec![x, y], dev.to_f64().abs());
            }
        }
    }

    for y in 0..n {
        for (a, b) in [(e, y), (y, e)] {
            let diffs: Vec<S> = (0..n)
                .map(|z| c.get(a, b, z) - if z == y { S::one() } else { S::zero() })
                .collect();
            if diffs.iter().any(|d| !d.within(tol)) {
                let residual = diffs.iter().map(|d| d.to_f64().abs()).fold(0.0, f64::max);
                report.push(Axiom::Identity, vec![a, b], residual);
            }
        }
    }

    let involutive = inv[e] == e && (0..n).all(|x| inv[inv[x]] == x);
    if !involutive {
        for x in (0..n).filter(|&x| inv[inv[x]] != x || (x == e && inv[e] != e)) {
            report.push(Axiom::Involution, vec![x], 1.0);
        }
    } else {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let d = c.get(inv[x], inv[y], inv[z]) - c.get(y, x, z);
                    if !d.within(tol) {
                        report.push(Axiom::AntiAutomorphism, vec![x, y, z], d.to_f64().abs());
                    }
                }
            }
        }
    }

    let mut support_ok = vec![true; n];
    for x in 0..n {
        for y in 0..n {
            let at_e = c.get(x, y, e);
            let positive = at_e.above(tol);
            if positive != (y == inv[x]) {
                report.push(Axiom::Support, vec![x, y], at_e.to_f64());
                if y == inv[x] {
                    support_ok[x] = false;
                }
            }
        }
    }

    let assoc = associativity(c, tol, &mut report);
    report.associativity_residual = assoc;

    if involutive && support_ok.iter().all(|&ok| ok) {
        let haar: Vec<S> = (0..n).map(|x| S::one() / c.get(inv[x], x, e)).collect();
        for x in 0..n {
            let mut lhs = vec![S::zero(); n];
            for y in 0..n {
                for (z, v) in c.product(x, y) {
                    lhs[*z] = lhs[*z].clone() + haar[y].clone() * v.clone();
                }
            }
            for z in 0..n {
                let d = lhs[z].clone() - haar[z].clone();
                let scale = haar[z].to_f64().max(1.0);
                if !d.within(tol * scale) {
                    report.push(Axiom::HaarInvariance, vec![x, z], d.to_f64().abs());
                }
            }
        }
    }

    Ok(report)
}

/// Records every `(x, y, z)` where `(δ_x*δ_y)*δ_z ≠ δ_x*(δ_y*δ_z)`; returns
/// the largest residual.
fn associativity<S: Scalar>(c: &StructureConstants<S>, tol: f64, report: &mut ValidationReport) -> f64 {
    let n = c.order();
    let mut worst = 0.0f64;
    let mut left = vec![S::zero(); n];
    let mut right = vec![S::zero(); n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                left.iter_mut().for_each(|v| *v = S::zero());
                right.iter_mut().for_each(|v| *v = S::zero());
                for (w, a) in c.product(x, y) {
                    for (v, b) in c.product(*w, z) {
                        left[*v] = left[*v].clone() + a.clone() * b.clone();
                    }
                }
                for (w, a) in c.product(y, z) {
                    for (v, b) in c.product(x, *w) {
                        right[*v] = right[*v].clone() + a.clone() * b.clone();
                    }
                }
                let mut bad = false;
                let mut residual = 0.0f64;
                for v in 0..n {
                    let d = left[v].clone() - right[v].clone();
                    residual = residual.max(d.to_f64().abs());
                    bad |= !d.within(tol);
                }
                worst = worst.max(residual);
                if bad {
                    report.push(Axiom::Associativity, vec![x, y, z], residual);
                }
            }
        }
    }
    worst
}
