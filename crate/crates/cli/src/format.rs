//! On-disk formats: hypergroup files (JSON), Cayley tables (plain text) and
//! function files (JSON).
//!
//! Scalars travel as strings (`"36/17"`, `"0.25"`) so exact values survive
//! the round trip.

use std::collections::BTreeMap;

use hyperkit::builders::CayleyTable;
use hyperkit::hypergroup::validate;
use hyperkit::{Complex, FiniteHypergroup, HFunction, HypergroupData, Scalar, StructureConstants, ValidationReport};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypergroupFile {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    pub identity: String,
    pub involution: BTreeMap<String, String>,
    pub constants: Vec<ConstantEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub x: String,
    pub y: String,
    pub z: String,
    pub c: Scalarish,
}

/// A scalar written either as a string or as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalarish {
    Text(String),
    Number(serde_json::Number),
}

impl Scalarish {
    fn parse<S: Scalar>(&self) -> Option<S> {
        match self {
            Scalarish::Text(s) => S::parse_literal(s),
            Scalarish::Number(n) => S::parse_literal(&n.to_string()),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> Failure {
    Failure::Parse(msg.into())
}

impl HypergroupFile {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| parse_err(format!("hypergroup file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Unvalidated tensor data; label references are resolved here.
    pub fn to_data<S: Scalar>(&self) -> Result<HypergroupData<S>, Failure> {
        let n = self.elements.len();
        if n == 0 {
            return Err(parse_err("no elements"));
        }
        let mut index = BTreeMap::new();
        for (i, label) in self.elements.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(parse_err(format!("duplicate element {label:?}")));
            }
        }
        let lookup = |label: &str| index.get(label).copied().ok_or_else(|| parse_err(format!("unknown element {label:?}")));
        let identity = lookup(&self.identity)?;
        let mut involution = vec![usize::MAX; n];
        for (x, y) in &self.involution {
            involution[lookup(x)?] = lookup(y)?;
        }
        if let Some(i) = involution.iter().position(|&v| v == usize::MAX) {
            return Err(parse_err(format!("involution is missing element {:?}", self.elements[i])));
        }
        let mut constants = StructureConstants::zeros(n);
        for entry in &self.constants {
            let (x, y, z) = (lookup(&entry.x)?, lookup(&entry.y)?, lookup(&entry.z)?);
            let c: S = entry.c.parse().ok_or_else(|| parse_err(format!("bad scalar {:?}", entry.c)))?;
            constants.add(x, y, z, c);
        }
        Ok(HypergroupData { labels: self.elements.clone(), identity, involution, constants })
    }

    pub fn validate<S: Scalar>(&self) -> Result<ValidationReport, Failure> {
        Ok(validate(&self.to_data::<S>()?)?)
    }

    pub fn to_hypergroup<S: Scalar>(&self) -> Result<FiniteHypergroup<S>, Failure> {
        Ok(FiniteHypergroup::from_data(self.to_data()?)?)
    }

    pub fn from_hypergroup<S: Scalar>(name: &str, h: &FiniteHypergroup<S>) -> Self {
        let labels = h.labels();
        let mut constants = Vec::new();
        for x in 0..h.order() {
            for y in 0..h.order() {
                for (z, c) in h.product(x, y) {
                    constants.push(ConstantEntry {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        z: labels[*z].clone(),
                        c: Scalarish::Text(c.to_string()),
                    });
                }
            }
        }
        HypergroupFile {
            name: name.to_string(),
            elements: labels.to_vec(),
            identity: labels[h.identity()].clone(),
            involution: (0..h.order()).map(|x| (labels[x].clone(), labels[h.inverse(x)].clone())).collect(),
            constants,
        }
    }
}

/// `n` on the first line, then `n` rows of `n` 0-based indices.
pub fn parse_cayley(text: &str) -> Result<CayleyTable, Failure> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| parse_err("empty Cayley file"))?
        .parse()
        .map_err(|_| parse_err("first line must be the group order"))?;
    let rows = lines
        .map(|l| l.split_whitespace().map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| parse_err(format!("Cayley row: {e}")))?;
    if rows.len() != n {
        return Err(parse_err(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(CayleyTable::new(rows)?)
}

/// `{"values": {"a": "1/2", "b": ["1", "-1"]}}`; omitted elements are 0.
pub fn parse_function<S: Scalar>(text: &str, h: &FiniteHypergroup<S>) -> Result<HFunction<S>, Failure> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("function file: {e}")))?;
    let values = root
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err("function file needs a \"values\" object"))?;
    let zero = Complex::new(S::zero(), S::zero());
    let mut out = vec![zero; h.order()];
    for (label, v) in values {
        let x = h.index_of(label).ok_or_else(|| parse_err(format!("unknown element {label:?}")))?;
        out[x] = match v {
            Value::Array(parts) if parts.len() == 2 => Complex::new(scalar(&parts[0])?, scalar(&parts[1])?),
            other => Complex::new(scalar(other)?, S::zero()),
        };
    }
    Ok(HFunction::new(h, out)?)
}

fn scalar<S: Scalar>(v: &Value) -> Result<S, Failure> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(parse_err(format!("expected a scalar, got {other}"))),
    };
    S::parse_literal(&text).ok_or_else(|| parse_err(format!("bad scalar {text:?}")))
}
