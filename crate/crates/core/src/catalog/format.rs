//! The `AlgebraSpec` text format: JSON with one product entry per line and
//! coefficients as exact rational strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::superspace::{Kind, Parity, SuperAlgebra};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub schema_version: u32,
    pub name: String,
    /// 0 for even, 1 for odd.
    pub parities: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zdegrees: Option<Vec<i32>>,
    pub products: Vec<Product>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl AlgebraSpec {
    pub fn from_algebra(a: &SuperAlgebra) -> Self {
        let mut metadata: BTreeMap<String, Value> =
            a.meta().iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        metadata.insert("kind".into(), Value::String(a.kind().to_string()));
        metadata.insert("labels".into(), Value::from(a.labels().to_vec()));
        AlgebraSpec {
            schema_version: SCHEMA_VERSION,
            name: a.name().to_string(),
            parities: a.parities().iter().map(|p| p.bit()).collect(),
            zdegrees: a.zdegrees().map(<[i32]>::to_vec),
            products: a.entries().into_iter().map(|(i, j, k, c)| Product { i, j, k, coeff: c.to_string() }).collect(),
            metadata,
        }
    }

    pub fn kind(&self) -> Result<Kind> {
        match self.metadata.get("kind") {
            None => Ok(Kind::Plain),
            Some(Value::String(s)) => match s.as_str() {
                "jordan" => Ok(Kind::Jordan),
                "lie" => Ok(Kind::Lie),
                "plain" => Ok(Kind::Plain),
                _ => Err(Error::Parse(format!("metadata.kind: unknown kind {s:?}"))),
            },
            Some(_) => Err(Error::Parse("metadata.kind: expected a string".into())),
        }
    }

    /// Builds the algebra, checking the axioms of the declared kind.
    pub fn to_algebra(&self) -> Result<SuperAlgebra> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(self.schema_version));
        }
        let parity = self
            .parities
            .iter()
            .enumerate()
            .map(|(n, b)| match b {
                0 | 1 => Ok(Parity::from_bit(*b)),
                _ => Err(Error::Parse(format!("parities[{n}]: expected 0 or 1, got {b}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let entries = self
            .products
            .iter()
            .enumerate()
            .map(|(n, p)| Ok((p.i, p.j, p.k, parse_coeff(&p.coeff, &format!("products[{n}].coeff"))?)))
            .collect::<Result<Vec<_>>>()?;
        let mut a =
            SuperAlgebra::from_entries(self.name.clone(), parity, self.zdegrees.clone(), &entries, self.kind()?)?;
        if let Some(labels) = self.metadata.get("labels") {
            let labels: Vec<String> =
                serde_json::from_value(labels.clone()).map_err(|e| Error::Parse(format!("metadata.labels: {e}")))?;
            a = a.with_labels(labels)?;
        }
        for (k, v) in &self.metadata {
            if let (false, Value::String(s)) = (k == "kind" || k == "labels", v) {
                a = a.with_meta(k.clone(), s.clone());
            }
        }
        Ok(a)
    }
}

/// Coefficients must be written in lowest terms, nonzero, without a leading `+`.
fn parse_coeff(s: &str, at: &str) -> Result<Rational> {
    let c: Rational = s.parse().map_err(|_| Error::Parse(format!("{at}: invalid coefficient {s:?}")))?;
    if c.to_string() != s {
        return Err(Error::Parse(format!("{at}: coefficient {s:?} is not in lowest terms (expected {c})")));
    }
    if c.is_zero() {
        return Err(Error::Parse(format!("{at}: zero coefficients are not listed")));
    }
    Ok(c)
}

fn json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Line-oriented rendering; identical specs give identical bytes.
pub fn save(spec: &AlgebraSpec) -> String {
    let mut out = String::from("{\n");
    out += &format!("  \"schema_version\": {},\n", spec.schema_version);
    out += &format!("  \"name\": {},\n", json(&spec.name));
    out += &format!("  \"parities\": {},\n", json(&spec.parities));
    if let Some(z) = &spec.zdegrees {
        out += &format!("  \"zdegrees\": {},\n", json(z));
    }
    out += "  \"products\": [";
    for (n, p) in spec.products.iter().enumerate() {
        out += if n == 0 { "\n    " } else { ",\n    " };
        out += &json(p);
    }
    out += if spec.products.is_empty() { "],\n" } else { "\n  ],\n" };
    out += "  \"metadata\": {";
    for (n, (k, v)) in spec.metadata.iter().enumerate() {
        out += if n == 0 { "\n    " } else { ",\n    " };
        out += &format!("{}: {}", json(k), json(v));
    }
    out += if spec.metadata.is_empty() { "}\n" } else { "\n  }\n" };
    out += "}\n";
    out
}

pub fn load(text: &str) -> Result<AlgebraSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: AlgebraSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Error::Parse(format!("line {} column {}: at {}: {inner}", inner.line(), inner.column(), e.path()))
    })?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(spec.schema_version));
    }
    for (n, p) in spec.products.iter().enumerate() {
        parse_coeff(&p.coeff, &format!("products[{n}].coeff"))?;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{jordan_catalog, JordanName};

    fn j19_spec() -> AlgebraSpec {
        AlgebraSpec::from_algebra(jordan_catalog(&JordanName::J19).unwrap().base())
    }

    #[test]
    fn j19_round_trip() {
        let spec = j19_spec();
        let text = save(&spec);
        assert_eq!(load(&text).unwrap(), spec);
        assert_eq!(save(&load(&text).unwrap()), text);
        let a = spec.to_algebra().unwrap();
        assert_eq!(&a, jordan_catalog(&JordanName::J19).unwrap().base());
    }

    #[test]
    fn third_survives() {
        let mut spec = j19_spec();
        spec.products[0].coeff = "1/3".into();
        let back = load(&save(&spec)).unwrap();
        assert_eq!(back.products[0].coeff, "1/3");
        assert_eq!(parse_coeff("1/3", "x").unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn bad_inputs() {
        let text = save(&j19_spec());
        let decimal = text.replacen("\"coeff\":\"1\"", "\"coeff\":\"1.5\"", 1);
        let err = load(&decimal).unwrap_err().to_string();
        assert!(err.contains("products[0].coeff"), "{err}");
        assert!(load(&text.replacen("\"coeff\":\"1\"", "\"coeff\":\"2/4\"", 1)).is_err());
        assert!(load(&text.replacen("\"coeff\":\"1\"", "\"coeff\":1", 1)).is_err());
        assert!(matches!(load(&text.replace("\"schema_version\": 1", "\"schema_version\": 2")), Err(Error::Schema(2))));
        let err = load(&text.replace("\"parities\"", "\"parity\"")).unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    /// Random grading-respecting tables: entry `(i, j) -> k` only when the
    /// parities (and degrees, if any) add up.
    fn algebra() -> impl Strategy<Value = SuperAlgebra> {
        (1usize..5)
            .prop_flat_map(|n| {
                (
                    prop::collection::vec(any::<bool>(), n),
                    prop::option::of(prop::collection::vec(-1i32..=1, n)),
                    prop::collection::vec(((0..n, 0..n, 0..n), (-5i64..=5, 1i64..=4)), 0..12),
                )
            })
            .prop_map(|(par, zdeg, raw)| {
                let parity: Vec<Parity> = par.iter().map(|b| Parity::from_bit(*b as u8)).collect();
                let mut seen = std::collections::HashSet::new();
                let entries: Vec<_> = raw
                    .into_iter()
                    .filter(|((i, j, k), (c, _))| {
                        *c != 0
                            && parity[*i] + parity[*j] == parity[*k]
                            && zdeg.as_ref().map_or(true, |z| z[*i] + z[*j] == z[*k])
                            && seen.insert((*i, *j, *k))
                    })
                    .map(|((i, j, k), (c, d))| (i, j, k, Rational::new(c, d)))
                    .collect();
                SuperAlgebra::from_entries("random", parity, zdeg, &entries, Kind::Plain).unwrap()
            })
    }

    proptest! {
        #[test]
        fn save_load_round_trip(a in algebra()) {
            let spec = AlgebraSpec::from_algebra(&a);
            let text = save(&spec);
            let back = load(&text).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(save(&back), text);
            prop_assert_eq!(back.to_algebra().unwrap(), a);
        }
    }
}
