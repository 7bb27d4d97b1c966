use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::domain::{DomainSpec, Variable};
use super::factor::Primitive;
use super::poly::{OperatorPoly, ProductTerm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorPolyJson {
    #[serde(default = "crate::default_schema_version")]
    pub schema_version: u32,
    pub domain: Vec<Variable>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: [f64; 2],
    pub factors: BTreeMap<String, FactorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
}

fn cpair(v: &Complex64) -> [f64; 2] {
    [v.re, v.im]
}

fn factor_json(p: &Primitive) -> FactorJson {
    let (kind, params) = match p {
        Primitive::Indicator(k) => ("indicator", json!({ "k": k })),
        Primitive::Value(a) => ("value", json!({ "a": a.iter().map(cpair).collect::<Vec<_>>() })),
        Primitive::Number => ("number", Value::Null),
        Primitive::OneWay(k, l) => ("one_way", json!({ "k": k, "l": l })),
        Primitive::Symmetric(k, l) => ("symmetric", json!({ "k": k, "l": l })),
        Primitive::General(rows) => (
            "general",
            json!({ "m": rows.iter().map(|r| r.iter().map(cpair).collect::<Vec<_>>()).collect::<Vec<_>>() }),
        ),
    };
    FactorJson { kind: kind.into(), params }
}

fn parse_factor(f: &FactorJson) -> Result<Primitive> {
    let bad = |what: &str| Error::InvalidFactor(format!("{}: {what}", f.kind));
    let idx = |key: &str| f.params.get(key).and_then(Value::as_u64).map(|v| v as usize).ok_or_else(|| bad(key));
    let cvec = |v: &Value| -> Result<Vec<Complex64>> {
        let pairs: Vec<[f64; 2]> = serde_json::from_value(v.clone()).map_err(|_| bad("complex list"))?;
        Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    };
    Ok(match f.kind.as_str() {
        "indicator" => Primitive::Indicator(idx("k")?),
        "value" => Primitive::Value(cvec(f.params.get("a").ok_or_else(|| bad("a"))?)?),
        "number" => Primitive::Number,
        "one_way" => Primitive::OneWay(idx("k")?, idx("l")?),
        "symmetric" => Primitive::Symmetric(idx("k")?, idx("l")?),
        "general" => {
            let rows = f.params.get("m").and_then(Value::as_array).ok_or_else(|| bad("m"))?;
            Primitive::General(rows.iter().map(cvec).collect::<Result<_>>()?)
        }
        other => return Err(Error::InvalidFactor(format!("unknown factor kind `{other}`"))),
    })
}

impl OperatorPoly {
    pub fn to_json(&self) -> OperatorPolyJson {
        let dom = self.domain();
        OperatorPolyJson {
            schema_version: crate::SCHEMA_VERSION,
            domain: dom.vars().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|t| TermJson {
                    coeff: cpair(&t.coeff),
                    factors: t.factors.iter().map(|(v, f)| (dom.var(*v).id.clone(), factor_json(&f.classify()))).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &OperatorPolyJson) -> Result<Self> {
        let domain = DomainSpec::new(j.domain.iter().map(|v| (v.id.clone(), v.d)))?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let mut factors = BTreeMap::new();
            for (id, f) in &t.factors {
                let v = domain.index_of(id)?;
                factors.insert(v, parse_factor(f)?.to_local(domain.d(v))?);
            }
            terms.push(ProductTerm { coeff: Complex64::new(t.coeff[0], t.coeff[1]), factors });
        }
        Ok(OperatorPoly::from_terms(&domain, terms))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}
