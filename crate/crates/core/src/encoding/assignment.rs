use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::code::{CodeSpec, CodeTable};
use crate::dqir::DomainSpec;
use crate::error::{Error, Result};
use crate::pauli::BitString;

/// Per-variable code choice plus the qubit layout it induces. Variables are
/// laid out contiguously in declaration order starting at qubit 0.
#[derive(Clone, Debug)]
pub struct EncodingAssignment {
    domain: Arc<DomainSpec>,
    codes: Vec<CodeSpec>,
    offsets: Vec<usize>,
    tables: Vec<Arc<CodeTable>>,
    n_qubits: usize,
}

impl EncodingAssignment {
    pub fn uniform(domain: &Arc<DomainSpec>, code: CodeSpec) -> Result<Self> {
        Self::from_codes(domain, vec![code; domain.len()])
    }

    /// Codes by variable id; every variable must be covered.
    pub fn from_map(domain: &Arc<DomainSpec>, map: &BTreeMap<String, CodeSpec>) -> Result<Self> {
        for id in map.keys() {
            domain.index_of(id)?;
        }
        let codes = domain
            .vars()
            .iter()
            .map(|v| map.get(&v.id).copied().ok_or_else(|| Error::Unassigned(v.id.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_codes(domain, codes)
    }

    pub fn from_codes(domain: &Arc<DomainSpec>, codes: Vec<CodeSpec>) -> Result<Self> {
        assert_eq!(codes.len(), domain.len());
        let mut offsets = Vec::with_capacity(codes.len());
        let mut tables = Vec::with_capacity(codes.len());
        let mut n = 0;
        let mut cache: BTreeMap<(CodeSpec, usize), Arc<CodeTable>> = BTreeMap::new();
        for (i, code) in codes.iter().enumerate() {
            let d = domain.d(i);
            code.check(d).map_err(|e| Error::InvalidEncoding(format!("{}: {e}", domain.var(i).id)))?;
            let t = match cache.get(&(*code, d)) {
                Some(t) => t.clone(),
                None => {
                    let t = Arc::new(CodeTable::new(*code, d)?);
                    cache.insert((*code, d), t.clone());
                    t
                }
            };
            offsets.push(n);
            n += t.width;
            tables.push(t);
        }
        Ok(EncodingAssignment { domain: domain.clone(), codes, offsets, tables, n_qubits: n })
    }

    /// Parse `{"<var>": {"kind": ...}, "*": {...}}`; `"*"` is the default for unlisted variables.
    pub fn from_json(domain: &Arc<DomainSpec>, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidEncoding("encoding must be an object".into()))?;
        let default = obj.get("*").map(CodeSpec::from_json).transpose()?;
        let mut map = BTreeMap::new();
        for (k, spec) in obj {
            if k != "*" {
                map.insert(k.clone(), CodeSpec::from_json(spec)?);
            }
        }
        if let Some(def) = default {
            for var in domain.vars() {
                map.entry(var.id.clone()).or_insert(def);
            }
        }
        Self::from_map(domain, &map)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, v) in self.domain.vars().iter().enumerate() {
            m.insert(v.id.clone(), self.codes[i].to_json());
        }
        Value::Object(m)
    }

    /// Layout description: offsets, widths and codewords per variable.
    pub fn layout_json(&self) -> Value {
        let vars: Vec<Value> = self
            .domain
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let t = &self.tables[i];
                json!({
                    "id": v.id,
                    "d": v.d,
                    "code": self.codes[i].to_json()["kind"],
                    "offset": self.offsets[i],
                    "width": t.width,
                    "codewords_msb_first": t.words.iter().map(|w| BitString::from_u64(*w).to_msb_string(t.width)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "schema_version": crate::SCHEMA_VERSION, "n_qubits": self.n_qubits, "variables": vars })
    }

    pub fn domain(&self) -> &Arc<DomainSpec> {
        &self.domain
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn code(&self, v: usize) -> CodeSpec {
        self.codes[v]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn width(&self, v: usize) -> usize {
        self.tables[v].width
    }

    pub fn table(&self, v: usize) -> &CodeTable {
        &self.tables[v]
    }

    pub fn check_domain(&self, d: &Arc<DomainSpec>) -> Result<()> {
        if Arc::ptr_eq(d, &self.domain) || **d == *self.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn encode_state(&self, x: &[usize]) -> BitString {
        let mut b = BitString::zero();
        for (v, &k) in x.iter().enumerate() {
            b.or_word_at(self.tables[v].words[k], self.offsets[v]);
        }
        b
    }

    /// `None` when some variable's bits are not a codeword.
    pub fn decode_state(&self, b: &BitString) -> Option<Vec<usize>> {
        if b.bit_len() > self.n_qubits {
            return None;
        }
        (0..self.codes.len()).map(|v| self.tables[v].decode(b.extract(self.offsets[v], self.tables[v].width))).collect()
    }

    pub fn is_valid(&self, b: &BitString) -> bool {
        self.decode_state(b).is_some()
    }
}
