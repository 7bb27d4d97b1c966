use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Code used inside each block of a block-unary encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalCode {
    Sb,
    Gray,
}

impl LocalCode {
    pub fn word(self, v: u64) -> u64 {
        match self {
            LocalCode::Sb => v,
            LocalCode::Gray => v ^ (v >> 1),
        }
    }
}

/// How one variable's levels map to qubit bit strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeSpec {
    Sb,
    Gray,
    Unary,
    DomainWall,
    BlockUnary { g: usize, local: LocalCode },
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl CodeSpec {
    pub fn bu(g: usize, local: LocalCode) -> Self {
        CodeSpec::BlockUnary { g, local }
    }

    /// SB and Gray: every bit pattern of the register is potentially a codeword.
    pub fn is_compact(self) -> bool {
        matches!(self, CodeSpec::Sb | CodeSpec::Gray)
    }

    pub fn check(self, d: usize) -> Result<()> {
        if d < 2 {
            return Err(Error::InvalidEncoding(format!("d = {d}, need d >= 2")));
        }
        if let CodeSpec::BlockUnary { g, .. } = self {
            if g < 1 {
                return Err(Error::InvalidEncoding("block size g must be >= 1".into()));
            }
        }
        if self.n_qubits(d) > 64 {
            return Err(Error::InvalidEncoding(format!("{self} needs more than 64 qubits per variable at d = {d}")));
        }
        Ok(())
    }

    pub fn n_qubits(self, d: usize) -> usize {
        match self {
            CodeSpec::Sb | CodeSpec::Gray => ceil_log2(d),
            CodeSpec::Unary => d,
            CodeSpec::DomainWall => d - 1,
            CodeSpec::BlockUnary { g, .. } => d.div_ceil(g) * ceil_log2(g + 1),
        }
    }

    fn block_width(g: usize) -> usize {
        ceil_log2(g + 1)
    }

    /// Codeword of level `k`, bit `i` = qubit `i`.
    pub fn encode(self, k: usize, d: usize) -> Result<u64> {
        self.check(d)?;
        if k >= d {
            return Err(Error::LevelOutOfRange { var: format!("{self}"), level: k, d });
        }
        let k64 = k as u64;
        Ok(match self {
            CodeSpec::Sb => k64,
            CodeSpec::Gray => k64 ^ (k64 >> 1),
            CodeSpec::Unary => 1u64 << k,
            CodeSpec::DomainWall => (1u64 << k) - 1,
            CodeSpec::BlockUnary { g, local } => {
                let w = Self::block_width(g);
                let block = k / g;
                local.word((k % g) as u64 + 1) << (block * w)
            }
        })
    }

    pub fn decode(self, bits: u64, d: usize) -> Result<usize> {
        CodeTable::new(self, d)?.decode(bits).ok_or_else(|| Error::InvalidCodeword(format!("{bits:#b} under {self}")))
    }

    pub fn valid_codewords(self, d: usize) -> Result<Vec<u64>> {
        (0..d).map(|k| self.encode(k, d)).collect()
    }

    /// Qubits (local indices, ascending) that `|k><l|` touches.
    pub fn bitmask(self, k: usize, l: usize, d: usize) -> Result<Vec<usize>> {
        self.check(d)?;
        if k >= d || l >= d {
            return Err(Error::LevelOutOfRange { var: format!("{self}"), level: k.max(l), d });
        }
        let n = self.n_qubits(d);
        let (lo, hi) = (k.min(l), k.max(l));
        Ok(match self {
            CodeSpec::Sb | CodeSpec::Gray => (0..n).collect(),
            CodeSpec::Unary => {
                if lo == hi {
                    vec![lo]
                } else {
                    vec![lo, hi]
                }
            }
            CodeSpec::DomainWall => {
                let start = if lo == 0 { 0 } else { lo - 1 };
                let end = hi.min(d - 2);
                (start..=end).collect()
            }
            CodeSpec::BlockUnary { g, .. } => {
                let w = Self::block_width(g);
                let (b1, b2) = (lo / g, hi / g);
                let mut q: Vec<usize> = (b1 * w..(b1 + 1) * w).collect();
                if b2 != b1 {
                    q.extend(b2 * w..(b2 + 1) * w);
                }
                q
            }
        })
    }

    /// Compact name, used in reports.
    pub fn short_name(self) -> String {
        match self {
            CodeSpec::Sb => "sb".into(),
            CodeSpec::Gray => "gray".into(),
            CodeSpec::Unary => "unary".into(),
            CodeSpec::DomainWall => "dw".into(),
            CodeSpec::BlockUnary { g, local } => format!("bu{g}_{}", if local == LocalCode::Gray { "gray" } else { "sb" }),
        }
    }

    pub fn parse_short(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEncoding(format!("unknown code `{s}`"));
        Ok(match s {
            "sb" => CodeSpec::Sb,
            "gray" => CodeSpec::Gray,
            "unary" | "onehot" => CodeSpec::Unary,
            "dw" => CodeSpec::DomainWall,
            _ if s.starts_with("bu") => {
                let rest = &s[2..];
                let (g, local) = match rest.split_once('_') {
                    Some((g, l)) => (g, l),
                    None => (rest, "gray"),
                };
                let g: usize = g.parse().map_err(|_| bad())?;
                let local = match local {
                    "gray" => LocalCode::Gray,
                    "sb" => LocalCode::Sb,
                    _ => return Err(bad()),
                };
                CodeSpec::BlockUnary { g, local }
            }
            _ => return Err(bad()),
        })
    }

    /// `{"kind": ...}` object used in job files.
    pub fn to_json(self) -> Value {
        let kind = match self {
            CodeSpec::Sb => json!("sb"),
            CodeSpec::Gray => json!("gray"),
            CodeSpec::Unary => json!("unary"),
            CodeSpec::DomainWall => json!("dw"),
            CodeSpec::BlockUnary { g, local } => {
                json!({"bu": {"g": g, "local": if local == LocalCode::Gray { "gray" } else { "sb" }}})
            }
        };
        json!({ "kind": kind })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v.get("kind").unwrap_or(v);
        if let Some(s) = kind.as_str() {
            return Self::parse_short(s);
        }
        let bu = kind.get("bu").ok_or_else(|| Error::InvalidEncoding(format!("unrecognized encoding {kind}")))?;
        let g = bu.get("g").and_then(Value::as_u64).ok_or_else(|| Error::InvalidEncoding("bu needs g".into()))? as usize;
        let local = match bu.get("local").and_then(Value::as_str).unwrap_or("gray") {
            "gray" => LocalCode::Gray,
            "sb" => LocalCode::Sb,
            other => return Err(Error::InvalidEncoding(format!("unknown local code `{other}`"))),
        };
        Ok(CodeSpec::BlockUnary { g, local })
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// Precomputed codewords of one `(code, d)` pair.
#[derive(Clone, Debug)]
pub struct CodeTable {
    pub code: CodeSpec,
    pub d: usize,
    pub width: usize,
    pub words: Vec<u64>,
    lookup: HashMap<u64, usize>,
}

impl CodeTable {
    pub fn new(code: CodeSpec, d: usize) -> Result<Self> {
        let words = code.valid_codewords(d)?;
        let lookup = words.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        Ok(CodeTable { code, d, width: code.n_qubits(d), words, lookup })
    }

    pub fn decode(&self, bits: u64) -> Option<usize> {
        self.lookup.get(&bits).copied()
    }

    pub fn is_valid(&self, bits: u64) -> bool {
        self.lookup.contains_key(&bits)
    }
}
