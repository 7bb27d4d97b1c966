//! Gate-level circuits: macros, decomposition to one-qubit gates plus CNOT,
//! product formulas, peephole cancellation and depth accounting.

mod decompose;
mod gate;
mod product;

use serde::{Deserialize, Serialize};

pub use decompose::decompose;
pub use gate::{Control, Gate};
pub use product::{emit_product_formula, emit_product_formula_terms, order_terms, real_terms};

use crate::error::{Error, Result};
use crate::pauli::PauliString;

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    /// The circuit implements `exp(i global_phase) * (product of gates)`.
    pub global_phase: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new(), global_phase: 0.0 }
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn append(&mut self, other: &Circuit) {
        self.gates.extend(other.gates.iter().cloned());
        self.global_phase += other.global_phase;
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.n_qubits))
    }

    pub fn is_primitive(&self) -> bool {
        self.gates.iter().all(Gate::is_primitive)
    }

    /// Every macro replaced by its decomposition.
    pub fn expand(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        out.global_phase = self.global_phase;
        for g in &self.gates {
            out.append(&decompose(g, self.n_qubits));
        }
        out
    }

    /// Remove adjacent inverse pairs (CNOT-CNOT, H-H, X-X, Sx-Sxdg), cascading.
    /// Purely structural, so the result does not depend on rotation angles.
    pub fn cancel_inverses(&self) -> Circuit {
        let mut alive: Vec<Option<Gate>> = Vec::with_capacity(self.gates.len());
        let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); self.n_qubits];
        for g in &self.gates {
            let qs = g.qubits();
            if g.is_primitive() {
                let tops: Vec<Option<usize>> = qs.iter().map(|&q| stacks[q].last().copied()).collect();
                if let Some(Some(j)) = tops.first() {
                    if tops.iter().all(|t| *t == Some(*j)) {
                        if let Some(prev) = &alive[*j] {
                            if prev.qubits().len() == qs.len() && prev.cancels_with(g) {
                                alive[*j] = None;
                                for &q in &qs {
                                    stacks[q].pop();
                                }
                                continue;
                            }
                        }
                    }
                }
            }
            for &q in &qs {
                stacks[q].push(alive.len());
            }
            alive.push(Some(g.clone()));
        }
        Circuit { n_qubits: self.n_qubits, gates: alive.into_iter().flatten().collect(), global_phase: self.global_phase }
    }

    /// Expand then cancel.
    pub fn compile(&self) -> Circuit {
        self.expand().cancel_inverses()
    }

    /// ASAP layering of the expanded circuit. Consecutive one-qubit gates on
    /// the same qubit share a layer; nothing is dropped for zero angles.
    pub fn depth(&self) -> usize {
        let c = if self.is_primitive() { self.clone() } else { self.expand() };
        let mut level = vec![0usize; c.n_qubits];
        let mut last_single = vec![false; c.n_qubits];
        let mut depth = 0;
        for g in &c.gates {
            let qs = g.qubits();
            if g.is_single_qubit() {
                let q = qs[0];
                if !last_single[q] {
                    level[q] += 1;
                    last_single[q] = true;
                }
                depth = depth.max(level[q]);
            } else {
                let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
                for &q in &qs {
                    level[q] = l;
                    last_single[q] = false;
                }
                depth = depth.max(l);
            }
        }
        depth
    }

    pub fn cnot_count(&self) -> usize {
        let c = if self.is_primitive() { self.clone() } else { self.expand() };
        c.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            schema_version: crate::SCHEMA_VERSION,
            n_qubits: self.n_qubits,
            global_phase: self.global_phase,
            gates: self.gates.iter().map(gate_json).collect(),
        }
    }

    pub fn from_json(j: &CircuitJson) -> Result<Self> {
        let mut c = Circuit::new(j.n_qubits);
        c.global_phase = j.global_phase;
        for g in &j.gates {
            c.push(parse_gate(g)?);
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircuitJson {
    #[serde(default = "crate::default_schema_version")]
    pub schema_version: u32,
    pub n_qubits: usize,
    #[serde(default)]
    pub global_phase: f64,
    pub gates: Vec<GateJson>,
}

/// `qubits` lists controls first, then targets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateJson {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Vec<bool>>,
    /// Letters for the listed qubits of a Pauli exponential.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<String>,
}

pub(crate) fn gate_json(g: &Gate) -> GateJson {
    let polarity = match g {
        Gate::CRot { on, .. } => Some(vec![*on]),
        Gate::Mcry { controls, .. } | Gate::CAPhi { controls, .. } => Some(controls.iter().map(|c| c.1).collect()),
        _ => None,
    };
    let pauli = match g {
        Gate::PauliExp { pauli, .. } => Some(pauli.support().iter().map(|&q| pauli.letter(q)).collect()),
        _ => None,
    };
    GateJson { kind: g.kind().into(), qubits: g.qubits(), param: g.angle(), polarity, pauli }
}

pub(crate) fn parse_gate(j: &GateJson) -> Result<Gate> {
    let bad = |m: &str| Error::InvalidGate(format!("{}: {m}", j.kind));
    let q = &j.qubits;
    let need = |n: usize| if q.len() == n { Ok(()) } else { Err(bad("wrong operand count")) };
    let theta = || j.param.ok_or_else(|| bad("missing param"));
    let pol = |n: usize| -> Result<Vec<bool>> {
        let p = j.polarity.clone().unwrap_or_else(|| vec![true; n]);
        if p.len() != n {
            return Err(bad("polarity length"));
        }
        Ok(p)
    };
    Ok(match j.kind.as_str() {
        "rx" | "ry" | "rz" => {
            need(1)?;
            let (q, theta) = (q[0], theta()?);
            match j.kind.as_str() {
                "rx" => Gate::Rx { q, theta },
                "ry" => Gate::Ry { q, theta },
                _ => Gate::Rz { q, theta },
            }
        }
        "h" | "x" | "sx" | "sxdg" => {
            need(1)?;
            match j.kind.as_str() {
                "h" => Gate::H { q: q[0] },
                "x" => Gate::X { q: q[0] },
                "sx" => Gate::Sx { q: q[0] },
                _ => Gate::Sxdg { q: q[0] },
            }
        }
        "cnot" => {
            need(2)?;
            Gate::Cnot { control: q[0], target: q[1] }
        }
        "crot" => {
            need(2)?;
            Gate::CRot { control: q[0], on: pol(1)?[0], target: q[1], theta: theta()? }
        }
        "mcry" => {
            if q.is_empty() {
                return Err(bad("no target"));
            }
            let k = q.len() - 1;
            let p = pol(k)?;
            Gate::Mcry { controls: q[..k].iter().copied().zip(p).collect(), target: q[k], theta: theta()? }
        }
        "aphi" => {
            need(2)?;
            Gate::APhi { a: q[0], b: q[1], theta: theta()? }
        }
        "caphi" => {
            if q.len() < 2 {
                return Err(bad("needs two targets"));
            }
            let k = q.len() - 2;
            let p = pol(k)?;
            Gate::CAPhi { controls: q[..k].iter().copied().zip(p).collect(), a: q[k], b: q[k + 1], theta: theta()? }
        }
        "toffoli" => {
            need(3)?;
            Gate::Toffoli { c0: q[0], c1: q[1], target: q[2] }
        }
        "pauli_exp" => {
            let letters: Vec<char> = j.pauli.as_deref().ok_or_else(|| bad("missing pauli"))?.chars().collect();
            if letters.len() != q.len() {
                return Err(bad("pauli length"));
            }
            let mut p = PauliString::identity();
            for (&qq, &l) in q.iter().zip(&letters) {
                if !"XYZ".contains(l) {
                    return Err(bad("pauli letter"));
                }
                p.set(qq, l);
            }
            Gate::PauliExp { pauli: p, theta: theta()? }
        }
        other => return Err(Error::InvalidGate(format!("unknown gate kind `{other}`"))),
    })
}

/// One row of a depth study.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DepthReport {
    pub encoding: String,
    pub d: usize,
    pub qubits: usize,
    pub depth: usize,
    pub entangling: usize,
    pub terms: usize,
}

impl DepthReport {
    pub const CSV_HEADER: &'static str = "encoding,d,qubits,depth,entangling,terms";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{},{}", self.encoding, self.d, self.qubits, self.depth, self.entangling, self.terms)
    }
}
