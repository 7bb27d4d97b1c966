use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::pmg::{pmg_columns, PartialMixerGraph, EDGE_TOL, GENERIC_ANGLES};
use crate::circuit::{gate_json, parse_gate, Circuit, Gate, GateJson};
use crate::encoding::{CodeSpec, CodeTable};
use crate::error::{Error, Result};
use crate::sim::{basis_state, simulate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignKind {
    SingleVar,
    Ppm,
}

/// A strict mixer: parameterized gates, optionally sandwiched between fixed
/// basis-change layers. Parametric gates carry placeholder angles.
#[derive(Clone, Debug, PartialEq)]
pub struct MixerDesign {
    pub kind: DesignKind,
    pub code: CodeSpec,
    pub d: usize,
    /// Qubits per variable.
    pub var_width: usize,
    pub n_qubits: usize,
    pub prologue: Vec<Gate>,
    pub gates: Vec<Gate>,
    pub epilogue: Vec<Gate>,
    /// Sum of the member depth costs.
    pub cost: usize,
    /// Union-graph edges among good states.
    pub certificate: Vec<(usize, usize)>,
}

impl MixerDesign {
    pub fn n_params(&self) -> usize {
        self.gates.iter().filter(|g| g.is_parametric()).count()
    }

    /// Bind one angle per parametric gate, in order.
    pub fn circuit(&self, angles: &[f64]) -> Result<Circuit> {
        if angles.len() != self.n_params() {
            return Err(Error::InvalidGate(format!("design takes {} angles, got {}", self.n_params(), angles.len())));
        }
        let mut c = Circuit::new(self.n_qubits);
        c.gates.extend(self.prologue.iter().cloned());
        let mut it = angles.iter();
        for g in &self.gates {
            c.push(if g.is_parametric() { g.with_angle(*it.next().unwrap()) } else { g.clone() });
        }
        c.gates.extend(self.epilogue.iter().cloned());
        Ok(c)
    }

    pub fn circuit_uniform(&self, theta: f64) -> Circuit {
        self.circuit(&vec![theta; self.n_params()]).unwrap()
    }

    /// Each parameterized unitary on its own, basis changes included.
    pub fn members(&self) -> Vec<Circuit> {
        self.gates
            .iter()
            .map(|g| {
                let mut c = Circuit::new(self.n_qubits);
                c.gates.extend(self.prologue.iter().cloned());
                c.push(g.clone());
                c.gates.extend(self.epilogue.iter().cloned());
                c
            })
            .collect()
    }

    /// Depth after decomposition and peephole cancellation.
    pub fn depth(&self) -> usize {
        self.circuit_uniform(GENERIC_ANGLES[0]).compile().depth()
    }

    fn table(&self) -> CodeTable {
        CodeTable::new(self.code, self.d).expect("design carries a checked code")
    }

    /// Basis states where every register holds a valid codeword.
    pub fn good_states(&self) -> Vec<usize> {
        let words: Vec<usize> = self.table().words.iter().map(|&w| w as usize).collect();
        match self.kind {
            DesignKind::SingleVar => words,
            DesignKind::Ppm => {
                let mut out: Vec<usize> = words.iter().flat_map(|&b| words.iter().map(move |&a| a | b << self.var_width)).collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Feasible states: valid codewords, and distinct values for two-variable designs.
    pub fn feasible_states(&self) -> Vec<usize> {
        match self.kind {
            DesignKind::SingleVar => self.good_states(),
            DesignKind::Ppm => self.good_states().into_iter().filter(|&s| self.decode_pair(s).is_some_and(|(a, b)| a != b)).collect(),
        }
    }

    pub fn feasible_mask(&self) -> Vec<bool> {
        let mut m = vec![false; 1 << self.n_qubits];
        for s in self.feasible_states() {
            m[s] = true;
        }
        m
    }

    fn decode_pair(&self, s: usize) -> Option<(usize, usize)> {
        let t = self.table();
        let mask = (1usize << self.var_width) - 1;
        Some((t.decode((s & mask) as u64)?, t.decode((s >> self.var_width & mask) as u64)?))
    }

    /// Union of member PMGs, restricted to edges that touch a good state.
    pub fn union_pmg(&self) -> Result<PartialMixerGraph> {
        let good = self.good_states();
        let mut g = PartialMixerGraph::new(1 << self.n_qubits);
        for m in self.members() {
            g = g.union(&pmg_columns(&m, &good)?);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> Value {
        let gates = |gs: &[Gate]| -> Vec<GateJson> {
            gs.iter()
                .map(|g| {
                    let mut j = gate_json(g);
                    j.param = None;
                    j
                })
                .collect()
        };
        json!({
            "schema_version": crate::SCHEMA_VERSION,
            "kind": self.kind,
            "code": self.code.to_json(),
            "d": self.d,
            "var_width": self.var_width,
            "n_qubits": self.n_qubits,
            "prologue": gates(&self.prologue),
            "gates": gates(&self.gates),
            "epilogue": gates(&self.epilogue),
            "cost": self.cost,
            "depth": self.depth(),
            "certificate": {"edges": self.certificate},
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidGate(format!("mixer design: {m}"));
        let kind: DesignKind = serde_json::from_value(v.get("kind").cloned().ok_or_else(|| bad("missing kind"))?)?;
        let code = CodeSpec::from_json(v.get("code").ok_or_else(|| bad("missing code"))?)?;
        let num = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(k));
        let d = num("d")?;
        code.check(d)?;
        let var_width = code.n_qubits(d);
        let n_qubits = if kind == DesignKind::Ppm { 2 * var_width } else { var_width };
        let gates = |k: &str| -> Result<Vec<Gate>> {
            let list: Vec<GateJson> = serde_json::from_value(v.get(k).cloned().unwrap_or(json!([])))?;
            list.into_iter()
                .map(|mut j| {
                    if matches!(j.kind.as_str(), "rx" | "ry" | "rz" | "crot" | "mcry" | "aphi" | "caphi" | "pauli_exp") {
                        j.param.get_or_insert(0.0);
                    }
                    let g = parse_gate(&j)?;
                    g.validate(n_qubits)?;
                    Ok(g)
                })
                .collect()
        };
        let certificate = v
            .pointer("/certificate/edges")
            .map(|e| serde_json::from_value(e.clone()))
            .transpose()?
            .unwrap_or_default();
        Ok(MixerDesign {
            kind,
            code,
            d,
            var_width,
            n_qubits,
            prologue: gates("prologue")?,
            gates: gates("gates")?,
            epilogue: gates("epilogue")?,
            cost: v.get("cost").and_then(Value::as_u64).unwrap_or(0) as usize,
            certificate,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriteriaKind {
    SingleVar,
    Ppm,
    FullMixer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub kind: CriteriaKind,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriteriaReport {
    fn new(kind: CriteriaKind, checks: Vec<Check>) -> Self {
        CriteriaReport { kind, passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

/// Dense re-check of a design against one of the mixer criteria.
pub fn verify_criteria(design: &MixerDesign, kind: CriteriaKind) -> Result<CriteriaReport> {
    match kind {
        CriteriaKind::SingleVar | CriteriaKind::Ppm => {
            let good = design.good_states();
            let good_set: BTreeSet<usize> = good.iter().copied().collect();
            let g = design.union_pmg()?;
            let cross = g.cross_edges(&good_set);
            let mut checks = vec![check("no_good_bad_edges", cross.is_empty(), format!("{} crossing edges", cross.len()))];
            if kind == CriteriaKind::SingleVar {
                let comps = g.components_on(&good);
                checks.push(check("connected", comps == 1, format!("{comps} components on {} valid states", good.len())));
            } else {
                let mut stray = 0;
                let mut q = PartialMixerGraph::new(design.d);
                for &(u, v) in &g.edges {
                    if !(good_set.contains(&u) && good_set.contains(&v)) {
                        continue;
                    }
                    match (design.decode_pair(u), design.decode_pair(v)) {
                        (Some((a, b)), Some((c, e))) if a == e && b == c && a != b => q.add_edge(a, b),
                        _ => stray += 1,
                    }
                }
                checks.push(check("swap_edges_only", stray == 0, format!("{stray} edges other than |k,l> <-> |l,k>")));
                let comps = q.components_on(&(0..design.d).collect::<Vec<_>>());
                checks.push(check("pair_graph_connected", comps == 1, format!("{comps} components on {} values", design.d)));
            }
            Ok(CriteriaReport::new(kind, checks))
        }
        CriteriaKind::FullMixer => {
            if design.kind != DesignKind::SingleVar {
                let c = check("reachability", false, "reachability is checked for single-variable designs".into());
                return Ok(CriteriaReport::new(kind, vec![c]));
            }
            let missing = unreachable_pairs(design, design.d)?;
            let c = check("reachability", missing == 0, format!("{missing} valid pairs unreached within r <= {}", design.d));
            Ok(CriteriaReport::new(kind, vec![c]))
        }
    }
}

/// Count valid ordered pairs with zero amplitude in every power `U^r`, `r <= r_max`.
fn unreachable_pairs(design: &MixerDesign, r_max: usize) -> Result<usize> {
    let good = design.good_states();
    let m = good.len();
    let c = design.circuit_uniform(GENERIC_ANGLES[0]);
    if c.n_qubits > super::pmg::PMG_MAX_QUBITS {
        return Err(Error::DimensionCap { dim: 1 << c.n_qubits, cap: 1 << super::pmg::PMG_MAX_QUBITS });
    }
    let mut block = ndarray::Array2::<Complex64>::zeros((m, m));
    for (j, &y) in good.iter().enumerate() {
        let mut s = basis_state(c.n_qubits, y);
        simulate(&c, &mut s);
        for (i, &x) in good.iter().enumerate() {
            block[[i, j]] = s[x];
        }
    }
    let mut reached = ndarray::Array2::<bool>::from_elem((m, m), false);
    let mut p = block.clone();
    for _ in 0..r_max {
        for (r, v) in reached.iter_mut().zip(p.iter()) {
            *r |= v.norm() > EDGE_TOL;
        }
        p = p.dot(&block);
    }
    Ok((0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| i != j && !reached[[i, j]]).count())
}
