use std::collections::BTreeSet;

use num_complex::Complex64;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::sim::{basis_state, simulate};

/// Angles used for structural sparsity tests. The first is the reference,
/// the other two guard against accidental zeros.
pub const GENERIC_ANGLES: [f64; 3] = [0.7345, 1.9183, 2.6571];
/// Magnitude above which a unitary entry counts as an edge.
pub const EDGE_TOL: f64 = 1e-10;
/// Widest register evaluated densely.
pub const PMG_MAX_QUBITS: usize = 12;

/// Undirected graph on basis states; an edge marks a structurally nonzero
/// off-diagonal unitary entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMixerGraph {
    pub n_states: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl PartialMixerGraph {
    pub fn new(n_states: usize) -> Self {
        PartialMixerGraph { n_states, edges: BTreeSet::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.n_states = out.n_states.max(other.n_states);
        out.edges.extend(other.edges.iter().copied());
        out
    }

    /// Edges with exactly one endpoint in `good`.
    pub fn cross_edges(&self, good: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        self.edges.iter().copied().filter(|(u, v)| good.contains(u) != good.contains(v)).collect()
    }

    /// Number of connected components of the subgraph induced on `nodes`.
    pub fn components_on(&self, nodes: &[usize]) -> usize {
        let pos = |s: usize| nodes.iter().position(|&x| x == s);
        let mut uf = UnionFind::<usize>::new(nodes.len());
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (pos(u), pos(v)) {
                uf.union(a, b);
            }
        }
        let mut roots: Vec<usize> = (0..nodes.len()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

fn bind(c: &Circuit, theta: f64) -> Circuit {
    let mut out = c.clone();
    for g in &mut out.gates {
        if g.is_parametric() {
            *g = g.with_angle(theta);
        }
    }
    out
}

/// PMG from the columns `cols` of a circuit evaluated with every parametric
/// gate at each generic angle. Only edges touching `cols` are found.
pub fn pmg_columns(template: &Circuit, cols: &[usize]) -> Result<PartialMixerGraph> {
    let n = template.n_qubits;
    if n > PMG_MAX_QUBITS {
        return Err(Error::DimensionCap { dim: 1 << n, cap: 1 << PMG_MAX_QUBITS });
    }
    let mut g = PartialMixerGraph::new(1 << n);
    for &theta in &GENERIC_ANGLES {
        let c = bind(template, theta);
        for &y in cols {
            let mut s = basis_state(n, y);
            simulate(&c, &mut s);
            for (x, v) in s.iter().enumerate() {
                if v.norm() > EDGE_TOL {
                    g.add_edge(x, y);
                }
            }
        }
    }
    Ok(g)
}

/// Full PMG of a parameterized circuit at the generic angles.
pub fn pmg_of(template: &Circuit) -> Result<PartialMixerGraph> {
    let n = template.n_qubits;
    if n > PMG_MAX_QUBITS {
        return Err(Error::DimensionCap { dim: 1 << n, cap: 1 << PMG_MAX_QUBITS });
    }
    pmg_columns(template, &(0..1 << n).collect::<Vec<_>>())
}

/// PMG of an explicit unitary matrix.
pub fn pmg_of_unitary(u: &crate::sim::DenseOperator) -> PartialMixerGraph {
    let mut g = PartialMixerGraph::new(u.dim());
    for ((x, y), v) in u.mat.indexed_iter() {
        if v.norm() > EDGE_TOL {
            g.add_edge(x, y);
        }
    }
    g
}

fn controls_match(cs: &[(usize, bool)], s: usize) -> bool {
    cs.iter().all(|&(q, on)| (s >> q & 1 == 1) == on)
}

/// Basis states connected to `s` by a library gate, read off its structure.
pub fn structural_partners(g: &Gate, s: usize) -> Result<Vec<usize>> {
    Ok(match g {
        Gate::Rx { q, .. } | Gate::Ry { q, .. } => vec![s ^ (1 << q)],
        Gate::CRot { control, on, target, .. } => {
            if controls_match(&[(*control, *on)], s) {
                vec![s ^ (1 << target)]
            } else {
                vec![]
            }
        }
        Gate::Mcry { controls, target, .. } => {
            if controls_match(controls, s) {
                vec![s ^ (1 << target)]
            } else {
                vec![]
            }
        }
        Gate::APhi { a, b, .. } | Gate::CAPhi { a, b, .. } => {
            let cs: &[(usize, bool)] = if let Gate::CAPhi { controls, .. } = g { controls } else { &[] };
            if controls_match(cs, s) && (s >> a & 1) != (s >> b & 1) {
                vec![s ^ (1 << a) ^ (1 << b)]
            } else {
                vec![]
            }
        }
        Gate::Rz { .. } => vec![],
        other => return Err(Error::Unsupported(format!("no structural PMG for {}", other.kind()))),
    })
}

/// Structural PMG of one gate over the full register.
pub fn structural_pmg(g: &Gate, n: usize) -> Result<PartialMixerGraph> {
    let mut out = PartialMixerGraph::new(1 << n);
    for s in 0..1usize << n {
        for t in structural_partners(g, s)? {
            out.add_edge(s, t);
        }
    }
    Ok(out)
}

/// `1 - <psi0| U^dag P U |psi0>` for a dense unitary.
pub fn leakage(u: &crate::sim::DenseOperator, feasible: &[bool], psi0: &[Complex64]) -> Result<f64> {
    check_feasible(feasible, psi0)?;
    if u.dim() != psi0.len() {
        return Err(Error::DomainMismatch);
    }
    let out = u.mat.dot(&ndarray::Array1::from(psi0.to_vec()));
    Ok(leak_of(feasible, out.as_slice().unwrap()))
}

/// Leakage of a circuit, by state-vector simulation.
pub fn leakage_circuit(c: &Circuit, feasible: &[bool], psi0: &[Complex64]) -> Result<f64> {
    check_feasible(feasible, psi0)?;
    if psi0.len() != 1 << c.n_qubits {
        return Err(Error::DomainMismatch);
    }
    let mut s = psi0.to_vec();
    simulate(c, &mut s);
    Ok(leak_of(feasible, &s))
}

fn check_feasible(feasible: &[bool], psi0: &[Complex64]) -> Result<()> {
    if feasible.len() != psi0.len() {
        return Err(Error::DomainMismatch);
    }
    let outside: f64 = psi0.iter().zip(feasible).filter(|(_, f)| !**f).map(|(v, _)| v.norm_sqr()).sum();
    if outside > 1e-12 {
        return Err(Error::InfeasibleState(outside));
    }
    Ok(())
}

fn leak_of(feasible: &[bool], s: &[Complex64]) -> f64 {
    let norm: f64 = s.iter().map(|v| v.norm_sqr()).sum();
    let kept: f64 = s.iter().zip(feasible).filter(|(_, f)| **f).map(|(v, _)| v.norm_sqr()).sum();
    ((norm - kept) / norm).max(0.0)
}
