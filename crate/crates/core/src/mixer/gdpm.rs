use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::design::{DesignKind, MixerDesign};
use super::pmg::{structural_partners, GENERIC_ANGLES};
use crate::circuit::{Circuit, Control, Gate};
use crate::encoding::{ceil_log2, CodeSpec, CodeTable, LocalCode};
use crate::error::{Error, Result};

/// Candidates kept per search round after deduplication.
pub const BEAM_WIDTH: usize = 128;

/// A library member: a parameterized gate and its decomposed depth.
#[derive(Clone, Debug, PartialEq)]
pub struct GateTemplate {
    pub gate: Gate,
    pub descriptor: String,
    pub cost: usize,
}

impl GateTemplate {
    pub fn new(gate: Gate) -> Self {
        let mut c = Circuit::new(gate.qubits().into_iter().max().unwrap_or(0) + 1);
        c.push(gate.with_angle(GENERIC_ANGLES[0]));
        let cost = c.compile().depth();
        GateTemplate { descriptor: gate.descriptor(), gate: gate.with_angle(0.0), cost }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Library {
    pub members: Vec<GateTemplate>,
}

impl Library {
    pub fn new(gates: impl IntoIterator<Item = Gate>) -> Self {
        Library { members: gates.into_iter().map(GateTemplate::new).collect() }
    }

    /// Multi-controlled `Ry` on `qubits`: every target, every control subset
    /// of size `min_controls..=max_controls`, every polarity.
    pub fn controlled_ry(qubits: &[usize], min_controls: usize, max_controls: usize) -> Self {
        let mut gates = Vec::new();
        for &t in qubits {
            let others: Vec<usize> = qubits.iter().copied().filter(|&q| q != t).collect();
            for subset in 0u64..1 << others.len() {
                let k = subset.count_ones() as usize;
                if k < min_controls || k > max_controls {
                    continue;
                }
                let qs: Vec<usize> = (0..others.len()).filter(|i| subset >> i & 1 == 1).map(|i| others[i]).collect();
                for pol in 0u64..1 << k {
                    let controls: Vec<Control> = qs.iter().enumerate().map(|(i, &q)| (q, pol >> i & 1 == 1)).collect();
                    gates.push(match k {
                        0 => Gate::Ry { q: t, theta: 0.0 },
                        1 => Gate::CRot { control: controls[0].0, on: controls[0].1, target: t, theta: 0.0 },
                        _ => Gate::Mcry { controls, target: t, theta: 0.0 },
                    });
                }
            }
        }
        Library::new(gates)
    }

    /// Default library for one variable's register.
    pub fn default_for(code: CodeSpec, d: usize) -> Result<Self> {
        code.check(d)?;
        let n = code.n_qubits(d);
        let all: Vec<usize> = (0..n).collect();
        Ok(match code {
            CodeSpec::Sb | CodeSpec::Gray => Library::controlled_ry(&all, 0, n - 1),
            CodeSpec::DomainWall => Library::controlled_ry(&all, 0, 2.min(n - 1)),
            CodeSpec::Unary => Library::new((0..n).flat_map(|a| (a + 1..n).map(move |b| Gate::APhi { a, b, theta: 0.0 }))),
            CodeSpec::BlockUnary { g, local } => {
                let w = ceil_log2(g + 1);
                let blocks = d.div_ceil(g);
                let mut lib = Library::default();
                for b in 0..blocks {
                    let qs: Vec<usize> = (b * w..(b + 1) * w).collect();
                    lib.members.extend(Library::controlled_ry(&qs, 1, w - 1).members);
                    let pairs = qs.iter().flat_map(|&a| qs.iter().filter(move |&&b| b > a).map(move |&b| Gate::APhi { a, b, theta: 0.0 }));
                    lib.members.extend(pairs.map(GateTemplate::new));
                }
                for b in 0..blocks.saturating_sub(1) {
                    let levels = |blk: usize| (d - blk * g).min(g);
                    let single = |v: usize| local.word(v as u64).count_ones() == 1;
                    let hi = (1..=levels(b)).rev().find(|&v| single(v));
                    let lo = (1..=levels(b + 1)).find(|&v| single(v));
                    if let (Some(hi), Some(lo)) = (hi, lo) {
                        lib.members.push(GateTemplate::new(bridge(local, w, b, hi, lo)));
                    }
                }
                lib
            }
        })
    }
}

/// Controlled `A_phi` moving a block-unary register from local value `hi` in
/// block `b` to local value `lo` in block `b + 1`.
fn bridge(local: LocalCode, w: usize, b: usize, hi: usize, lo: usize) -> Gate {
    let (wh, wl) = (local.word(hi as u64), local.word(lo as u64));
    let pa = b * w + wh.trailing_zeros() as usize;
    let pb = (b + 1) * w + wl.trailing_zeros() as usize;
    let controls = (b * w..(b + 2) * w).filter(|&q| q != pa && q != pb).map(|q| (q, false)).collect();
    Gate::CAPhi { controls, a: pa, b: pb, theta: 0.0 }
}

#[derive(Clone)]
struct Candidate {
    members: Vec<usize>,
    cost: usize,
    key: Vec<String>,
    labels: Vec<usize>,
    comps: usize,
}

fn partition(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut seen = BTreeMap::new();
    let labels: Vec<usize> = (0..n)
        .map(|i| {
            let r = uf.find(i);
            let next = seen.len();
            *seen.entry(r).or_insert(next)
        })
        .collect();
    (labels, seen.len())
}

/// Graph search for a strict single-variable mixer over `library`.
pub fn gdpm_search(d: usize, code: CodeSpec, library: &Library) -> Result<MixerDesign> {
    code.check(d)?;
    if library.members.is_empty() {
        return Err(Error::LibraryInsufficient { best_components: d });
    }
    let table = CodeTable::new(code, d)?;
    let n = table.width;
    let good: Vec<usize> = table.words.iter().map(|&w| w as usize).collect();
    let pos = |s: usize| good.iter().position(|&g| g == s);
    let design = |gates: Vec<Gate>, cost: usize, cert: Vec<(usize, usize)>| MixerDesign {
        kind: DesignKind::SingleVar,
        code,
        d,
        var_width: n,
        n_qubits: n,
        prologue: vec![],
        gates,
        epilogue: vec![],
        cost,
        certificate: cert,
    };

    // Every pattern valid: one layer of X rotations.
    if good.len() == 1 << n {
        let gates: Vec<Gate> = (0..n).map(|q| Gate::Rx { q, theta: 0.0 }).collect();
        let cert = good.iter().flat_map(|&s| (0..n).map(move |q| (s, s ^ (1 << q)))).filter(|(a, b)| a < b).collect();
        return Ok(design(gates, 1, cert));
    }

    // Keep members that never couple valid and invalid states, induced on S_G.
    let mut usable: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for (i, m) in library.members.iter().enumerate() {
        let mut edges = Vec::new();
        let mut ok = true;
        for (a, &s) in good.iter().enumerate() {
            for t in structural_partners(&m.gate, s)? {
                match pos(t) {
                    Some(b) if a < b => edges.push((a, b)),
                    Some(_) => {}
                    None => ok = false,
                }
            }
        }
        if ok && !edges.is_empty() {
            usable.push((i, edges));
        }
    }

    let m = good.len();
    let build = |members: Vec<usize>| -> Candidate {
        let (labels, comps) = partition(m, members.iter().flat_map(|&u| usable[u].1.iter().copied()));
        let cost = members.iter().map(|&u| library.members[usable[u].0].cost).sum();
        let mut key: Vec<String> = members.iter().map(|&u| library.members[usable[u].0].descriptor.clone()).collect();
        key.sort();
        Candidate { members, cost, key, labels, comps }
    };
    let select = |cands: Vec<Candidate>| -> Vec<Candidate> {
        let Some(best) = cands.iter().map(|c| c.comps).min() else { return vec![] };
        let mut by_partition: BTreeMap<Vec<usize>, Candidate> = BTreeMap::new();
        for c in cands.into_iter().filter(|c| c.comps == best) {
            match by_partition.get(&c.labels) {
                Some(old) if (old.cost, &old.key) <= (c.cost, &c.key) => {}
                _ => {
                    by_partition.insert(c.labels.clone(), c);
                }
            }
        }
        let mut out: Vec<Candidate> = by_partition.into_values().collect();
        out.sort_by(|a, b| (a.cost, &a.key).cmp(&(b.cost, &b.key)));
        out.truncate(BEAM_WIDTH);
        out
    };

    let mut beam = select((0..usable.len()).map(|u| build(vec![u])).collect());
    if beam.is_empty() {
        return Err(Error::LibraryInsufficient { best_components: m });
    }
    loop {
        let comps = beam[0].comps;
        if comps == 1 {
            break;
        }
        let next: Vec<Candidate> = beam
            .iter()
            .flat_map(|c| (0..usable.len()).filter(|u| !c.members.contains(u)).map(|u| {
                let mut ms = c.members.clone();
                ms.push(u);
                ms
            }))
            .map(build)
            .collect();
        let next = select(next);
        if next.is_empty() || next[0].comps >= comps {
            return Err(Error::LibraryInsufficient { best_components: comps });
        }
        beam = next;
    }
    let best = &beam[0];
    let gates: Vec<Gate> = best.members.iter().map(|&u| library.members[usable[u].0].gate.clone()).collect();
    let mut cert: Vec<(usize, usize)> = best.members.iter().flat_map(|&u| usable[u].1.iter().map(|&(a, b)| (good[a].min(good[b]), good[a].max(good[b])))).collect();
    cert.sort_unstable();
    cert.dedup();
    Ok(design(gates, best.cost, cert))
}

/// `gdpm_search` with the default library.
pub fn gdpm(d: usize, code: CodeSpec) -> Result<MixerDesign> {
    gdpm_search(d, code, &Library::default_for(code, d)?)
}
