//! Cost Hamiltonians for the benchmark problems and their feasible sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::c;
use crate::dqir::{eq, sub_assignments, DomainSpec, LocalOp, OperatorPoly, Primitive, ProductTerm};
use crate::error::{Error, Result};

/// Problem instances, tagged by `kind` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemInstance {
    /// Graph coloring with `colors` colors. Cost counts monochromatic edges.
    Coloring { num_nodes: usize, edges: Vec<(usize, usize)>, colors: usize },
    /// Variable `p{a}` is the city visited at position `a`. Symmetric distances only.
    Tsp { distances: Vec<Vec<f64>> },
    /// Single-machine scheduling; variable `p{a}` is the job run at position `a`.
    Sms {
        processing: Vec<f64>,
        deadlines: Vec<f64>,
        #[serde(default)]
        weights: Option<Vec<f64>>,
        #[serde(default = "yes")]
        weighted: bool,
    },
    /// Levels 0, 1, 2 of `z{a}` mean short, no position, long.
    Portfolio {
        risk: f64,
        covariance: Vec<Vec<f64>>,
        returns: Vec<f64>,
        #[serde(default)]
        previous: Option<Vec<i64>>,
        #[serde(default)]
        trade_cost: f64,
        #[serde(default)]
        target: Option<i64>,
    },
    /// Maximize `c.x` subject to `A x <= b`, `x_a` in `0..cardinalities[a]`.
    Ilp { a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>, cardinalities: Vec<usize> },
}

fn yes() -> bool {
    true
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInstance(msg.into())
}

fn finite(xs: &[f64], what: &str) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(bad(format!("{what} has non-finite entries")))
    }
}

fn square(m: &[Vec<f64>], n: usize, what: &str) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(bad(format!("{what} must be {n}x{n}")));
    }
    m.iter().try_for_each(|r| finite(r, what))
}

fn symmetric(m: &[Vec<f64>], what: &str) -> Result<()> {
    for (i, r) in m.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            if (v - m[j][i]).abs() > 1e-12 {
                return Err(bad(format!("{what} is not symmetric at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Allowed assignments, as a projector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeasibilityKind {
    AllValid,
    /// Variables form a permutation of `0..M`; needs `d = M` for every variable.
    Permutation,
    /// `sum_a values[a][x_a] == target`.
    SumEquals { target: f64, values: Vec<Vec<f64>> },
}

impl ProblemInstance {
    pub fn validate(&self) -> Result<()> {
        match self {
            ProblemInstance::Coloring { num_nodes, edges, colors } => {
                if *colors < 1 {
                    return Err(bad("coloring needs at least one color"));
                }
                for &(a, b) in edges {
                    if a >= *num_nodes || b >= *num_nodes {
                        return Err(bad(format!("edge ({a},{b}) references an unknown node")));
                    }
                    if a == b {
                        return Err(bad(format!("self-loop on node {a}")));
                    }
                }
            }
            ProblemInstance::Tsp { distances } => {
                if distances.is_empty() {
                    return Err(bad("empty distance matrix"));
                }
                square(distances, distances.len(), "distance matrix")?;
                symmetric(distances, "distance matrix")?;
                if distances.iter().enumerate().any(|(i, r)| r[i] != 0.0) {
                    return Err(bad("distance matrix must have a zero diagonal"));
                }
            }
            ProblemInstance::Sms { processing, deadlines, weights, .. } => {
                let m = processing.len();
                if m == 0 || deadlines.len() != m || weights.as_ref().map_or(false, |w| w.len() != m) {
                    return Err(bad("processing, deadlines and weights must have equal nonzero length"));
                }
                finite(processing, "processing times")?;
                finite(deadlines, "deadlines")?;
                if let Some(w) = weights {
                    finite(w, "weights")?;
                }
            }
            ProblemInstance::Portfolio { risk, covariance, returns, previous, trade_cost, target } => {
                let m = returns.len();
                if m == 0 {
                    return Err(bad("no assets"));
                }
                if !(0.0..=1.0).contains(risk) {
                    return Err(bad("risk weight must lie in [0, 1]"));
                }
                square(covariance, m, "covariance")?;
                symmetric(covariance, "covariance")?;
                finite(returns, "returns")?;
                if !trade_cost.is_finite() {
                    return Err(bad("trade cost must be finite"));
                }
                if let Some(y) = previous {
                    if y.len() != m || y.iter().any(|v| !(-1..=1).contains(v)) {
                        return Err(bad("previous positions must be -1, 0 or 1, one per asset"));
                    }
                }
                if let Some(t) = target {
                    if t.unsigned_abs() as usize > m {
                        return Err(bad("target exceeds the number of assets"));
                    }
                }
            }
            ProblemInstance::Ilp { a, b, c, cardinalities } => {
                let m = cardinalities.len();
                if m == 0 || c.len() != m || a.len() != b.len() || a.iter().any(|r| r.len() != m) {
                    return Err(bad("ILP shapes disagree"));
                }
                if cardinalities.iter().any(|&d| d < 1) {
                    return Err(bad("cardinalities must be positive"));
                }
                finite(c, "c")?;
                finite(b, "b")?;
                a.iter().try_for_each(|r| finite(r, "A"))?;
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProblemInstance::Coloring { .. } => "coloring",
            ProblemInstance::Tsp { .. } => "tsp",
            ProblemInstance::Sms { .. } => "sms",
            ProblemInstance::Portfolio { .. } => "portfolio",
            ProblemInstance::Ilp { .. } => "ilp",
        }
    }

    pub fn domain(&self) -> Result<Arc<DomainSpec>> {
        self.validate()?;
        Ok(match self {
            ProblemInstance::Coloring { num_nodes, colors, .. } => DomainSpec::uniform("v", *num_nodes, *colors),
            ProblemInstance::Tsp { distances } => DomainSpec::uniform("p", distances.len(), distances.len()),
            ProblemInstance::Sms { processing, .. } => DomainSpec::uniform("p", processing.len(), processing.len()),
            ProblemInstance::Portfolio { returns, .. } => DomainSpec::uniform("z", returns.len(), 3),
            ProblemInstance::Ilp { cardinalities, .. } => {
                DomainSpec::new(cardinalities.iter().enumerate().map(|(i, d)| (format!("x{i}"), *d)))?
            }
        })
    }

    /// Cost operator `H_C`. For ILP this is the objective `c.x` itself; see
    /// [`ProblemInstance::minimization_cost`] for the sign used by solvers.
    pub fn cost(&self) -> Result<OperatorPoly> {
        let dom = self.domain()?;
        match self {
            ProblemInstance::Coloring { edges, .. } => {
                let parts = edges.iter().map(|&(a, b)| eq(&dom, &format!("v{a}"), &format!("v{b}"))).collect::<Result<Vec<_>>>()?;
                OperatorPoly::sum(&dom, &parts)
            }
            ProblemInstance::Tsp { distances } => Ok(tsp_cost(&dom, distances)),
            ProblemInstance::Sms { processing, deadlines, weights, weighted } => {
                let m = processing.len();
                let w: Vec<f64> = match (weighted, weights) {
                    (true, Some(w)) => w.clone(),
                    _ => vec![1.0; m],
                };
                Ok(sms_cost(&dom, processing, deadlines, &w))
            }
            ProblemInstance::Portfolio { risk, covariance, returns, previous, trade_cost, .. } => {
                portfolio_cost(&dom, *risk, covariance, returns, previous.as_deref(), *trade_cost)
            }
            ProblemInstance::Ilp { c, .. } => {
                let mut terms = Vec::new();
                for (i, ci) in c.iter().enumerate() {
                    terms.push(single(i, Primitive::Number.to_local(dom.d(i))?, *ci));
                }
                Ok(OperatorPoly::from_terms(&dom, terms))
            }
        }
    }

    /// Cost every solver minimizes: `H_C`, negated for ILP (a maximization).
    pub fn minimization_cost(&self) -> Result<OperatorPoly> {
        let h = self.cost()?;
        Ok(match self {
            ProblemInstance::Ilp { .. } => h.scale_re(-1.0),
            _ => h,
        })
    }

    pub fn feasibility(&self) -> FeasibilityKind {
        match self {
            ProblemInstance::Tsp { .. } | ProblemInstance::Sms { .. } => FeasibilityKind::Permutation,
            ProblemInstance::Portfolio { returns, target: Some(t), .. } => {
                FeasibilityKind::SumEquals { target: *t as f64, values: vec![vec![-1.0, 0.0, 1.0]; returns.len()] }
            }
            _ => FeasibilityKind::AllValid,
        }
    }

    /// Net position `sum_a z_a` of a portfolio instance.
    pub fn portfolio_constraint(&self) -> Result<OperatorPoly> {
        match self {
            ProblemInstance::Portfolio { .. } => {
                let dom = self.domain()?;
                let a = z_value();
                Ok(OperatorPoly::from_terms(&dom, (0..dom.len()).map(|i| single(i, a.clone(), 1.0)).collect()))
            }
            _ => Err(bad("not a portfolio instance")),
        }
    }
}

fn single(var: usize, f: LocalOp, coeff: f64) -> ProductTerm {
    let mut factors = BTreeMap::new();
    factors.insert(var, f);
    ProductTerm { coeff: c(coeff), factors }
}

fn pair(v1: usize, f1: LocalOp, v2: usize, f2: LocalOp, coeff: f64) -> ProductTerm {
    let mut t = single(v1, f1, coeff);
    t.factors.insert(v2, f2);
    t
}

fn ind(d: usize, k: usize) -> LocalOp {
    Primitive::Indicator(k).to_local(d).unwrap()
}

fn diag(a: &[f64]) -> LocalOp {
    Primitive::value_real(a).to_local(a.len()).unwrap()
}

fn z_value() -> LocalOp {
    diag(&[-1.0, 0.0, 1.0])
}

/// Each leg between consecutive positions (cyclic) costs `d(k, l)`. Every
/// unordered pair `l < k` is charged in both directions.
fn tsp_cost(dom: &Arc<DomainSpec>, dist: &[Vec<f64>]) -> OperatorPoly {
    let m = dist.len();
    let mut terms = Vec::new();
    for a in 0..m {
        let b = (a + 1) % m;
        if a == b {
            continue;
        }
        for k in 0..m {
            for l in 0..k {
                if dist[k][l] == 0.0 {
                    continue;
                }
                terms.push(pair(a, ind(m, k), b, ind(m, l), dist[k][l]));
                terms.push(pair(a, ind(m, l), b, ind(m, k), dist[k][l]));
            }
        }
    }
    OperatorPoly::from_terms(dom, terms)
}

/// `sum_k w_k (s_k + p_k - d_k)` with `s_k` the start time of job `k`.
fn sms_cost(dom: &Arc<DomainSpec>, p: &[f64], dl: &[f64], w: &[f64]) -> OperatorPoly {
    let m = p.len();
    let wd = diag(w);
    let proc_ = diag(p);
    let own: Vec<f64> = (0..m).map(|k| w[k] * (p[k] - dl[k])).collect();
    let own = diag(&own);
    let mut terms = Vec::new();
    for a in 0..m {
        for b in 0..a {
            terms.push(pair(a, wd.clone(), b, proc_.clone(), 1.0));
        }
        terms.push(single(a, own.clone(), 1.0));
    }
    OperatorPoly::from_terms(dom, terms)
}

fn portfolio_cost(
    dom: &Arc<DomainSpec>,
    lambda: f64,
    sigma: &[Vec<f64>],
    mu: &[f64],
    prev: Option<&[i64]>,
    t: f64,
) -> Result<OperatorPoly> {
    let m = mu.len();
    let a = OperatorPoly::from_terms;
    let az: Vec<OperatorPoly> = (0..m).map(|i| a(dom, vec![single(i, z_value(), 1.0)])).collect();
    let mut parts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if sigma[i][j] != 0.0 && lambda != 0.0 {
                parts.push(az[i].mul(&az[j])?.scale_re(lambda * sigma[i][j]));
            }
        }
        parts.push(az[i].scale_re(-(1.0 - lambda) * mu[i]));
    }
    if let Some(y) = prev {
        if t != 0.0 {
            for (i, yi) in y.iter().enumerate() {
                let level = (yi + 1) as usize;
                let stay = OperatorPoly::from_factor(dom, i, ind(3, level));
                parts.push(OperatorPoly::identity(dom).sub(&stay)?.scale_re(t));
            }
        }
    }
    OperatorPoly::sum(dom, &parts)
}

/// Projector onto the feasible assignments of `kind`.
pub fn feasibility_projector(domain: &Arc<DomainSpec>, kind: &FeasibilityKind) -> Result<OperatorPoly> {
    match kind {
        FeasibilityKind::AllValid => Ok(OperatorPoly::identity(domain)),
        FeasibilityKind::Permutation => {
            let m = domain.len();
            if domain.dims().iter().any(|&d| d != m) {
                return Err(bad("permutation feasibility needs d = M for every variable"));
            }
            if m > 9 {
                return Err(bad("permutation projector limited to M <= 9"));
            }
            let mut terms = Vec::new();
            let mut perm: Vec<usize> = (0..m).collect();
            permutations(&mut perm, 0, &mut |p| {
                let factors = p.iter().enumerate().map(|(v, &k)| (v, ind(m, k))).collect();
                terms.push(ProductTerm { coeff: c(1.0), factors });
            });
            Ok(OperatorPoly::from_terms(domain, terms))
        }
        FeasibilityKind::SumEquals { target, values } => {
            let dims = domain.dims();
            if values.len() != dims.len() || values.iter().zip(&dims).any(|(v, d)| v.len() != *d) {
                return Err(bad("sum_equals values must list one value per level of every variable"));
            }
            let total = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d)).filter(|&t| t <= 1 << 20);
            if total.is_none() {
                return Err(Error::SupportCap { support: dims.len(), cap: 20 });
            }
            let mut terms = Vec::new();
            for x in sub_assignments(&dims) {
                let s: f64 = x.iter().enumerate().map(|(v, &k)| values[v][k]).sum();
                if (s - target).abs() <= 1e-9 {
                    let factors = x.iter().enumerate().map(|(v, &k)| (v, ind(dims[v], k))).collect();
                    terms.push(ProductTerm { coeff: Complex64::new(1.0, 0.0), factors });
                }
            }
            Ok(OperatorPoly::from_terms(domain, terms))
        }
    }
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}
