//! Boolean composition rules, named comparison functions and controlled generators.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::domain::DomainSpec;
use super::factor::{LocalOp, Primitive};
use super::poly::OperatorPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoolOp {
    Not,
    Implies,
    And,
    Or,
    Xor,
    /// `a * Hf + b * Hg`
    Linear(Complex64, Complex64),
}

/// Combine 0/1-valued diagonal operators. `Not` ignores `g`.
pub fn compose_bool(op: BoolOp, f: &OperatorPoly, g: Option<&OperatorPoly>) -> Result<OperatorPoly> {
    f.check_boolean()?;
    let id = OperatorPoly::identity(f.domain());
    if op == BoolOp::Not {
        return id.sub(f);
    }
    let g = g.ok_or_else(|| Error::NotBoolean("binary rule needs two operands".into()))?;
    g.check_boolean()?;
    let fg = f.mul(g)?;
    match op {
        BoolOp::Not => unreachable!(),
        BoolOp::And => Ok(fg),
        BoolOp::Implies => id.sub(f)?.add(&fg),
        BoolOp::Or => f.add(g)?.sub(&fg),
        BoolOp::Xor => f.add(g)?.sub(&fg.scale_re(2.0)),
        BoolOp::Linear(a, b) => f.scale(a).add(&g.scale(b)),
    }
}

/// `sum_a P(a)_x P(a)_y` over levels both variables share.
pub fn eq(domain: &Arc<DomainSpec>, x: &str, y: &str) -> Result<OperatorPoly> {
    let (i, j) = (domain.index_of(x)?, domain.index_of(y)?);
    if i == j {
        return Err(Error::InvalidInstance("EQ needs two distinct variables".into()));
    }
    let levels = domain.d(i).min(domain.d(j));
    let mut terms = Vec::with_capacity(levels);
    for a in 0..levels {
        terms.push(OperatorPoly::indicator(domain, x, a)?.mul(&OperatorPoly::indicator(domain, y, a)?)?);
    }
    OperatorPoly::sum(domain, &terms)
}

pub fn neq(domain: &Arc<DomainSpec>, x: &str, y: &str) -> Result<OperatorPoly> {
    OperatorPoly::identity(domain).sub(&eq(domain, x, y)?)
}

/// All listed variables take the same value.
pub fn all_equal(domain: &Arc<DomainSpec>, vars: &[&str]) -> Result<OperatorPoly> {
    if vars.is_empty() {
        return Ok(OperatorPoly::identity(domain));
    }
    let idx: Vec<usize> = vars.iter().map(|v| domain.index_of(v)).collect::<Result<_>>()?;
    let levels = idx.iter().map(|&i| domain.d(i)).min().unwrap();
    let mut terms = Vec::new();
    for a in 0..levels {
        let mut t = OperatorPoly::identity(domain);
        for v in vars {
            t = t.mul(&OperatorPoly::indicator(domain, v, a)?)?;
        }
        terms.push(t);
    }
    OperatorPoly::sum(domain, &terms)
}

/// Product of `NEQ` over all pairs of listed variables.
pub fn all_different(domain: &Arc<DomainSpec>, vars: &[&str]) -> Result<OperatorPoly> {
    // no injective assignment at all (Hall on sorted level counts): exactly zero,
    // which the pairwise product below would only reach numerically
    let mut ds = vars.iter().map(|v| domain.index_of(v).map(|i| domain.d(i))).collect::<Result<Vec<_>>>()?;
    ds.sort_unstable();
    if ds.iter().enumerate().any(|(k, &d)| d <= k) {
        return Ok(OperatorPoly::zero(domain));
    }
    let mut out = OperatorPoly::identity(domain);
    for a in 0..vars.len() {
        for b in a + 1..vars.len() {
            out = out.mul(&neq(domain, vars[a], vars[b])?)?;
        }
    }
    Ok(out)
}

/// Number of listed variables that are nonzero: `M - sum P(0)`.
pub fn count_nonzero(domain: &Arc<DomainSpec>, vars: &[&str]) -> Result<OperatorPoly> {
    let mut out = OperatorPoly::constant(domain, Complex64::new(vars.len() as f64, 0.0));
    for v in vars {
        out = out.sub(&OperatorPoly::indicator(domain, v, 0)?)?;
    }
    Ok(out)
}

/// Number of properly colored edges: `sum_edges NEQ`.
pub fn proper_coloring(domain: &Arc<DomainSpec>, edges: &[(&str, &str)]) -> Result<OperatorPoly> {
    let parts = edges.iter().map(|(a, b)| neq(domain, a, b)).collect::<Result<Vec<_>>>()?;
    OperatorPoly::sum(domain, &parts).map(|p| if edges.is_empty() { OperatorPoly::zero(domain) } else { p })
}

/// `Hf (x) H`: with `exp(-i phi ...)` this applies `exp(-i phi H)` exactly where `f = 1`.
pub fn controlled_generator(f: &OperatorPoly, target: &OperatorPoly) -> Result<OperatorPoly> {
    f.check_boolean()?;
    if f.domain() != target.domain() {
        return Err(Error::DomainMismatch);
    }
    if let Some(v) = f.support().intersection(&target.support()).next() {
        return Err(Error::OverlappingSupport(f.domain().var(*v).id.clone()));
    }
    f.mul(target)
}

/// Hermitian `H` on one variable with `exp(-i pi/2 H)` equal to the permutation
/// `|k> -> |perm[k]>`. Powers follow: `exp(-i pi/2 n H) = U^n`.
pub fn permutation_generator(domain: &Arc<DomainSpec>, var: &str, perm: &[usize]) -> Result<OperatorPoly> {
    let v = domain.index_of(var)?;
    let d = domain.d(v);
    let mut seen = vec![false; d];
    if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidInstance(format!("not a permutation of 0..{d}")));
    }
    let mut h = LocalOp::zeros(d);
    let mut visited = vec![false; d];
    for start in 0..d {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut k = perm[start];
        while k != start {
            visited[k] = true;
            cycle.push(k);
            k = perm[k];
        }
        // U|c_i> = |c_{i+1}>; eigenvalue w^j gets generator eigenvalue -4j/L
        let len = cycle.len();
        for (a, &ca) in cycle.iter().enumerate() {
            for (b, &cb) in cycle.iter().enumerate() {
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..len {
                    let h_j = -4.0 * j as f64 / len as f64;
                    let ang = 2.0 * PI * ((b as f64 - a as f64) * j as f64) / len as f64;
                    s += Complex64::from_polar(h_j, ang);
                }
                h.set(ca, cb, s / len as f64);
            }
        }
    }
    // clean rounding noise so the factor stays exactly Hermitian
    let mut clean = LocalOp::zeros(d);
    for k in 0..d {
        for l in 0..d {
            let v = (h.get(k, l) + h.get(l, k).conj()) * 0.5;
            let r = |x: f64| if x.abs() < 1e-13 { 0.0 } else { x };
            clean.set(k, l, Complex64::new(r(v.re), r(v.im)));
        }
    }
    Ok(OperatorPoly::from_factor(domain, v, clean))
}

/// Generator for swapping levels `k` and `l` only: `T(k<->l) - P(k) - P(l)`.
pub fn transposition_generator(domain: &Arc<DomainSpec>, var: &str, k: usize, l: usize) -> Result<OperatorPoly> {
    let t = OperatorPoly::primitive(domain, var, Primitive::Symmetric(k, l))?;
    t.sub(&OperatorPoly::indicator(domain, var, k)?)?.sub(&OperatorPoly::indicator(domain, var, l)?)
}

/// Compute-into-register: `exp(-i pi/2 Hf (x) H_perm)` applies `perm^{f(x)}` to `register`.
pub fn compute_into_register(f: &OperatorPoly, register: &str, perm: &[usize]) -> Result<OperatorPoly> {
    let h = permutation_generator(f.domain(), register, perm)?;
    controlled_generator(f, &h)
}
