use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::domain::{sub_assignments, DomainSpec};
use super::factor::{LocalOp, Primitive};
use crate::error::{Error, Result};
use crate::PRUNE_TOL;

/// `coeff * (tensor product of factors)`; variables without a factor carry identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTerm {
    pub coeff: Complex64,
    pub factors: BTreeMap<usize, LocalOp>,
}

impl ProductTerm {
    pub fn constant(c: Complex64) -> Self {
        ProductTerm { coeff: c, factors: BTreeMap::new() }
    }

    /// Upper bound on the size of this term's contribution.
    fn magnitude(&self) -> f64 {
        self.coeff.norm() * self.factors.values().map(|f| f.max_abs()).product::<f64>()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (v, f) in &other.factors {
            let merged = match factors.get(v) {
                Some(g) => g.matmul(f),
                None => f.clone(),
            };
            factors.insert(*v, merged);
        }
        ProductTerm { coeff: self.coeff * other.coeff, factors }
    }

    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        let ka: Vec<_> = self.factors.keys().collect();
        let kb: Vec<_> = other.factors.keys().collect();
        ka.cmp(&kb).then_with(|| {
            for (a, b) in self.factors.values().zip(other.factors.values()) {
                let o = a.cmp_key(b);
                if o.is_ne() {
                    return o;
                }
            }
            self.coeff.re.total_cmp(&other.coeff.re).then(self.coeff.im.total_cmp(&other.coeff.im))
        })
    }
}

/// Sum of product terms over a fixed domain. Kept simplified by every operation.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPoly {
    domain: Arc<DomainSpec>,
    terms: Vec<ProductTerm>,
}

impl OperatorPoly {
    pub fn zero(domain: &Arc<DomainSpec>) -> Self {
        OperatorPoly { domain: domain.clone(), terms: Vec::new() }
    }

    pub fn constant(domain: &Arc<DomainSpec>, c: Complex64) -> Self {
        Self::from_terms(domain, vec![ProductTerm::constant(c)])
    }

    pub fn identity(domain: &Arc<DomainSpec>) -> Self {
        Self::constant(domain, Complex64::new(1.0, 0.0))
    }

    /// Single primitive on variable `var`.
    pub fn primitive(domain: &Arc<DomainSpec>, var: &str, p: Primitive) -> Result<Self> {
        let i = domain.index_of(var)?;
        let f = p.to_local(domain.d(i)).map_err(|e| match e {
            Error::InvalidFactor(msg) => Error::InvalidFactor(format!("{var}: {msg}")),
            e => e,
        })?;
        Ok(Self::from_factor(domain, i, f))
    }

    pub fn indicator(domain: &Arc<DomainSpec>, var: &str, k: usize) -> Result<Self> {
        let i = domain.index_of(var)?;
        domain.check_level(i, k)?;
        Self::primitive(domain, var, Primitive::Indicator(k))
    }

    pub fn from_factor(domain: &Arc<DomainSpec>, var: usize, f: LocalOp) -> Self {
        assert_eq!(f.d(), domain.d(var));
        let mut factors = BTreeMap::new();
        factors.insert(var, f);
        Self::from_terms(domain, vec![ProductTerm { coeff: Complex64::new(1.0, 0.0), factors }])
    }

    pub fn from_terms(domain: &Arc<DomainSpec>, terms: Vec<ProductTerm>) -> Self {
        let mut p = OperatorPoly { domain: domain.clone(), terms };
        p.simplify_in_place();
        p
    }

    pub fn domain(&self) -> &Arc<DomainSpec> {
        &self.domain
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(&self.domain, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let terms = self.terms.iter().map(|t| ProductTerm { coeff: t.coeff * k, factors: t.factors.clone() }).collect();
        Self::from_terms(&self.domain, terms)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// Operator product `self * other` (self applied last).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        Ok(Self::from_terms(&self.domain, terms))
    }

    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ProductTerm {
                coeff: t.coeff.conj(),
                factors: t.factors.iter().map(|(v, f)| (*v, f.adjoint())).collect(),
            })
            .collect();
        Self::from_terms(&self.domain, terms)
    }

    /// Sum of a list of operators over one domain.
    pub fn sum<'a>(domain: &Arc<DomainSpec>, ops: impl IntoIterator<Item = &'a OperatorPoly>) -> Result<Self> {
        let mut terms = Vec::new();
        for op in ops {
            if op.domain != *domain {
                return Err(Error::DomainMismatch);
            }
            terms.extend(op.terms.iter().cloned());
        }
        Ok(Self::from_terms(domain, terms))
    }

    /// Re-run simplification (idempotent).
    pub fn simplify(&self) -> Self {
        Self::from_terms(&self.domain, self.terms.clone())
    }

    fn simplify_in_place(&mut self) {
        // normalize every term
        let mut normalized = Vec::with_capacity(self.terms.len());
        'terms: for t in self.terms.drain(..) {
            let mut coeff = t.coeff;
            if coeff.norm() == 0.0 || !coeff.re.is_finite() || !coeff.im.is_finite() {
                continue;
            }
            let mut factors = t.factors;
            for f in factors.values_mut() {
                let p = f.normalize();
                if p.norm() == 0.0 {
                    continue 'terms;
                }
                coeff *= p;
            }
            normalized.push(ProductTerm { coeff, factors });
        }
        let mut terms = merge_identical(normalized);

        // combine terms that differ in a single factor
        loop {
            let mut changed = false;
            for v in 0..self.domain.len() {
                let (next, c) = combine_on(terms, v);
                terms = next;
                changed |= c;
            }
            if !changed {
                break;
            }
        }
        terms.retain(|t| t.magnitude() >= PRUNE_TOL);
        terms.sort_by(|a, b| a.cmp_key(b));
        self.terms = terms;
    }

    /// Variables touched by at least one term.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|t| t.factors.keys().copied()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| t.factors.values().all(|f| f.is_diagonal()))
    }

    /// `<x|O|x>`, only meaningful for diagonal operators.
    pub fn diagonal_value(&self, x: &[usize]) -> Complex64 {
        self.element(x, x)
    }

    /// `<x|O|y>`.
    pub fn element(&self, x: &[usize], y: &[usize]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        'terms: for t in &self.terms {
            let mut v = t.coeff;
            for i in 0..self.domain.len() {
                match t.factors.get(&i) {
                    Some(f) => v *= f.get(x[i], y[i]),
                    None if x[i] != y[i] => continue 'terms,
                    None => {}
                }
            }
            acc += v;
        }
        acc
    }

    /// `O|y>` as a sparse map from basis state to amplitude.
    pub fn apply_basis(&self, y: &[usize]) -> HashMap<Vec<usize>, Complex64> {
        let mut out: HashMap<Vec<usize>, Complex64> = HashMap::new();
        for t in &self.terms {
            let mut partial: Vec<(Vec<usize>, Complex64)> = vec![(y.to_vec(), t.coeff)];
            for (&v, f) in &t.factors {
                let col: Vec<_> = f.column(y[v]).collect();
                let mut next = Vec::with_capacity(partial.len() * col.len());
                for (x, a) in &partial {
                    for &(k, b) in &col {
                        let mut x2 = x.clone();
                        x2[v] = k;
                        next.push((x2, a * b));
                    }
                }
                partial = next;
            }
            for (x, a) in partial {
                *out.entry(x).or_default() += a;
            }
        }
        out
    }

    /// Largest deviation between `self` and its adjoint, measured on terms.
    pub fn hermiticity_error(&self) -> f64 {
        let diff = self.sub(&self.adjoint()).expect("same domain");
        diff.terms.iter().map(|t| t.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= crate::BOOL_TOL
    }

    /// Structural comparison with tolerance: same term shapes, close values.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.domain != other.domain || self.terms.len() != other.terms.len() {
            return false;
        }
        // explicit identity factors count as absent
        let strip = |t: &ProductTerm| -> Vec<(usize, LocalOp)> {
            t.factors.iter().filter(|(_, f)| !f.approx_eq(&LocalOp::identity(f.d()), tol)).map(|(v, f)| (*v, f.clone())).collect()
        };
        let rhs: Vec<_> = other.terms.iter().map(|t| (t.coeff, strip(t))).collect();
        let mut used = vec![false; rhs.len()];
        self.terms.iter().all(|t| {
            let fs = strip(t);
            let hit = rhs.iter().enumerate().position(|(j, (c, g))| {
                !used[j]
                    && (t.coeff - c).norm() <= tol
                    && fs.len() == g.len()
                    && fs.iter().zip(g).all(|((va, fa), (vb, fb))| va == vb && fa.approx_eq(fb, tol))
            });
            hit.map(|j| used[j] = true).is_some()
        })
    }

    /// Check the operator is diagonal with eigenvalues in {0, 1}, enumerating its support.
    pub fn check_boolean(&self) -> Result<()> {
        if !self.is_diagonal() {
            return Err(Error::NotBoolean("operator has off-diagonal factors".into()));
        }
        let support: Vec<usize> = self.support().into_iter().collect();
        let dims: Vec<usize> = support.iter().map(|&v| self.domain.d(v)).collect();
        let count = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d));
        if count.map_or(true, |c| c > 1 << 20) {
            return Err(Error::NotBoolean("support too large to verify".into()));
        }
        let mut x = vec![0; self.domain.len()];
        for sub in sub_assignments(&dims) {
            for (i, &v) in support.iter().enumerate() {
                x[v] = sub[i];
            }
            let val = self.diagonal_value(&x);
            let ok = val.im.abs() <= crate::BOOL_TOL
                && ((val.re).abs() <= crate::BOOL_TOL || (val.re - 1.0).abs() <= crate::BOOL_TOL);
            if !ok {
                return Err(Error::NotBoolean(format!("value {val} at {x:?}")));
            }
        }
        Ok(())
    }
}

fn merge_identical(terms: Vec<ProductTerm>) -> Vec<ProductTerm> {
    let mut index: HashMap<BTreeMap<usize, LocalOp>, usize> = HashMap::new();
    let mut out: Vec<ProductTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match index.get(&t.factors) {
            Some(&i) => out[i].coeff += t.coeff,
            None => {
                index.insert(t.factors.clone(), out.len());
                out.push(t);
            }
        }
    }
    out.retain(|t| t.coeff.norm() != 0.0);
    out
}

/// Merge terms that share every factor except the one on `v`.
fn combine_on(terms: Vec<ProductTerm>, v: usize) -> (Vec<ProductTerm>, bool) {
    let mut groups: HashMap<BTreeMap<usize, LocalOp>, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        if t.factors.contains_key(&v) {
            let mut rest = t.factors.clone();
            rest.remove(&v);
            let e = groups.entry(rest.clone()).or_default();
            if e.is_empty() {
                order.push(rest);
            }
            e.push(i);
        }
    }
    if groups.values().all(|g| g.len() < 2) {
        return (terms, false);
    }
    let mut taken = vec![false; terms.len()];
    let mut out = Vec::with_capacity(terms.len());
    for rest in order {
        let idx = &groups[&rest];
        if idx.len() < 2 {
            continue;
        }
        let mut acc = LocalOp::zeros(terms[idx[0]].factors[&v].d());
        for &i in idx {
            taken[i] = true;
            acc.add_scaled(&terms[i].factors[&v], terms[i].coeff);
        }
        let p = acc.normalize();
        if p.norm() == 0.0 {
            continue;
        }
        let mut factors = rest;
        factors.insert(v, acc);
        out.push(ProductTerm { coeff: p, factors });
    }
    for (i, t) in terms.into_iter().enumerate() {
        if !taken[i] {
            out.push(t);
        }
    }
    (merge_identical(out), true)
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.coeff.im == 0.0 {
                write!(f, "{}", t.coeff.re)?;
            } else {
                write!(f, "({}{:+}i)", t.coeff.re, t.coeff.im)?;
            }
            if t.factors.is_empty() {
                write!(f, " I")?;
            }
            for (v, fac) in &t.factors {
                let id = &self.domain.var(*v).id;
                write!(f, " {}[{id}]", short(&fac.classify()))?;
            }
        }
        Ok(())
    }
}

fn short(p: &Primitive) -> String {
    let fmt_c = |v: &Complex64| if v.im == 0.0 { format!("{}", v.re) } else { format!("{}{:+}i", v.re, v.im) };
    match p {
        Primitive::Indicator(k) => format!("P{k}"),
        Primitive::Value(a) => format!("A({})", a.iter().map(fmt_c).collect::<Vec<_>>().join(",")),
        Primitive::Number => "N".into(),
        Primitive::OneWay(k, l) => format!("|{k}><{l}|"),
        Primitive::Symmetric(k, l) => format!("T({k}<->{l})"),
        Primitive::General(rows) => format!(
            "G[{}]",
            rows.iter().map(|r| r.iter().map(fmt_c).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
        ),
    }
}
