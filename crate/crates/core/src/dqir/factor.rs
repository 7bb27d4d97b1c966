use std::hash::{Hash, Hasher};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative size below which a factor entry is treated as zero.
const ENTRY_REL_TOL: f64 = 1e-14;
/// An entry can serve as normalization pivot once it reaches this fraction of the largest one.
const PIVOT_REL: f64 = 1e-6;

/// Constructors for the single-variable building blocks.
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    /// `|k><k|`
    Indicator(usize),
    /// `diag(a)`
    Value(Vec<Complex64>),
    /// `diag(0, 1, .., d-1)`
    Number,
    /// `|k><l|`
    OneWay(usize, usize),
    /// `|k><l| + |l><k|`
    Symmetric(usize, usize),
    /// Any `d x d` matrix, row-major.
    General(Vec<Vec<Complex64>>),
}

impl Primitive {
    pub fn value_real(a: &[f64]) -> Self {
        Primitive::Value(a.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn to_local(&self, d: usize) -> Result<LocalOp> {
        let check = |k: usize| {
            if k >= d {
                Err(Error::InvalidFactor(format!("level {k} out of range for d = {d}")))
            } else {
                Ok(())
            }
        };
        let mut m = LocalOp::zeros(d);
        match self {
            Primitive::Indicator(k) => {
                check(*k)?;
                m.set(*k, *k, Complex64::new(1.0, 0.0));
            }
            Primitive::Value(a) => {
                if a.len() != d {
                    return Err(Error::InvalidFactor(format!("value list has {} entries, d = {d}", a.len())));
                }
                for (k, v) in a.iter().enumerate() {
                    m.set(k, k, *v);
                }
            }
            Primitive::Number => {
                for k in 0..d {
                    m.set(k, k, Complex64::new(k as f64, 0.0));
                }
            }
            Primitive::OneWay(k, l) => {
                check(*k)?;
                check(*l)?;
                m.set(*k, *l, Complex64::new(1.0, 0.0));
            }
            Primitive::Symmetric(k, l) => {
                check(*k)?;
                check(*l)?;
                if k == l {
                    return Err(Error::InvalidFactor("symmetric transfer needs k != l".into()));
                }
                m.set(*k, *l, Complex64::new(1.0, 0.0));
                m.set(*l, *k, Complex64::new(1.0, 0.0));
            }
            Primitive::General(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::InvalidFactor(format!("general factor must be {d}x{d}")));
                }
                for (k, r) in rows.iter().enumerate() {
                    for (l, v) in r.iter().enumerate() {
                        m.set(k, l, *v);
                    }
                }
            }
        }
        if m.m.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidFactor("non-finite entry".into()));
        }
        Ok(m)
    }
}

/// Dense `d x d` matrix acting on one variable. Every factor is stored this
/// way; [`LocalOp::classify`] recovers the primitive shape for printing.
#[derive(Clone, Debug)]
pub struct LocalOp {
    d: usize,
    m: Vec<Complex64>,
}

impl LocalOp {
    pub fn zeros(d: usize) -> Self {
        LocalOp { d, m: vec![Complex64::new(0.0, 0.0); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for k in 0..d {
            m.set(k, k, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.m[k * self.d + l]
    }

    pub fn set(&mut self, k: usize, l: usize, v: Complex64) {
        self.m[k * self.d + l] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.m
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let d = self.d;
        self.m
            .iter()
            .enumerate()
            .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
            .map(move |(i, v)| (i / d, i % d, *v))
    }

    /// Nonzero entries of column `l`.
    pub fn column(&self, l: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        (0..self.d).map(move |k| (k, self.get(k, l))).filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzeros().all(|(k, l, _)| k == l)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.d).all(|k| (0..self.d).all(|l| self.get(k, l) == if k == l { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = Self::zeros(d);
        for (k, j, a) in self.nonzeros() {
            for l in 0..d {
                let b = other.m[j * d + l];
                if b.re != 0.0 || b.im != 0.0 {
                    out.m[k * d + l] += a * b;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, k: Complex64) {
        for (a, b) in self.m.iter_mut().zip(&other.m) {
            *a += b * k;
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.d);
        for (k, l, v) in self.nonzeros() {
            out.set(l, k, v.conj());
        }
        out
    }

    /// Zero out negligible entries, then divide by a pivot so equal factors
    /// compare bit-for-bit. Returns the pivot (zero if the factor vanished).
    pub(crate) fn normalize(&mut self) -> Complex64 {
        let max = self.max_abs();
        if max == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        for v in self.m.iter_mut() {
            if v.norm() <= ENTRY_REL_TOL * max {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        let pivot = self.m[self.pivot_index(max)];
        for v in self.m.iter_mut() {
            if v.re != 0.0 || v.im != 0.0 {
                *v /= pivot;
            }
            // -0.0 and +0.0 must hash the same
            if v.re == 0.0 {
                v.re = 0.0;
            }
            if v.im == 0.0 {
                v.im = 0.0;
            }
        }
        pivot
    }

    // Scan (r, c)/(c, r) pairs together so the adjoint picks the mirrored
    // entry; inside a pair an exact 1 wins, keeping normalize idempotent and
    // adjoint(adjoint(f)) bit-exact.
    fn pivot_index(&self, max: f64) -> usize {
        let d = self.d;
        let ok = |i: usize| self.m[i].norm() >= PIVOT_REL * max;
        let one = Complex64::new(1.0, 0.0);
        for r in 0..d {
            for c in r..d {
                let (up, lo) = (r * d + c, c * d + r);
                match (ok(up), ok(lo)) {
                    (true, true) if self.m[lo] == one && self.m[up] != one => return lo,
                    (true, _) => return up,
                    (false, true) => return lo,
                    _ => {}
                }
            }
        }
        unreachable!("nonzero factor has a pivot")
    }

    fn bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.m.iter().flat_map(|v| [v.re.to_bits(), v.im.to_bits()])
    }

    pub(crate) fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        self.d.cmp(&other.d).then_with(|| {
            for (a, b) in self.m.iter().zip(&other.m) {
                let o = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.d == other.d && self.m.iter().zip(&other.m).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Recover the primitive shape. Exact: `classify().to_local(d)` reproduces `self`.
    pub fn classify(&self) -> Primitive {
        let one = Complex64::new(1.0, 0.0);
        let nz: Vec<_> = self.nonzeros().collect();
        if self.is_diagonal() {
            if nz.len() == 1 && nz[0].2 == one {
                return Primitive::Indicator(nz[0].0);
            }
            return Primitive::Value((0..self.d).map(|k| self.get(k, k)).collect());
        }
        if nz.len() == 1 && nz[0].2 == one {
            return Primitive::OneWay(nz[0].0, nz[0].1);
        }
        if nz.len() == 2 && nz.iter().all(|e| e.2 == one) && nz[0].0 == nz[1].1 && nz[0].1 == nz[1].0 {
            return Primitive::Symmetric(nz[0].0, nz[0].1);
        }
        Primitive::General((0..self.d).map(|k| (0..self.d).map(|l| self.get(k, l)).collect()).collect())
    }
}

impl PartialEq for LocalOp {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.bits().eq(other.bits())
    }
}

impl Eq for LocalOp {}

impl Hash for LocalOp {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        for b in self.bits() {
            b.hash(state);
        }
    }
}
