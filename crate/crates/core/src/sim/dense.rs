use ndarray::Array2;
use num_complex::Complex64;

use crate::dqir::OperatorPoly;
use crate::error::{Error, Result};
use crate::pauli::{BitString, PauliPoly};

/// Default largest matrix dimension the dense checks will build.
pub const DEFAULT_DENSE_CAP: usize = 1 << 12;

/// Dense cap, overridable through `DQIR_DENSE_CAP`.
pub fn dense_cap() -> usize {
    std::env::var("DQIR_DENSE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_DENSE_CAP)
}

pub(crate) fn check_cap(dim: usize) -> Result<()> {
    let cap = dense_cap();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(())
}

/// Square complex matrix with helpers for the verification checks.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub mat: Array2<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator { mat: Array2::zeros((dim, dim)) }
    }

    pub fn identity(dim: usize) -> Self {
        DenseOperator { mat: Array2::eye(dim) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Matrix of a DQIR operator; state index as in [`crate::dqir::DomainSpec::state_index`].
    pub fn from_operator(op: &OperatorPoly) -> Result<Self> {
        let dom = op.domain();
        let dim = dom.state_count().ok_or(Error::DimensionCap { dim: usize::MAX, cap: dense_cap() })?;
        check_cap(dim)?;
        let mut m = Self::zeros(dim);
        for y in 0..dim {
            for (x, v) in op.apply_basis(&dom.state_at(y)) {
                m.mat[[dom.state_index(&x), y]] += v;
            }
        }
        Ok(m)
    }

    /// Matrix of a Pauli polynomial; bit `i` of the index is qubit `i`.
    pub fn from_pauli(p: &PauliPoly) -> Result<Self> {
        let n = p.n_qubits;
        if n >= usize::BITS as usize - 1 {
            return Err(Error::DimensionCap { dim: usize::MAX, cap: dense_cap() });
        }
        let dim = 1usize << n;
        check_cap(dim)?;
        let mut m = Self::zeros(dim);
        for y in 0..dim {
            for (b, v) in p.apply_basis(&BitString::from_usize(y)) {
                m.mat[[b.to_usize(), y]] += v;
            }
        }
        Ok(m)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        DenseOperator { mat: self.mat.dot(&other.mat) }
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator { mat: self.mat.t().mapv(|v| v.conj()) }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        DenseOperator { mat: self.mat.mapv(|v| v * k) }
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.mat.dim(), other.mat.dim());
        self.mat.iter().zip(other.mat.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.mat.indexed_iter().all(|((i, j), v)| i == j || v.norm() <= tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim())) <= tol
    }

    /// `exp(-i t H)`. Diagonal inputs are exponentiated entrywise; otherwise
    /// scaling and squaring with a Taylor series.
    pub fn exp_i(&self, t: f64) -> Self {
        let dim = self.dim();
        if self.is_diagonal(0.0) {
            let mut out = Self::zeros(dim);
            for i in 0..dim {
                out.mat[[i, i]] = (Complex64::new(0.0, -t) * self.mat[[i, i]]).exp();
            }
            return out;
        }
        let a = self.scale(Complex64::new(0.0, -t));
        let norm = a.mat.rows().into_iter().map(|r| r.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
        let mut s = 0;
        while norm / (1u64 << s) as f64 > 0.25 {
            s += 1;
        }
        let a = a.scale(Complex64::new(1.0 / (1u64 << s) as f64, 0.0));
        let mut sum = Self::identity(dim);
        let mut term = Self::identity(dim);
        for k in 1..=24 {
            term = term.matmul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum.mat += &term.mat;
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        for _ in 0..s {
            sum = sum.matmul(&sum);
        }
        sum
    }
}
