//! Constraint penalties, at the DQIR level or directly on qubits.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::c;
use crate::dqir::{sub_assignments, DomainSpec, LocalOp, OperatorPoly, Primitive, ProductTerm};
use crate::encoding::{lower, outer_product_terms, CodeSpec, EncodingAssignment};
use crate::error::{Error, Result};
use crate::pauli::{BitString, PauliPoly};

/// Default cap on the number of variables a linear row may touch.
pub const DEFAULT_ROW_SUPPORT_CAP: usize = 12;

fn ind(d: usize, k: usize) -> LocalOp {
    Primitive::Indicator(k).to_local(d).unwrap()
}

fn var_list(domain: &Arc<DomainSpec>, vars: Option<&[String]>) -> Result<Vec<usize>> {
    match vars {
        Some(vs) => vs.iter().map(|v| domain.index_of(v)).collect(),
        None => Ok((0..domain.len()).collect()),
    }
}

/// Number of ordered pairs of listed variables holding the same value.
pub fn f_perm(domain: &Arc<DomainSpec>, vars: Option<&[String]>) -> Result<OperatorPoly> {
    let vs = var_list(domain, vars)?;
    if vs.iter().any(|&v| domain.d(v) != domain.d(vs[0])) {
        return Err(Error::InvalidPenalty("permutation penalty needs equal cardinalities".into()));
    }
    let mut terms = Vec::new();
    for &a in &vs {
        for &b in &vs {
            if a == b {
                continue;
            }
            for k in 0..domain.d(a) {
                let factors = [(a, ind(domain.d(a), k)), (b, ind(domain.d(b), k))].into_iter().collect();
                terms.push(ProductTerm { coeff: c(1.0), factors });
            }
        }
    }
    Ok(OperatorPoly::from_terms(domain, terms))
}

/// `(sum_a A_a - D)^2`, `values[a][k]` being the value of level `k` of variable `a`.
pub fn f_sum(domain: &Arc<DomainSpec>, values: &[Vec<f64>], target: f64) -> Result<OperatorPoly> {
    if values.len() != domain.len() || values.iter().enumerate().any(|(v, a)| a.len() != domain.d(v)) {
        return Err(Error::InvalidPenalty("sum penalty needs one value per level of every variable".into()));
    }
    let mut s = OperatorPoly::constant(domain, c(-target));
    for (v, a) in values.iter().enumerate() {
        s = s.add(&OperatorPoly::from_factor(domain, v, Primitive::value_real(a).to_local(a.len())?))?;
    }
    s.mul(&s)
}

/// Indicator of `sum_a row[a] * x_a > b` (level index as value), summed over
/// violating assignments of the row's support.
pub fn f_lin(domain: &Arc<DomainSpec>, row: &[f64], b: f64, support_cap: usize) -> Result<OperatorPoly> {
    if row.len() != domain.len() {
        return Err(Error::InvalidPenalty(format!("row has {} coefficients for {} variables", row.len(), domain.len())));
    }
    let support: Vec<usize> = (0..row.len()).filter(|&v| row[v] != 0.0).collect();
    if support.len() > support_cap {
        return Err(Error::SupportCap { support: support.len(), cap: support_cap });
    }
    let dims: Vec<usize> = support.iter().map(|&v| domain.d(v)).collect();
    let mut terms = Vec::new();
    for x in sub_assignments(&dims) {
        let lhs: f64 = support.iter().zip(&x).map(|(&v, &k)| row[v] * k as f64).sum();
        if lhs - b > 1e-9 {
            let factors = support.iter().zip(&x).map(|(&v, &k)| (v, ind(domain.d(v), k))).collect();
            terms.push(ProductTerm { coeff: c(1.0), factors });
        }
    }
    Ok(OperatorPoly::from_terms(domain, terms))
}

/// Options for the qubit-level validity penalty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityOptions {
    /// Emit the Hamming-weight-not-one projector for unary registers.
    #[serde(default)]
    pub unary_one_hot: bool,
}

/// Sum of projectors onto `words` (width `width`) of a register at `offset`,
/// or identity minus the complement when that is shorter.
fn word_projector(n_qubits: usize, offset: usize, width: usize, bad: &[u64], good: &[u64]) -> PauliPoly {
    let qubits: Vec<usize> = (offset..offset + width).collect();
    let mut p = PauliPoly::zero(n_qubits);
    let (list, sign) = if bad.len() <= good.len() { (bad, 1.0) } else { (good, -1.0) };
    if sign < 0.0 {
        p.add_term(crate::pauli::PauliString::identity(), c(1.0));
    }
    for &w in list {
        let b = BitString::from_word_at(w, offset);
        for (s, v) in outer_product_terms(&qubits, &b, &b) {
            p.add_term(s, v * sign);
        }
    }
    p.prune();
    p
}

/// Penalty on invalid bit patterns of one variable's register. Unary
/// registers give the null operator unless `unary_one_hot` is set. Block
/// unary penalizes invalid local words inside each block.
pub fn f_ss(asg: &EncodingAssignment, var: &str, opts: ValidityOptions) -> Result<PauliPoly> {
    let v = asg.domain().index_of(var)?;
    let t = asg.table(v);
    let (n, off, w) = (asg.n_qubits(), asg.offset(v), t.width);
    let partition = |all: u64, valid: &dyn Fn(u64) -> bool| -> (Vec<u64>, Vec<u64>) { (0..all).partition(|&x| !valid(x)) };
    match t.code {
        CodeSpec::Unary if !opts.unary_one_hot => Ok(PauliPoly::zero(n)),
        CodeSpec::BlockUnary { g, local } => {
            let bw = crate::encoding::ceil_log2(g + 1);
            let blocks = t.d.div_ceil(g);
            let mut out = PauliPoly::zero(n);
            for blk in 0..blocks {
                let levels = (t.d - blk * g).min(g);
                let words: Vec<u64> = (0..=levels as u64).map(|lv| local.word(lv)).collect();
                let (bad, good) = partition(1 << bw, &|x| words.contains(&x));
                out = out.add(&word_projector(n, off + blk * bw, bw, &bad, &good));
            }
            Ok(out)
        }
        _ => {
            if w > 20 {
                return Err(Error::SupportCap { support: w, cap: 20 });
            }
            let (bad, good) = partition(1 << w, &|x| t.is_valid(x));
            Ok(word_projector(n, off, w, &bad, &good))
        }
    }
}

/// `f_ss` summed over every variable.
pub fn f_ss_all(asg: &EncodingAssignment, opts: ValidityOptions) -> Result<PauliPoly> {
    let mut out = PauliPoly::zero(asg.n_qubits());
    for var in asg.domain().vars() {
        out = out.add(&f_ss(asg, &var.id, opts)?);
    }
    Ok(out)
}

/// An operator at either level of the stack.
#[derive(Clone, Debug, PartialEq)]
pub enum CostOperand {
    Dqir(OperatorPoly),
    Qubit(PauliPoly),
}

/// `H_C + sum_i chi_i F_i`. Stays at the DQIR level unless a qubit-level
/// penalty is present, in which case `asg` is used to lower the rest.
pub fn effective_cost(h_c: &OperatorPoly, penalties: &[(f64, CostOperand)], asg: Option<&EncodingAssignment>) -> Result<CostOperand> {
    for (chi, _) in penalties {
        if !(chi.is_finite() && *chi >= 0.0) {
            return Err(Error::InvalidPenalty(format!("penalty weight {chi} must be finite and non-negative")));
        }
    }
    let qubit_level = penalties.iter().any(|(_, p)| matches!(p, CostOperand::Qubit(_)));
    let mut dq = h_c.clone();
    for (chi, p) in penalties {
        if let CostOperand::Dqir(f) = p {
            dq = dq.add(&f.scale_re(*chi))?;
        }
    }
    if !qubit_level {
        return Ok(CostOperand::Dqir(dq));
    }
    let asg = asg.ok_or_else(|| Error::InvalidPenalty("qubit-level penalty needs an encoding assignment".into()))?;
    let mut out = lower(&dq, asg)?;
    for (chi, p) in penalties {
        if let CostOperand::Qubit(f) = p {
            out = out.add(&f.scale(Complex64::new(*chi, 0.0)));
        }
    }
    Ok(CostOperand::Qubit(out))
}

/// Penalty recipes as they appear in job files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PenaltyKind {
    Perm {
        #[serde(default)]
        vars: Option<Vec<String>>,
    },
    Sum { target: f64, values: Vec<Vec<f64>> },
    Lin {
        row: Vec<f64>,
        b: f64,
        #[serde(default = "default_cap")]
        support_cap: usize,
    },
    Validity {
        #[serde(default)]
        var: Option<String>,
        #[serde(default, flatten)]
        options: ValidityOptions,
    },
}

fn default_cap() -> usize {
    DEFAULT_ROW_SUPPORT_CAP
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltySpec {
    #[serde(flatten)]
    pub kind: PenaltyKind,
    pub weight: f64,
}

impl PenaltySpec {
    /// Build the penalty operator. Validity penalties need the assignment.
    pub fn build(&self, domain: &Arc<DomainSpec>, asg: Option<&EncodingAssignment>) -> Result<CostOperand> {
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return Err(Error::InvalidPenalty(format!("penalty weight {} must be finite and non-negative", self.weight)));
        }
        Ok(match &self.kind {
            PenaltyKind::Perm { vars } => CostOperand::Dqir(f_perm(domain, vars.as_deref())?),
            PenaltyKind::Sum { target, values } => CostOperand::Dqir(f_sum(domain, values, *target)?),
            PenaltyKind::Lin { row, b, support_cap } => CostOperand::Dqir(f_lin(domain, row, *b, *support_cap)?),
            PenaltyKind::Validity { var, options } => {
                let asg = asg.ok_or_else(|| Error::InvalidPenalty("validity penalty needs an encoding".into()))?;
                asg.check_domain(domain)?;
                CostOperand::Qubit(match var {
                    Some(v) => f_ss(asg, v, *options)?,
                    None => f_ss_all(asg, *options)?,
                })
            }
        })
    }
}
