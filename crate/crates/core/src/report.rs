//! Depth-study harness: sweep operators over encodings and dimensions.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{emit_product_formula, DepthReport};
use crate::dqir::{eq, DomainSpec, OperatorPoly, Primitive};
use crate::encoding::{lower, CodeSpec, EncodingAssignment, LocalCode};
use crate::error::{Error, Result};
use crate::mixer::{gdpm, mixer_generator, GeneratorKind};
use crate::problems::ProblemInstance;

/// Operators the sweep knows how to build at a given `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportOperator {
    /// `EQ(x0, x1)`, two variables of dimension `d`.
    Eq,
    /// Number operator of one variable.
    Number,
    /// Weighted single-machine scheduling cost with `d` jobs.
    Sms,
    /// Travelling salesperson cost with `d` cities.
    Tsp,
    /// First-order product formula of the shift mixer on one variable.
    Shift,
    /// Strict mixer from the graph search on one variable.
    Gdpm,
}

impl FromStr for ReportOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
            .map_err(|_| Error::InvalidInstance(format!("unknown report operator `{s}`")))
    }
}

/// Deterministic scheduling instance with `m` jobs.
pub fn sms_instance(m: usize) -> ProblemInstance {
    ProblemInstance::Sms {
        processing: (0..m).map(|k| (1 + k % 3) as f64).collect(),
        deadlines: (0..m).map(|k| (2 + 2 * k) as f64).collect(),
        weights: Some(vec![1.0; m]),
        weighted: true,
    }
}

/// Deterministic symmetric distance matrix with `m` cities.
pub fn tsp_instance(m: usize) -> ProblemInstance {
    let dist = |k: usize, l: usize| if k == l { 0.0 } else { (1 + (k + l + k * l) % 9) as f64 };
    ProblemInstance::Tsp { distances: (0..m).map(|k| (0..m).map(|l| dist(k, l)).collect()).collect() }
}

/// The DQIR operator for one cell (not defined for `Gdpm`).
pub fn report_operator(op: ReportOperator, d: usize) -> Result<OperatorPoly> {
    match op {
        ReportOperator::Eq => eq(&DomainSpec::uniform("x", 2, d), "x0", "x1"),
        ReportOperator::Number => OperatorPoly::primitive(&DomainSpec::uniform("x", 1, d), "x0", Primitive::Number),
        ReportOperator::Shift => mixer_generator(GeneratorKind::Shift, &DomainSpec::uniform("x", 1, d), &["x0".into()]),
        ReportOperator::Sms => sms_instance(d).cost(),
        ReportOperator::Tsp => tsp_instance(d).cost(),
        ReportOperator::Gdpm => Err(Error::Unsupported("gdpm cells are mixer circuits, not operators".into())),
    }
}

/// One row: compile `exp(-i H)` (or the strict mixer) and measure it.
pub fn report_cell(op: ReportOperator, code: CodeSpec, d: usize) -> Result<DepthReport> {
    let encoding = code.short_name();
    if op == ReportOperator::Gdpm {
        let design = gdpm(d, code)?;
        let c = design.circuit_uniform(1.0).compile();
        return Ok(DepthReport { encoding, d, qubits: design.n_qubits, depth: c.depth(), entangling: c.cnot_count(), terms: design.gates.len() });
    }
    let h = report_operator(op, d)?;
    let asg = EncodingAssignment::uniform(h.domain(), code)?;
    let p = lower(&h, &asg)?;
    let c = emit_product_formula(&p, 1.0)?.compile();
    Ok(DepthReport { encoding, d, qubits: asg.n_qubits(), depth: c.depth(), entangling: c.cnot_count(), terms: p.non_identity_len() })
}

/// Sweep specification.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportSpec {
    pub operator: ReportOperator,
    pub codes: Vec<CodeSpec>,
    pub ds: Vec<usize>,
}

impl Default for ReportSpec {
    fn default() -> Self {
        ReportSpec {
            operator: ReportOperator::Eq,
            codes: vec![CodeSpec::Sb, CodeSpec::Gray, CodeSpec::Unary, CodeSpec::bu(3, LocalCode::Gray)],
            ds: (3..=16).collect(),
        }
    }
}

/// Cells run in parallel; rows come back sorted.
pub fn run_report(spec: &ReportSpec) -> Result<Vec<DepthReport>> {
    let cells: Vec<(CodeSpec, usize)> = spec.codes.iter().flat_map(|&c| spec.ds.iter().map(move |&d| (c, d))).collect();
    let mut rows = cells.into_par_iter().map(|(c, d)| report_cell(spec.operator, c, d)).collect::<Result<Vec<_>>>()?;
    rows.sort();
    Ok(rows)
}

/// CSV text, with an optional leading `# generated` comment.
pub fn to_csv(rows: &[DepthReport], timestamp: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(t) = timestamp {
        out.push_str(&format!("# generated {t}\n"));
    }
    out.push_str(DepthReport::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
