use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::c;
use crate::circuit::{emit_product_formula, Circuit};
use crate::dqir::{DomainSpec, OperatorPoly, Primitive, ProductTerm};
use crate::encoding::{lower, EncodingAssignment};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Shift,
    Ring,
    Sppm,
}

/// Mixer Hamiltonians. `shift` and `ring` sum over every listed variable;
/// `sppm` takes exactly two variables of equal dimension.
pub fn mixer_generator(kind: GeneratorKind, domain: &Arc<DomainSpec>, vars: &[String]) -> Result<OperatorPoly> {
    let idx: Vec<usize> = vars.iter().map(|v| domain.index_of(v)).collect::<Result<_>>()?;
    for &v in &idx {
        if domain.d(v) < 2 {
            return Err(Error::InvalidInstance(format!("mixer generator needs d >= 2, `{}` has d = {}", domain.vars()[v].id, domain.d(v))));
        }
    }
    let sym = |v: usize, k: usize, l: usize| OperatorPoly::from_factor(domain, v, Primitive::Symmetric(k, l).to_local(domain.d(v)).unwrap());
    match kind {
        GeneratorKind::Shift | GeneratorKind::Ring => {
            let mut out = OperatorPoly::zero(domain);
            for &v in &idx {
                let d = domain.d(v);
                for k in 1..d {
                    out = out.add(&sym(v, k, k - 1))?;
                }
                if kind == GeneratorKind::Ring && d > 2 {
                    out = out.add(&sym(v, 0, d - 1))?;
                }
            }
            Ok(out)
        }
        GeneratorKind::Sppm => {
            let [a, b] = idx[..] else {
                return Err(Error::InvalidInstance("sppm takes exactly two variables".into()));
            };
            let d = domain.d(a);
            if domain.d(b) != d || a == b {
                return Err(Error::InvalidInstance("sppm needs two distinct variables of equal d".into()));
            }
            let one = |k: usize, l: usize, d: usize| Primitive::OneWay(k, l).to_local(d).unwrap();
            let mut terms = Vec::new();
            for k in 1..d {
                for (x, y) in [(k, k - 1), (k - 1, k)] {
                    let factors = [(a, one(x, y, d)), (b, one(y, x, d))].into_iter().collect();
                    terms.push(ProductTerm { coeff: c(1.0), factors });
                }
            }
            Ok(OperatorPoly::from_terms(domain, terms))
        }
    }
}

/// First-order product formula of `exp(-i beta G)` after lowering.
pub fn trotter_mixer(generator: &OperatorPoly, asg: &EncodingAssignment, beta: f64) -> Result<Circuit> {
    let err = generator.hermiticity_error();
    if err > 1e-9 {
        return Err(Error::NonHermitian(err));
    }
    emit_product_formula(&lower(generator, asg)?, beta)
}
