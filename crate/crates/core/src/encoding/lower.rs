use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::assignment::EncodingAssignment;
use super::code::CodeTable;
use crate::dqir::{LocalOp, OperatorPoly};
use crate::error::Result;
use crate::pauli::{BitString, PauliPoly, PauliString};

type Terms = Vec<(PauliString, Complex64)>;

/// `|b><b'|` on one qubit as Pauli terms.
fn one_qubit(q: usize, b: bool, bp: bool) -> [(PauliString, Complex64); 2] {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    let id = PauliString::identity();
    match (b, bp) {
        (false, false) => [(id, half), (PauliString::single(q, 'Z'), half)],
        (true, true) => [(id, half), (PauliString::single(q, 'Z'), -half)],
        (false, true) => [(PauliString::single(q, 'X'), half), (PauliString::single(q, 'Y'), ihalf)],
        (true, false) => [(PauliString::single(q, 'X'), half), (PauliString::single(q, 'Y'), -ihalf)],
    }
}

/// Tensor product of terms acting on disjoint qubits.
fn disjoint_product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (sa, va) in a {
        for (sb, vb) in b {
            out.push((PauliString { x: sa.x.or(&sb.x), z: sa.z.or(&sb.z) }, va * vb));
        }
    }
    out
}

/// Pauli expansion of `|bits_out><bits_in|` restricted to `qubits` (absolute indices).
pub fn outer_product_terms(qubits: &[usize], bits_out: &BitString, bits_in: &BitString) -> Terms {
    let mut acc: Terms = vec![(PauliString::identity(), Complex64::new(1.0, 0.0))];
    for &q in qubits {
        let pair = one_qubit(q, bits_out.get(q), bits_in.get(q));
        acc = disjoint_product(&acc, &pair.to_vec());
    }
    acc
}

/// `|k><l|` of one variable, placed at `offset`.
fn lower_entry(table: &CodeTable, k: usize, l: usize, offset: usize) -> Result<Terms> {
    let mask = table.code.bitmask(k, l, table.d)?;
    let qubits: Vec<usize> = mask.iter().map(|q| q + offset).collect();
    let out = BitString::from_word_at(table.words[k], offset);
    let inp = BitString::from_word_at(table.words[l], offset);
    Ok(outer_product_terms(&qubits, &out, &inp))
}

fn lower_factor(table: &CodeTable, f: &LocalOp, offset: usize) -> Result<Terms> {
    let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
    for (k, l, v) in f.nonzeros() {
        for (s, c) in lower_entry(table, k, l, offset)? {
            *acc.entry(s).or_default() += c * v;
        }
    }
    let mut terms: Terms = acc.into_iter().filter(|(_, v)| v.norm() != 0.0).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(terms)
}

/// Entrywise lowering of a DQIR operator. Exact on encoded valid states.
pub fn lower(op: &OperatorPoly, asg: &EncodingAssignment) -> Result<PauliPoly> {
    asg.check_domain(op.domain())?;
    let mut cache: HashMap<(usize, LocalOp), Arc<Terms>> = HashMap::new();
    let mut out = PauliPoly::zero(asg.n_qubits());
    for t in op.terms() {
        let mut acc: Terms = vec![(PauliString::identity(), t.coeff)];
        for (&v, f) in &t.factors {
            let key = (v, f.clone());
            let lowered = match cache.get(&key) {
                Some(l) => l.clone(),
                None => {
                    let l = Arc::new(lower_factor(asg.table(v), f, asg.offset(v))?);
                    cache.insert(key, l.clone());
                    l
                }
            };
            acc = disjoint_product(&acc, &lowered);
        }
        for (s, c) in acc {
            out.add_term(s, c);
        }
    }
    out.prune();
    Ok(out)
}

/// Max-abs deviation between `op` and `lowered` over encoded valid states.
pub fn restricted_deviation(op: &OperatorPoly, lowered: &PauliPoly, asg: &EncodingAssignment) -> Result<f64> {
    asg.check_domain(op.domain())?;
    let mut worst = 0.0f64;
    for y in op.domain().states() {
        let by = asg.encode_state(&y);
        let want = op.apply_basis(&y);
        let mut got: HashMap<BitString, Complex64> = HashMap::new();
        for (b, a) in lowered.apply_basis(&by) {
            *got.entry(b).or_default() += a;
        }
        for (x, a) in &want {
            let g = got.get(&asg.encode_state(x)).copied().unwrap_or_default();
            worst = worst.max((g - a).norm());
        }
        for (b, g) in &got {
            if let Some(x) = asg.decode_state(b) {
                if !want.contains_key(&x) {
                    worst = worst.max(g.norm());
                }
            }
        }
    }
    Ok(worst)
}

/// True when `lowered` matches `op` on every pair of valid codewords within `tol`.
pub fn restricted_equiv(op: &OperatorPoly, lowered: &PauliPoly, asg: &EncodingAssignment, tol: f64) -> Result<bool> {
    Ok(restricted_deviation(op, lowered, asg)? <= tol)
}
