use num_complex::Complex64;

use super::gate::Gate;
use super::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{PauliPoly, PauliString};

/// Above this many terms the greedy chaining is skipped.
const GREEDY_LIMIT: usize = 4000;

fn signature(p: &PauliString) -> Vec<(usize, char)> {
    p.support().into_iter().map(|q| (q, p.letter(q))).collect()
}

fn lex_key(p: &PauliString) -> String {
    p.to_text(p.width())
}

/// CNOT pairs that cancel when `b` follows `a`.
fn shared_prefix(a: &[(usize, char)], b: &[(usize, char)]) -> usize {
    let n = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    n.saturating_sub(1)
}

fn overlap(a: &[(usize, char)], b: &[(usize, char)]) -> usize {
    a.iter().filter(|(q, _)| b.iter().any(|(r, _)| r == q)).count()
}

/// Deterministic ordering: each next term is the one sharing the longest
/// staircase prefix with the previous, then the largest support overlap,
/// then the lexicographically smallest.
pub fn order_terms(terms: &[(PauliString, f64)]) -> Vec<(PauliString, f64)> {
    let mut items: Vec<(String, Vec<(usize, char)>, PauliString, f64)> =
        terms.iter().map(|(p, v)| (lex_key(p), signature(p), p.clone(), *v)).collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    if items.len() > GREEDY_LIMIT {
        return items.into_iter().map(|t| (t.2, t.3)).collect();
    }
    let mut used = vec![false; items.len()];
    let mut out = Vec::with_capacity(items.len());
    let mut prev: Option<usize> = None;
    for _ in 0..items.len() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, it) in items.iter().enumerate() {
            if used[i] {
                continue;
            }
            let (s1, s2) = match prev {
                Some(p) => (shared_prefix(&items[p].1, &it.1), overlap(&items[p].1, &it.1)),
                None => (0, 0),
            };
            if best.map_or(true, |(_, b1, b2)| (s1, s2) > (b1, b2)) {
                best = Some((i, s1, s2));
            }
            if prev.is_none() {
                break;
            }
        }
        let (i, _, _) = best.unwrap();
        used[i] = true;
        out.push((items[i].2.clone(), items[i].3));
        prev = Some(i);
    }
    out
}

/// Real coefficients of a Hermitian Pauli polynomial.
pub fn real_terms(h: &PauliPoly) -> Result<Vec<(PauliString, f64)>> {
    let err = h.hermiticity_error();
    if err > crate::BOOL_TOL {
        return Err(Error::NonHermitian(err));
    }
    Ok(h.iter().map(|(p, v): (&PauliString, &Complex64)| (p.clone(), v.re)).collect())
}

/// One Pauli-exponential macro per term, `exp(-i beta c P)`, in the given order.
pub fn emit_product_formula_terms(ordered: &[(PauliString, f64)], beta: f64, n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for (p, v) in ordered {
        if p.is_identity() {
            c.global_phase -= beta * v;
        } else {
            c.push(Gate::PauliExp { pauli: p.clone(), theta: beta * v });
        }
    }
    c
}

/// First-order product formula for `exp(-i beta H)`, terms ordered by [`order_terms`].
/// Exact when all terms commute (e.g. diagonal `H`).
pub fn emit_product_formula(h: &PauliPoly, beta: f64) -> Result<Circuit> {
    let terms = real_terms(h)?;
    Ok(emit_product_formula_terms(&order_terms(&terms), beta, h.n_qubits))
}
