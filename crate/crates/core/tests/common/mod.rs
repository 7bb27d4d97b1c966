#![allow(dead_code)]

use dqir::dqir::OperatorPoly;
use dqir::encoding::{CodeSpec, LocalCode};
use dqir::pauli::PauliPoly;
use dqir::Complex64;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const SEED: u64 = 0xD41;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Codeword of `k`, written out from the code definitions.
pub fn codeword(code: CodeSpec, k: usize) -> u64 {
    let k = k as u64;
    match code {
        CodeSpec::Sb => k,
        CodeSpec::Gray => k ^ (k >> 1),
        CodeSpec::Unary => 1 << k,
        CodeSpec::DomainWall => (1 << k) - 1,
        CodeSpec::BlockUnary { g, local } => {
            let g = g as u64;
            let w = 64 - g.leading_zeros() as u64;
            let v = k % g + 1;
            let lw = if local == LocalCode::Gray { v ^ (v >> 1) } else { v };
            lw << (k / g * w)
        }
    }
}

pub fn width(code: CodeSpec, d: usize) -> usize {
    match code {
        CodeSpec::Sb | CodeSpec::Gray => (usize::BITS - (d - 1).leading_zeros()) as usize,
        CodeSpec::Unary => d,
        CodeSpec::DomainWall => d - 1,
        CodeSpec::BlockUnary { g, .. } => d.div_ceil(g) * (usize::BITS - g.leading_zeros()) as usize,
    }
}

/// Basis index of an encoded classical state, registers concatenated.
pub fn encode_state(codes: &[CodeSpec], dims: &[usize], x: &[usize]) -> usize {
    let mut off = 0;
    let mut out = 0usize;
    for ((&c, &d), &k) in codes.iter().zip(dims).zip(x) {
        out |= (codeword(c, k) as usize) << off;
        off += width(c, d);
    }
    out
}

fn pauli_1q(letter: char, r: usize, c: usize) -> Complex64 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (letter, r, c) {
        ('I', a, b) => if a == b { one } else { z },
        ('X', a, b) => if a != b { one } else { z },
        ('Y', 0, 1) => -i,
        ('Y', 1, 0) => i,
        ('Y', _, _) => z,
        ('Z', 0, 0) => one,
        ('Z', 1, 1) => -one,
        _ => z,
    }
}

/// `<row|P|col>` from per-qubit 2x2 matrices.
pub fn pauli_element(p: &PauliPoly, row: usize, col: usize) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (s, v) in p.iter() {
        let mut e = *v;
        let w = s.width().max(usize::BITS as usize - (row | col).leading_zeros() as usize);
        for q in 0..w {
            e *= pauli_1q(s.letter(q), row >> q & 1, col >> q & 1);
            if e.norm() == 0.0 {
                break;
            }
        }
        total += e;
    }
    total
}

/// `<x|O|y>` straight from the stored factors.
pub fn dqir_element(op: &OperatorPoly, x: &[usize], y: &[usize]) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for t in op.terms() {
        let mut e = t.coeff;
        for v in 0..x.len() {
            e *= match t.factors.get(&v) {
                Some(f) => f.get(x[v], y[v]),
                None => Complex64::new(if x[v] == y[v] { 1.0 } else { 0.0 }, 0.0),
            };
        }
        total += e;
    }
    total
}

pub fn all_states(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        out = out.into_iter().flat_map(|s| (0..d).map(move |k| { let mut t = s.clone(); t.push(k); t })).collect();
    }
    out
}

/// Max deviation over valid codeword pairs, computed without the crate's lowering helpers.
pub fn restricted_oracle(op: &OperatorPoly, p: &PauliPoly, codes: &[CodeSpec]) -> f64 {
    let dims = op.domain().dims();
    let states = all_states(&dims);
    let idx: Vec<usize> = states.iter().map(|x| encode_state(codes, &dims, x)).collect();
    let diag = op.is_diagonal() && p.is_diagonal();
    let mut worst = 0.0f64;
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            if diag && i != j {
                continue;
            }
            let a = dqir_element(op, x, y);
            let b = pauli_element(p, idx[i], idx[j]);
            worst = worst.max((a - b).norm());
        }
    }
    worst
}
