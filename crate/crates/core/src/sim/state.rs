use std::collections::HashMap;

use num_complex::Complex64;

use super::dense::{check_cap, DenseOperator};
use crate::circuit::{Circuit, Control, Gate};
use crate::error::Result;

type M2 = [[Complex64; 2]; 2];

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// 2x2 matrix of a one-qubit gate.
pub fn one_qubit_matrix(g: &Gate) -> Option<M2> {
    let i = Complex64::new(0.0, 1.0);
    let rx = |t: f64| [[cr((t / 2.0).cos()), -i * (t / 2.0).sin()], [-i * (t / 2.0).sin(), cr((t / 2.0).cos())]];
    Some(match g {
        Gate::Rx { theta, .. } => rx(*theta),
        Gate::Ry { theta, .. } => {
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            [[cr(c), cr(-s)], [cr(s), cr(c)]]
        }
        Gate::Rz { theta, .. } => [[Complex64::from_polar(1.0, -theta / 2.0), ZERO], [ZERO, Complex64::from_polar(1.0, theta / 2.0)]],
        Gate::H { .. } => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            [[cr(h), cr(h)], [cr(h), cr(-h)]]
        }
        Gate::X { .. } => [[ZERO, cr(1.0)], [cr(1.0), ZERO]],
        Gate::Sx { .. } => rx(std::f64::consts::FRAC_PI_2),
        Gate::Sxdg { .. } => rx(-std::f64::consts::FRAC_PI_2),
        _ => return None,
    })
}

fn control_mask(cs: &[Control]) -> (usize, usize) {
    let mut mask = 0;
    let mut val = 0;
    for &(q, on) in cs {
        mask |= 1 << q;
        if on {
            val |= 1 << q;
        }
    }
    (mask, val)
}

fn apply_1q(s: &mut [Complex64], q: usize, m: &M2, mask: usize, val: usize) {
    let bit = 1usize << q;
    for i in 0..s.len() {
        if i & bit == 0 && i & mask == val {
            let j = i | bit;
            let (a, b) = (s[i], s[j]);
            s[i] = m[0][0] * a + m[0][1] * b;
            s[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn apply_aphi(s: &mut [Complex64], a: usize, b: usize, theta: f64, mask: usize, val: usize) {
    let (ba, bb) = (1usize << a, 1usize << b);
    let (c, sn) = (theta.cos(), theta.sin());
    let mi = Complex64::new(0.0, -sn);
    for i in 0..s.len() {
        if i & ba == 0 && i & bb != 0 && i & mask == val {
            let j = (i | ba) & !bb;
            let (u, v) = (s[i], s[j]);
            s[i] = u * c + v * mi;
            s[j] = u * mi + v * c;
        }
    }
}

/// Apply a gate using its defining unitary (no decomposition).
pub fn apply_gate(s: &mut [Complex64], g: &Gate) {
    if let Some(m) = one_qubit_matrix(g) {
        apply_1q(s, g.qubits()[0], &m, 0, 0);
        return;
    }
    match g {
        Gate::Cnot { control, target } => {
            let (cb, tb) = (1usize << control, 1usize << target);
            for i in 0..s.len() {
                if i & cb != 0 && i & tb == 0 {
                    s.swap(i, i | tb);
                }
            }
        }
        Gate::Toffoli { c0, c1, target } => {
            let (m, tb) = ((1usize << c0) | (1 << c1), 1usize << target);
            for i in 0..s.len() {
                if i & m == m && i & tb == 0 {
                    s.swap(i, i | tb);
                }
            }
        }
        Gate::CRot { control, on, target, theta } => {
            let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let m = [[cr(sn), cr(c)], [cr(c), cr(-sn)]];
            let (mask, val) = control_mask(&[(*control, *on)]);
            apply_1q(s, *target, &m, mask, val);
        }
        Gate::Mcry { controls, target, theta } => {
            let m = one_qubit_matrix(&Gate::Ry { q: *target, theta: *theta }).unwrap();
            let (mask, val) = control_mask(controls);
            apply_1q(s, *target, &m, mask, val);
        }
        Gate::APhi { a, b, theta } => apply_aphi(s, *a, *b, *theta, 0, 0),
        Gate::CAPhi { controls, a, b, theta } => {
            let (mask, val) = control_mask(controls);
            apply_aphi(s, *a, *b, *theta, mask, val);
        }
        Gate::PauliExp { pauli, theta } => {
            let xm: usize = pauli.x.ones().iter().map(|q| 1usize << q).sum();
            let zm: usize = pauli.z.ones().iter().map(|q| 1usize << q).sum();
            let ny = (xm & zm).count_ones();
            let iy = crate::pauli::i_pow(ny);
            let (c, sn) = (theta.cos(), theta.sin());
            let old = s.to_vec();
            for (i, amp) in old.iter().enumerate() {
                let mut p = iy * amp;
                if (zm & i).count_ones() % 2 == 1 {
                    p = -p;
                }
                let j = i ^ xm;
                s[j] += Complex64::new(0.0, -sn) * p;
            }
            for (i, amp) in old.iter().enumerate() {
                s[i] += amp * (c - 1.0);
            }
        }
        _ => unreachable!("one-qubit gates handled above"),
    }
}

/// Run a circuit on a state vector in place, global phase included.
pub fn simulate(c: &Circuit, s: &mut [Complex64]) {
    assert_eq!(s.len(), 1 << c.n_qubits);
    for g in &c.gates {
        apply_gate(s, g);
    }
    let ph = Complex64::from_polar(1.0, c.global_phase);
    for v in s.iter_mut() {
        *v *= ph;
    }
}

pub fn basis_state(n: usize, idx: usize) -> Vec<Complex64> {
    let mut s = vec![ZERO; 1 << n];
    s[idx] = cr(1.0);
    s
}

/// Dense unitary of a circuit, column by column.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseOperator> {
    let dim = 1usize << c.n_qubits;
    check_cap(dim)?;
    let mut u = DenseOperator::zeros(dim);
    for y in 0..dim {
        let mut s = basis_state(c.n_qubits, y);
        simulate(c, &mut s);
        for (x, v) in s.iter().enumerate() {
            u.mat[[x, y]] = *v;
        }
    }
    Ok(u)
}

/// Run a circuit on a sparse state, expanding macros first. Cheap when the
/// circuit keeps basis states nearly basis states (diagonal evolutions).
pub fn simulate_sparse(c: &Circuit, input: usize) -> HashMap<usize, Complex64> {
    let expanded;
    let c = if c.is_primitive() {
        c
    } else {
        expanded = c.expand();
        &expanded
    };
    let mut s: HashMap<usize, Complex64> = HashMap::new();
    s.insert(input, cr(1.0));
    for g in &c.gates {
        match g {
            Gate::Cnot { control, target } => {
                s = s.into_iter().map(|(i, v)| if i >> control & 1 == 1 { (i ^ (1 << target), v) } else { (i, v) }).collect();
            }
            Gate::Rz { q, theta } => {
                for (i, v) in s.iter_mut() {
                    *v *= Complex64::from_polar(1.0, if *i >> q & 1 == 1 { theta / 2.0 } else { -theta / 2.0 });
                }
            }
            _ => {
                let m = one_qubit_matrix(g).expect("expanded circuits only hold one-qubit gates and CNOTs");
                let q = g.qubits()[0];
                let mut next: HashMap<usize, Complex64> = HashMap::with_capacity(s.len() * 2);
                for (i, v) in s {
                    let b = i >> q & 1;
                    let i0 = i & !(1 << q);
                    for out in 0..2 {
                        let a = m[out][b] * v;
                        if a.norm() != 0.0 {
                            *next.entry(i0 | (out << q)).or_default() += a;
                        }
                    }
                }
                next.retain(|_, v| v.norm() > 1e-15);
                s = next;
            }
        }
    }
    let ph = Complex64::from_polar(1.0, c.global_phase);
    s.values_mut().for_each(|v| *v *= ph);
    s
}
