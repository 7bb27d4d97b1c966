use std::f64::consts::PI;

use super::gate::{Control, Gate};
use super::product::{emit_product_formula_terms, order_terms};
use super::Circuit;
use crate::pauli::PauliString;

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Expand one gate into one-qubit gates and CNOTs on an `n`-qubit register.
pub fn decompose(g: &Gate, n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    match g {
        _ if g.is_primitive() => c.push(g.clone()),
        Gate::CRot { control, on, target, theta } => {
            let (ct, t) = (*control, *target);
            c.push(Gate::Ry { q: t, theta: theta / 2.0 });
            c.push(Gate::Cnot { control: ct, target: t });
            if !on {
                c.push(Gate::X { q: t });
            }
            c.push(Gate::Ry { q: t, theta: -theta / 2.0 });
        }
        Gate::Mcry { controls, target, theta } => mcry(&mut c, controls, *target, *theta),
        Gate::APhi { a, b, theta } => {
            let (a, b) = (*a, *b);
            c.push(Gate::Sx { q: a });
            c.push(Gate::Sx { q: b });
            c.push(Gate::Cnot { control: a, target: b });
            c.push(Gate::Rx { q: a, theta: *theta });
            c.push(Gate::Rz { q: b, theta: *theta });
            c.push(Gate::Cnot { control: a, target: b });
            c.push(Gate::Sxdg { q: a });
            c.push(Gate::Sxdg { q: b });
        }
        Gate::CAPhi { controls, a, b, theta } => {
            if controls.is_empty() {
                return decompose(&Gate::APhi { a: *a, b: *b, theta: *theta }, n);
            }
            // commuting expansion of (control projector) x (XX + YY)
            let k = controls.len();
            let mut terms = Vec::with_capacity(2 << k);
            for s in 0..(1usize << k) {
                let mut coeff = 1.0 / (1u64 << k) as f64;
                let mut base = PauliString::identity();
                for (m, (q, on)) in controls.iter().enumerate() {
                    if s >> m & 1 == 1 {
                        base.set(*q, 'Z');
                        if *on {
                            coeff = -coeff;
                        }
                    }
                }
                for letter in ['X', 'Y'] {
                    let mut p = base.clone();
                    p.set(*a, letter);
                    p.set(*b, letter);
                    terms.push((p, coeff));
                }
            }
            let ordered = order_terms(&terms);
            let pf = emit_product_formula_terms(&ordered, theta / 2.0, n);
            c.append(&pf.expand());
        }
        Gate::Toffoli { c0, c1, target } => {
            let (a, b, t) = (*c0, *c1, *target);
            let tg = |q| Gate::Rz { q, theta: PI / 4.0 };
            let tdg = |q| Gate::Rz { q, theta: -PI / 4.0 };
            c.push(Gate::H { q: t });
            c.push(Gate::Cnot { control: b, target: t });
            c.push(tdg(t));
            c.push(Gate::Cnot { control: a, target: t });
            c.push(tg(t));
            c.push(Gate::Cnot { control: b, target: t });
            c.push(tdg(t));
            c.push(Gate::Cnot { control: a, target: t });
            c.push(tg(b));
            c.push(tg(t));
            c.push(Gate::H { q: t });
            c.push(Gate::Cnot { control: a, target: b });
            c.push(tg(a));
            c.push(tdg(b));
            c.push(Gate::Cnot { control: a, target: b });
            // T = e^{i pi/8} Rz(pi/4): four T and three T-dagger
            c.global_phase += PI / 8.0;
        }
        Gate::PauliExp { pauli, theta } => pauli_exp(&mut c, pauli, *theta),
        _ => unreachable!(),
    }
    c
}

/// Uniformly-controlled Ry with one active control pattern.
fn mcry(c: &mut Circuit, controls: &[Control], target: usize, theta: f64) {
    let k = controls.len();
    if k == 0 {
        c.push(Gate::Ry { q: target, theta });
        return;
    }
    let pattern: usize = controls.iter().enumerate().map(|(m, (_, on))| (*on as usize) << m).sum();
    let n = 1usize << k;
    for i in 0..n {
        let sign = if (pattern & gray(i)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        c.push(Gate::Ry { q: target, theta: sign * theta / n as f64 });
        let flip = gray(i) ^ gray((i + 1) % n);
        let m = flip.trailing_zeros() as usize;
        c.push(Gate::Cnot { control: controls[m].0, target });
    }
}

/// Basis change, CNOT staircase, `Rz`, and the mirror image.
fn pauli_exp(c: &mut Circuit, p: &PauliString, theta: f64) {
    let support = p.support();
    if support.is_empty() {
        c.global_phase -= theta;
        return;
    }
    for &q in &support {
        match p.letter(q) {
            'X' => c.push(Gate::H { q }),
            'Y' => c.push(Gate::Sx { q }),
            _ => {}
        }
    }
    for w in support.windows(2) {
        c.push(Gate::Cnot { control: w[0], target: w[1] });
    }
    c.push(Gate::Rz { q: *support.last().unwrap(), theta: 2.0 * theta });
    for w in support.windows(2).rev() {
        c.push(Gate::Cnot { control: w[0], target: w[1] });
    }
    for &q in &support {
        match p.letter(q) {
            'X' => c.push(Gate::H { q }),
            'Y' => c.push(Gate::Sxdg { q }),
            _ => {}
        }
    }
}
