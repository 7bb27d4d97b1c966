use dqir::circuit::{decompose, emit_product_formula, Circuit, Gate};
use dqir::pauli::{PauliPoly, PauliString};
use dqir::sim::{circuit_unitary, exp_check, exp_check_diagonal, DenseOperator};
use dqir::{c, Complex64};
use proptest::prelude::*;

fn reference(g: &Gate, n: usize) -> DenseOperator {
    let mut circ = Circuit::new(n);
    circ.push(g.clone());
    circuit_unitary(&circ).unwrap()
}

fn decomposed(g: &Gate, n: usize) -> DenseOperator {
    let d = decompose(g, n);
    assert!(d.is_primitive());
    circuit_unitary(&d).unwrap()
}

fn macro_gates(theta: f64) -> Vec<(Gate, usize)> {
    vec![
        (Gate::CRot { control: 0, on: true, target: 1, theta }, 2),
        (Gate::CRot { control: 1, on: false, target: 0, theta }, 2),
        (Gate::Mcry { controls: vec![], target: 0, theta }, 1),
        (Gate::Mcry { controls: vec![(0, true)], target: 1, theta }, 2),
        (Gate::Mcry { controls: vec![(2, false), (0, true)], target: 1, theta }, 3),
        (Gate::Mcry { controls: vec![(0, false), (1, false), (3, true)], target: 2, theta }, 4),
        (Gate::APhi { a: 0, b: 1, theta }, 2),
        (Gate::APhi { a: 2, b: 0, theta }, 3),
        (Gate::CAPhi { controls: vec![(1, true)], a: 0, b: 2, theta }, 3),
        (Gate::CAPhi { controls: vec![(1, false), (3, true)], a: 2, b: 0, theta }, 4),
        (Gate::Toffoli { c0: 0, c1: 2, target: 1 }, 3),
        (Gate::PauliExp { pauli: PauliString::parse("XYZ").unwrap(), theta }, 3),
        (Gate::PauliExp { pauli: PauliString::parse("YIX").unwrap(), theta }, 3),
    ]
}

#[test]
fn decompositions_match_reference_unitaries() {
    for theta in [0.0, 0.3, 1.7, -2.4] {
        for (g, n) in macro_gates(theta) {
            let dev = reference(&g, n).max_abs_diff(&decomposed(&g, n));
            assert!(dev < 1e-12, "{g} deviates by {dev}");
        }
    }
}

#[test]
fn decomposition_depth_ceilings() {
    let crot = Gate::CRot { control: 0, on: true, target: 1, theta: 0.4 };
    assert_eq!(decompose(&crot, 2).depth(), 3);
    let crot_off = Gate::CRot { control: 0, on: false, target: 1, theta: 0.4 };
    assert_eq!(decompose(&crot_off, 2).depth(), 3);
    assert_eq!(decompose(&Gate::APhi { a: 0, b: 1, theta: 0.4 }, 2).depth(), 5);
    let mcry3 = Gate::Mcry { controls: vec![(0, true), (1, false)], target: 2, theta: 0.4 };
    assert!(decompose(&mcry3, 3).depth() <= 8);
    for k in 0..4 {
        let g = Gate::Mcry { controls: (0..k).map(|q| (q, q % 2 == 0)).collect(), target: k, theta: 0.4 };
        assert!(decompose(&g, k + 1).depth() <= 1 << (k + 1));
    }
    assert!(decompose(&Gate::Toffoli { c0: 0, c1: 1, target: 2 }, 3).depth() <= 12);
}

#[test]
fn zz_exponential_has_depth_three() {
    let g = Gate::PauliExp { pauli: PauliString::parse("ZZ").unwrap(), theta: 0.2 };
    let d = decompose(&g, 2);
    assert_eq!(d.cnot_count(), 2);
    assert_eq!(d.depth(), 3);
}

#[test]
fn controlled_ry_mixes_expected_pairs() {
    // target qubit 2, off-control on qubit 1
    let g = Gate::Mcry { controls: vec![(1, false)], target: 2, theta: 0.7345 };
    let u = reference(&g, 3);
    let mut edges = vec![];
    for x in 0..8 {
        for y in x + 1..8 {
            if u.mat[[x, y]].norm() > 1e-10 || u.mat[[y, x]].norm() > 1e-10 {
                edges.push((x, y));
            }
        }
    }
    assert_eq!(edges, vec![(0, 4), (1, 5)]);
}

#[test]
fn diagonal_product_formula_is_exact() {
    let mut h = PauliPoly::zero(3);
    h.add_term(PauliString::parse("ZZI").unwrap(), c(0.7));
    h.add_term(PauliString::parse("IZZ").unwrap(), c(-0.2));
    h.add_term(PauliString::parse("ZIZ").unwrap(), c(1.1));
    h.add_term(PauliString::parse("ZII").unwrap(), c(0.5));
    h.add_term(PauliString::identity(), c(2.0));
    for beta in [0.1, 0.9] {
        let circ = emit_product_formula(&h, beta).unwrap();
        let dense = DenseOperator::from_pauli(&h).unwrap();
        assert!(exp_check(&dense, &circ, beta).unwrap() < 1e-12);
        assert!(exp_check_diagonal(&h, &circ, beta).unwrap() < 1e-12);
    }
}

#[test]
fn non_hermitian_rejected() {
    let mut h = PauliPoly::zero(1);
    h.add_term(PauliString::parse("X").unwrap(), Complex64::new(0.0, 1.0));
    assert!(emit_product_formula(&h, 0.1).is_err());
}

#[test]
fn invalid_gates_rejected() {
    assert!(Gate::Cnot { control: 1, target: 1 }.validate(2).is_err());
    assert!(Gate::Rx { q: 3, theta: 0.1 }.validate(2).is_err());
    assert!(Gate::Rx { q: 0, theta: f64::NAN }.validate(2).is_err());
}

#[test]
fn circuit_json_round_trip() {
    let mut circ = Circuit::new(4);
    for (g, _) in macro_gates(0.25) {
        circ.push(g);
    }
    circ.global_phase = 0.125;
    let j = serde_json::to_string(&circ.to_json()).unwrap();
    let back = Circuit::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, circ);
}

#[test]
fn cancellation_keeps_unitary() {
    let mut h = PauliPoly::zero(4);
    for s in ["ZZZI", "ZZIZ", "ZZZZ", "XXII", "XXZI", "IYYZ", "ZIIZ"] {
        h.add_term(PauliString::parse(s).unwrap(), c(0.3));
    }
    let circ = emit_product_formula(&h, 0.4).unwrap();
    let full = circ.expand();
    let opt = circ.compile();
    assert!(opt.gates.len() < full.gates.len());
    let dev = circuit_unitary(&full).unwrap().max_abs_diff(&circuit_unitary(&opt).unwrap());
    assert!(dev < 1e-12);
}

proptest! {
    #[test]
    fn depth_structure_independent_of_angle(beta in -3.0f64..3.0) {
        let mut h = PauliPoly::zero(3);
        for s in ["ZZI", "XIZ", "YYI", "IZZ"] {
            h.add_term(PauliString::parse(s).unwrap(), c(0.6));
        }
        let a = emit_product_formula(&h, beta).unwrap().compile();
        let b = emit_product_formula(&h, 0.0).unwrap().compile();
        prop_assert_eq!(a.depth(), b.depth());
        prop_assert_eq!(a.gates.len(), b.gates.len());
    }
}
