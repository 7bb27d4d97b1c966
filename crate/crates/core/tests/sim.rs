mod common;

use common::*;
use dqir::circuit::{emit_product_formula, Circuit, Gate};
use dqir::dqir::{DomainSpec, OperatorPoly, Primitive};
use dqir::encoding::{lower, restricted_deviation, CodeSpec, EncodingAssignment};
use dqir::mixer::{mixer_generator, GeneratorKind};
use dqir::pauli::PauliPoly;
use dqir::sim::*;
use dqir::{c, Complex64};
use rand::Rng;

#[test]
fn to_dense_examples() {
    let id = DenseOperator::from_pauli(&PauliPoly::identity(2)).unwrap();
    assert_eq!(id.max_abs_diff(&DenseOperator::identity(4)), 0.0);
    let d3 = DomainSpec::uniform("x", 1, 3);
    let n = DenseOperator::from_operator(&OperatorPoly::primitive(&d3, "x0", Primitive::Number).unwrap()).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(n.mat[[i, j]], c(if i == j { i as f64 } else { 0.0 }));
        }
    }
    let mut circ = Circuit::new(2);
    circ.push(Gate::APhi { a: 0, b: 1, theta: std::f64::consts::FRAC_PI_2 });
    let u = circuit_unitary(&circ).unwrap();
    // only |00>, |11> fixed and the 01/10 swap block may be nonzero
    for i in 0..4 {
        for j in 0..4 {
            let allowed = (i == j && (i == 0 || i == 3)) || (i == 1 && j == 2) || (i == 2 && j == 1);
            if !allowed {
                assert!(u.mat[[i, j]].norm() < 1e-12, "({i},{j}) = {}", u.mat[[i, j]]);
            } else {
                assert!((u.mat[[i, j]].norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn dimension_cap() {
    let big = DomainSpec::uniform("x", 7, 4);
    let err = DenseOperator::from_operator(&OperatorPoly::identity(&big)).unwrap_err();
    assert_eq!(err.kind(), "dimension_cap");
    assert!(DenseOperator::from_pauli(&PauliPoly::identity(13)).is_err());
}

#[test]
fn restricted_equiv_examples() {
    let d4 = DomainSpec::uniform("x", 1, 4);
    let n = OperatorPoly::primitive(&d4, "x0", Primitive::Number).unwrap();
    let asg = EncodingAssignment::uniform(&d4, CodeSpec::Sb).unwrap();
    let hand = PauliPoly::from_terms(2, [("II", 1.5), ("IZ", -1.0), ("ZI", -0.5)].map(|(s, v)| (dqir::pauli::PauliString::parse(s).unwrap(), c(v))));
    assert!(restricted_deviation(&n, &hand, &asg).unwrap() < 1e-15);
    let mut bad = lower(&n, &asg).unwrap();
    bad.add_term(dqir::pauli::PauliString::parse("ZI").unwrap(), c(0.1));
    assert!(restricted_deviation(&n, &bad, &asg).unwrap() >= 0.05);
}

fn diag_job(code: CodeSpec) -> (PauliPoly, EncodingAssignment) {
    let dom = DomainSpec::uniform("x", 2, 3);
    let op = dqir::dqir::eq(&dom, "x0", "x1").unwrap()
        .add(&OperatorPoly::primitive(&dom, "x1", Primitive::value_real(&[0.3, -1.0, 2.5])).unwrap()).unwrap();
    let asg = EncodingAssignment::uniform(&dom, code).unwrap();
    (lower(&op, &asg).unwrap(), asg)
}

#[test]
fn diagonal_product_formulas_are_exact() {
    for code in [CodeSpec::Sb, CodeSpec::Gray, CodeSpec::Unary, CodeSpec::DomainWall] {
        let (h, _) = diag_job(code);
        for beta in [0.0, 0.37, 1.0, 2.9] {
            let circ = emit_product_formula(&h, beta).unwrap();
            let dev = exp_check_diagonal(&h, &circ, beta).unwrap();
            assert!(dev <= 1e-9, "{code} beta={beta}: {dev}");
            if h.n_qubits <= 6 {
                let dense = DenseOperator::from_pauli(&h).unwrap();
                assert!(exp_check(&dense, &circ, beta).unwrap() <= 1e-9);
            }
        }
        let zero = emit_product_formula(&h, 0.0).unwrap();
        assert!(exp_check_diagonal(&h, &zero, 0.0).unwrap() < 1e-12);
    }
}

#[test]
fn first_order_trotter_error_shrinks_quadratically() {
    let dom = DomainSpec::uniform("x", 1, 3);
    let g = mixer_generator(GeneratorKind::Shift, &dom, &["x0".to_string()]).unwrap();
    let asg = EncodingAssignment::uniform(&dom, CodeSpec::Sb).unwrap();
    let h = lower(&g, &asg).unwrap();
    let dense = DenseOperator::from_pauli(&h).unwrap();
    let err = |beta: f64| exp_check(&dense, &emit_product_formula(&h, beta).unwrap(), beta).unwrap();
    let (e1, e2) = (err(0.3), err(0.15));
    assert!(e1 > 1e-4 && e2 > 0.0);
    let ratio = e1 / e2;
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    assert_eq!(err(0.0), 0.0);
}

fn random_circuit(r: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let mut circ = Circuit::new(n);
    for _ in 0..len {
        let q = r.gen_range(0..n);
        let mut o = r.gen_range(0..n);
        while o == q {
            o = r.gen_range(0..n);
        }
        let t = r.gen_range(-3.0..3.0);
        circ.push(match r.gen_range(0..8) {
            0 => Gate::Rx { q, theta: t },
            1 => Gate::Ry { q, theta: t },
            2 => Gate::Rz { q, theta: t },
            3 => Gate::H { q },
            4 => Gate::Cnot { control: q, target: o },
            5 => Gate::CRot { control: q, on: r.gen_bool(0.5), target: o, theta: t },
            6 => Gate::APhi { a: q, b: o, theta: t },
            _ => Gate::Sx { q },
        });
    }
    circ
}

#[test]
fn circuits_are_unitary_and_simulators_agree() {
    let mut r = rng();
    for n in 1..=5 {
        let circ = random_circuit(&mut r, n.max(2), 30);
        let u = circuit_unitary(&circ).unwrap();
        assert!(u.is_unitary(1e-9));
        assert!(circuit_unitary(&circ.compile()).unwrap().max_abs_diff(&u) < 1e-9);
        for y in 0..u.dim() {
            let mut s = basis_state(circ.n_qubits, y);
            simulate(&circ, &mut s);
            let sparse = simulate_sparse(&circ, y);
            for x in 0..u.dim() {
                assert!((s[x] - u.mat[[x, y]]).norm() < 1e-12);
                let sp = sparse.get(&x).copied().unwrap_or(Complex64::new(0.0, 0.0));
                assert!((sp - u.mat[[x, y]]).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn kron_order_matches_encoding_layout() {
    let mut r = rng();
    let dom = DomainSpec::new([("a", 3), ("b", 4), ("c", 2)]).unwrap();
    for codes in [vec![CodeSpec::Sb, CodeSpec::Gray, CodeSpec::Unary], vec![CodeSpec::DomainWall, CodeSpec::Sb, CodeSpec::Sb]] {
        let asg = EncodingAssignment::from_codes(&dom, codes.clone()).unwrap();
        // random non-diagonal operator
        let mut op = OperatorPoly::zero(&dom);
        for _ in 0..4 {
            let v = ["a", "b", "c"][r.gen_range(0..3)];
            let d = dom.d(dom.index_of(v).unwrap());
            let (k, l) = (r.gen_range(0..d), r.gen_range(0..d));
            let t = OperatorPoly::primitive(&dom, v, Primitive::OneWay(k, l)).unwrap().scale(Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            op = op.add(&t).unwrap();
        }
        let p = lower(&op, &asg).unwrap();
        let dense = DenseOperator::from_pauli(&p).unwrap();
        let dims = dom.dims();
        let states = all_states(&dims);
        for _ in 0..20 {
            let y = &states[r.gen_range(0..states.len())];
            let col = encode_state(&codes, &dims, y);
            for x in &states {
                let row = encode_state(&codes, &dims, x);
                assert!((dense.mat[[row, col]] - dqir_element(&op, x, y)).norm() < 1e-12);
            }
            assert_eq!(asg.encode_state(y).to_usize(), col);
        }
    }
}
