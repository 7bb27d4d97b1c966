mod common;

use common::*;
use dqir::dqir::*;
use dqir::sim::DenseOperator;
use dqir::{c, Complex64};
use proptest::prelude::*;

fn diag_values(op: &OperatorPoly) -> Vec<(Vec<usize>, f64)> {
    all_states(&op.domain().dims()).into_iter().map(|x| {
        let v = dqir_element(op, &x, &x);
        (x, v.re)
    }).collect()
}

fn assert_diag(op: &OperatorPoly, f: impl Fn(&[usize]) -> f64) {
    assert!(op.is_diagonal());
    for (x, v) in diag_values(op) {
        assert!((v - f(&x)).abs() < 1e-12, "{x:?}: {v} vs {}", f(&x));
    }
}

#[test]
fn primitives() {
    let d6 = DomainSpec::uniform("x", 1, 6);
    let p2 = OperatorPoly::indicator(&d6, "x0", 2).unwrap();
    assert_diag(&p2, |x| if x[0] == 2 { 1.0 } else { 0.0 });
    assert_eq!(OperatorPoly::indicator(&d6, "x0", 6).unwrap_err().kind(), "level_out_of_range");

    let d4 = DomainSpec::uniform("x", 1, 4);
    let v = OperatorPoly::primitive(&d4, "x0", Primitive::value_real(&[0.0, 1.0, 2.0, 3.0])).unwrap();
    let n = OperatorPoly::primitive(&d4, "x0", Primitive::Number).unwrap();
    assert_eq!(v, n);

    let d3 = DomainSpec::uniform("x", 1, 3);
    let t = OperatorPoly::primitive(&d3, "x0", Primitive::Symmetric(0, 2)).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            let want = if (a, b) == (0, 2) || (a, b) == (2, 0) { 1.0 } else { 0.0 };
            assert_eq!(dqir_element(&t, &[a], &[b]), c(want));
        }
    }
    assert_eq!(t.terms()[0].factors[&0].classify(), Primitive::Symmetric(0, 2));
}

#[test]
fn algebra() {
    let d3 = DomainSpec::uniform("x", 1, 3);
    let p = |k| OperatorPoly::indicator(&d3, "x0", k).unwrap();
    assert!(p(1).mul(&p(2)).unwrap().is_zero());
    assert_eq!(p(1).mul(&p(1)).unwrap(), p(1));
    let n = OperatorPoly::primitive(&d3, "x0", Primitive::Number).unwrap();
    let want = OperatorPoly::primitive(&d3, "x0", Primitive::value_real(&[0.0, 1.0, 4.0])).unwrap();
    assert_eq!(n.mul(&n).unwrap(), want);
    let other = DomainSpec::uniform("y", 1, 3);
    assert_eq!(n.add(&OperatorPoly::identity(&other)).unwrap_err().kind(), "domain_mismatch");
    let one_way = OperatorPoly::primitive(&d3, "x0", Primitive::OneWay(0, 1)).unwrap().scale(Complex64::new(0.0, 2.0));
    let adj = one_way.adjoint();
    assert_eq!(dqir_element(&adj, &[1], &[0]), Complex64::new(0.0, -2.0));
    assert_eq!(adj.adjoint(), one_way);
}

#[test]
fn simplify_examples() {
    let d4 = DomainSpec::uniform("x", 1, 4);
    let p0 = OperatorPoly::indicator(&d4, "x0", 0).unwrap();
    let two = p0.add(&p0).unwrap();
    assert_eq!(two.len(), 1);
    assert_eq!(two.terms()[0].coeff, c(2.0));
    assert!(p0.sub(&p0).unwrap().is_zero());
    let all: Vec<OperatorPoly> = (0..4).map(|k| OperatorPoly::indicator(&d4, "x0", k).unwrap()).collect();
    let s = OperatorPoly::sum(&d4, &all).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.terms()[0].factors[&0].classify(), Primitive::Value(vec![c(1.0); 4]));
    assert_eq!(DenseOperator::from_operator(&s).unwrap().max_abs_diff(&DenseOperator::identity(4)), 0.0);
}

#[test]
fn boolean_rules() {
    let dom = DomainSpec::uniform("x", 2, 2);
    let f = OperatorPoly::indicator(&dom, "x0", 0).unwrap();
    let g = OperatorPoly::indicator(&dom, "x1", 0).unwrap();
    let not0 = compose_bool(BoolOp::Not, &OperatorPoly::zero(&dom), None).unwrap();
    assert_eq!(not0, OperatorPoly::identity(&dom));
    // states (x0, x1): xor is 1 where exactly one is 0
    let xor = compose_bool(BoolOp::Xor, &f, Some(&g)).unwrap();
    assert_diag(&xor, |x| if (x[0] == 0) != (x[1] == 0) { 1.0 } else { 0.0 });
    let f1 = OperatorPoly::indicator(&dom, "x0", 1).unwrap();
    assert!(compose_bool(BoolOp::And, &f, Some(&f1)).unwrap().is_zero());
    let n = OperatorPoly::primitive(&dom, "x0", Primitive::value_real(&[0.0, 2.0])).unwrap();
    assert_eq!(compose_bool(BoolOp::Or, &n, Some(&g)).unwrap_err().kind(), "not_boolean");
    let lin = compose_bool(BoolOp::Linear(c(2.0), c(-1.0)), &f, Some(&g)).unwrap();
    assert_diag(&lin, |x| 2.0 * (x[0] == 0) as u8 as f64 - (x[1] == 0) as u8 as f64);
}

#[test]
fn named_functions() {
    let d3 = DomainSpec::uniform("x", 2, 3);
    assert_diag(&eq(&d3, "x0", "x1").unwrap(), |x| (x[0] == x[1]) as u8 as f64);
    let three = DomainSpec::uniform("x", 3, 2);
    assert!(all_different(&three, &["x0", "x1", "x2"]).unwrap().is_zero());
    let three3 = DomainSpec::uniform("x", 3, 3);
    assert_diag(&all_different(&three3, &["x0", "x1", "x2"]).unwrap(), |x| (x[0] != x[1] && x[1] != x[2] && x[0] != x[2]) as u8 as f64);
    assert_diag(&all_equal(&three3, &["x0", "x1", "x2"]).unwrap(), |x| (x[0] == x[1] && x[1] == x[2]) as u8 as f64);
    assert_diag(&count_nonzero(&three3, &["x0", "x1", "x2"]).unwrap(), |x| x.iter().filter(|&&k| k != 0).count() as f64);
    let two = DomainSpec::uniform("x", 2, 2);
    let pd = proper_coloring(&two, &[("x0", "x1")]).unwrap();
    assert_eq!(dqir_element(&pd, &[0, 1], &[0, 1]), c(1.0));
    assert_eq!(proper_coloring(&two, &[("x0", "zz")]).unwrap_err().kind(), "unknown_variable");
    // mixed domains: EQ only over shared levels
    let mixed = DomainSpec::new([("a", 2), ("b", 4)]).unwrap();
    assert_diag(&eq(&mixed, "a", "b").unwrap(), |x| (x[0] == x[1]) as u8 as f64);
}

fn dense(op: &OperatorPoly) -> DenseOperator {
    let states = all_states(&op.domain().dims());
    let mut m = DenseOperator::zeros(states.len());
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            m.mat[[i, j]] = dqir_element(op, x, y);
        }
    }
    m
}

#[test]
fn controlled_generators() {
    let dom = DomainSpec::new([("c", 3), ("t", 3)]).unwrap();
    let h = OperatorPoly::primitive(&dom, "t", Primitive::Symmetric(0, 1)).unwrap();
    let zero = controlled_generator(&OperatorPoly::zero(&dom), &h).unwrap();
    assert!(zero.is_zero());
    let f = OperatorPoly::indicator(&dom, "c", 1).unwrap();
    let gen = controlled_generator(&f, &h).unwrap();
    let phi = 0.7;
    let u = dense(&gen).exp_i(phi);
    let local = dense(&h).exp_i(phi);
    // all_states order: first variable most significant
    for y in 0..9 {
        for x in 0..9 {
            let (cx, cy) = (x / 3, y / 3);
            let want = if cx != cy {
                c(0.0)
            } else if cx == 1 {
                local.mat[[x, y]]
            } else {
                c((x == y) as u8 as f64)
            };
            assert!((u.mat[[x, y]] - want).norm() < 1e-12);
        }
    }
    assert_eq!(controlled_generator(&f, &OperatorPoly::indicator(&dom, "c", 0).unwrap()).unwrap_err().kind(), "overlapping_support");
}

#[test]
fn compute_into_register_swaps() {
    let dom = DomainSpec::new([("x", 2), ("r", 2)]).unwrap();
    let f = OperatorPoly::indicator(&dom, "x", 1).unwrap();
    let gen = compute_into_register(&f, "r", &[1, 0]).unwrap();
    let u = dense(&gen).exp_i(std::f64::consts::FRAC_PI_2);
    let phase = u.mat[[0, 0]];
    for x in 0..2 {
        for a in 0..2 {
            let col = 2 * x + a;
            let out = 2 * x + if x == 1 { 1 - a } else { a };
            assert!((u.mat[[out, col]] - phase).norm() < 1e-12);
        }
    }
    let dom3 = DomainSpec::uniform("x", 1, 4);
    let perm = [2, 0, 3, 1];
    let u = dense(&permutation_generator(&dom3, "x0", &perm).unwrap()).exp_i(std::f64::consts::FRAC_PI_2);
    for k in 0..4 {
        assert!((u.mat[[perm[k], k]] - c(1.0)).norm() < 1e-12);
    }
}

#[test]
fn json_round_trip_examples() {
    let dom = DomainSpec::new([("a", 3), ("b", 2)]).unwrap();
    let op = OperatorPoly::primitive(&dom, "a", Primitive::OneWay(0, 2)).unwrap().scale(Complex64::new(0.1, -1.0 / 3.0))
        .add(&eq(&dom, "a", "b").unwrap()).unwrap()
        .add(&OperatorPoly::primitive(&dom, "a", Primitive::General(vec![vec![c(0.5), c(1e-7), c(0.0)], vec![c(0.0); 3], vec![c(std::f64::consts::PI), c(0.0), c(2.0)]])).unwrap()).unwrap();
    let text = op.to_json_string();
    let back = OperatorPoly::from_json_str(&text).unwrap();
    assert_eq!(back, op);
    assert_eq!(back.to_json_string(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplify_idempotent_and_matrix_preserving(
        terms in prop::collection::vec((0usize..3, 0usize..3, 0usize..3, -3.0f64..3.0, any::<bool>()), 1..8)
    ) {
        let dom = DomainSpec::uniform("x", 2, 3);
        let mut raw = Vec::new();
        for &(k, l, m, coef, two) in &terms {
            let mut factors = std::collections::BTreeMap::new();
            factors.insert(0, Primitive::OneWay(k, l).to_local(3).unwrap());
            if two {
                factors.insert(1, Primitive::Indicator(m).to_local(3).unwrap());
            }
            raw.push(ProductTerm { coeff: c(coef), factors });
        }
        let op = OperatorPoly::from_terms(&dom, raw.clone());
        prop_assert_eq!(op.simplify(), op.clone());
        // Oracle: sum of the raw terms, entrywise.
        for x in all_states(&[3, 3]) {
            for y in all_states(&[3, 3]) {
                let mut want = c(0.0);
                for t in &raw {
                    let mut e = t.coeff;
                    for v in 0..2 {
                        e *= t.factors.get(&v).map_or(c((x[v] == y[v]) as u8 as f64), |f| f.get(x[v], y[v]));
                    }
                    want += e;
                }
                prop_assert!((dqir_element(&op, &x, &y) - want).norm() < 1e-12);
            }
        }
        prop_assert_eq!(op.adjoint().adjoint(), op.clone());
        let back = OperatorPoly::from_json_str(&op.to_json_string()).unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn boolean_composition_matches_truth_tables(
        fs in prop::collection::vec(0usize..3, 0..4), gs in prop::collection::vec(0usize..3, 0..4),
    ) {
        let dom = DomainSpec::uniform("x", 2, 3);
        let ind = |ks: &[usize], v: &str| {
            let mut ks = ks.to_vec();
            ks.sort();
            ks.dedup();
            let parts: Vec<OperatorPoly> = ks.iter().map(|&k| OperatorPoly::indicator(&dom, v, k).unwrap()).collect();
            OperatorPoly::sum(&dom, &parts).unwrap()
        };
        let (f, g) = (ind(&fs, "x0"), ind(&gs, "x1"));
        let fv = |x: &[usize]| fs.contains(&x[0]);
        let gv = |x: &[usize]| gs.contains(&x[1]);
        let table: [(BoolOp, fn(bool, bool) -> bool); 4] = [
            (BoolOp::And, |a, b| a && b), (BoolOp::Or, |a, b| a || b), (BoolOp::Xor, |a, b| a != b), (BoolOp::Implies, |a, b| !a || b),
        ];
        for (op, rule) in table {
            let h = compose_bool(op, &f, Some(&g)).unwrap();
            for (x, v) in diag_values(&h) {
                prop_assert_eq!(v, rule(fv(&x), gv(&x)) as u8 as f64);
            }
        }
        let h = compose_bool(BoolOp::Not, &f, None).unwrap();
        for (x, v) in diag_values(&h) {
            prop_assert_eq!(v, (!fv(&x)) as u8 as f64);
        }
    }

    #[test]
    fn eq_is_a_projector(d0 in 2usize..5, d1 in 2usize..5) {
        let dom = DomainSpec::new([("a", d0), ("b", d1)]).unwrap();
        let e = eq(&dom, "a", "b").unwrap();
        let m = dense(&e);
        prop_assert!(m.matmul(&m).max_abs_diff(&m) < 1e-12);
    }
}
