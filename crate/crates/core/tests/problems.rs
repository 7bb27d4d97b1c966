mod common;

use common::*;
use dqir::dqir::OperatorPoly;
use dqir::problems::{feasibility_projector, FeasibilityKind, ProblemInstance};
use rand::Rng;

fn value(op: &OperatorPoly, x: &[usize]) -> f64 {
    let v = dqir_element(op, x, x);
    assert!(v.im.abs() < 1e-12);
    v.re
}

fn check_all(inst: &ProblemInstance, oracle: impl Fn(&[usize]) -> f64) {
    let h = inst.cost().unwrap();
    assert!(h.is_diagonal() && h.is_hermitian());
    let dims = h.domain().dims();
    for x in all_states(&dims) {
        let (got, want) = (value(&h, &x), oracle(&x));
        assert!((got - want).abs() < 1e-9, "{} at {x:?}: {got} vs {want}", inst.kind());
    }
}

fn coloring(n: usize, edges: &[(usize, usize)], colors: usize) -> ProblemInstance {
    ProblemInstance::Coloring { num_nodes: n, edges: edges.to_vec(), colors }
}

#[test]
fn coloring_examples_and_oracle() {
    let tri = [(0, 1), (1, 2), (0, 2)];
    let h = coloring(3, &tri, 3).cost().unwrap();
    assert_eq!(value(&h, &[0, 1, 2]), 0.0);
    let h2 = coloring(3, &tri, 2).cost().unwrap();
    let min = all_states(&[2, 2, 2]).iter().map(|x| value(&h2, x)).fold(f64::INFINITY, f64::min);
    assert_eq!(min, 1.0);
    assert_eq!(value(&coloring(2, &[(0, 1)], 2).cost().unwrap(), &[0, 0]), 1.0);
    assert_eq!(coloring(2, &[(0, 5)], 2).cost().unwrap_err().kind(), "invalid_instance");

    let mut r = rng();
    for _ in 0..6 {
        let n = r.gen_range(2..=5);
        let colors = r.gen_range(2..=4);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| r.gen_bool(0.6)).collect();
        let inst = coloring(n, &edges, colors);
        check_all(&inst, |x| edges.iter().filter(|&&(a, b)| x[a] == x[b]).count() as f64);
    }
}

fn tour(dist: &[Vec<f64>], x: &[usize]) -> f64 {
    let m = x.len();
    (0..m).map(|a| dist[x[a]][x[(a + 1) % m]]).sum()
}

fn random_distances(r: &mut impl Rng, m: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; m]; m];
    for k in 0..m {
        for l in 0..k {
            let v = r.gen_range(1..=9) as f64;
            d[k][l] = v;
            d[l][k] = v;
        }
    }
    d
}

#[test]
fn tsp_matches_tour_length() {
    let ones = vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
    let h = ProblemInstance::Tsp { distances: ones }.cost().unwrap();
    for p in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
        assert_eq!(value(&h, &p), 3.0);
    }
    assert!(value(&h, &[0, 0, 1]).is_finite());

    let mut r = rng();
    let dist = random_distances(&mut r, 4);
    let inst = ProblemInstance::Tsp { distances: dist.clone() };
    let h = inst.cost().unwrap();
    let mut perms = 0;
    for x in all_states(&[4; 4]) {
        let mut s = x.clone();
        s.sort();
        if s == [0, 1, 2, 3] {
            perms += 1;
            assert_eq!(value(&h, &x), tour(&dist, &x));
        }
    }
    assert_eq!(perms, 24);
    // off the permutation set the operator is still the cyclic leg sum
    check_all(&inst, |x| tour(&dist, x));

    let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
    assert!(ProblemInstance::Tsp { distances: asym }.cost().is_err());
}

fn lateness(p: &[f64], dl: &[f64], w: &[f64], x: &[usize]) -> f64 {
    let mut t = 0.0;
    let mut total = 0.0;
    for &k in x {
        total += w[k] * (t + p[k] - dl[k]);
        t += p[k];
    }
    total
}

#[test]
fn sms_examples_and_oracle() {
    let inst = |p: Vec<f64>, d: Vec<f64>, w: Vec<f64>| ProblemInstance::Sms { processing: p, deadlines: d, weights: Some(w), weighted: true };
    let h = inst(vec![1.0, 1.0], vec![1.0, 2.0], vec![1.0, 1.0]).cost().unwrap();
    assert_eq!(value(&h, &[0, 1]), 0.0);
    assert_eq!(value(&h, &[1, 0]), 0.0);
    assert_eq!(value(&inst(vec![3.0], vec![1.0], vec![2.0]).cost().unwrap(), &[0]), 4.0);

    let mut r = rng();
    for m in 2..=4 {
        let p: Vec<f64> = (0..m).map(|_| r.gen_range(1..=5) as f64).collect();
        let dl: Vec<f64> = (0..m).map(|_| r.gen_range(1..=9) as f64).collect();
        let w: Vec<f64> = (0..m).map(|_| r.gen_range(1..=3) as f64).collect();
        check_all(&inst(p.clone(), dl.clone(), w.clone()), |x| lateness(&p, &dl, &w, x));
        let unweighted = ProblemInstance::Sms { processing: p.clone(), deadlines: dl.clone(), weights: Some(w.clone()), weighted: false };
        check_all(&unweighted, |x| lateness(&p, &dl, &vec![1.0; m], x));
    }
}

#[test]
fn portfolio_examples_and_oracle() {
    let one = |lambda: f64, mu: f64, y: i64, t: f64| ProblemInstance::Portfolio {
        risk: lambda, covariance: vec![vec![0.0]], returns: vec![mu], previous: Some(vec![y]), trade_cost: t, target: None,
    };
    assert_eq!(value(&one(0.0, 1.0, 1, 0.0).cost().unwrap(), &[2]), -1.0);
    let tc = one(0.0, 0.0, 0, 0.5).cost().unwrap();
    assert_eq!(value(&tc, &[1]), 0.0);
    assert_eq!(value(&tc, &[0]), 0.5);
    let rr = ProblemInstance::Portfolio {
        risk: 1.0, covariance: vec![vec![1.0, 1.0], vec![1.0, 1.0]], returns: vec![0.0, 0.0], previous: None, trade_cost: 0.0, target: None,
    };
    assert_eq!(value(&rr.cost().unwrap(), &[2, 2]), 4.0);
    assert!(one(0.0, 1.0, 2, 0.1).cost().is_err());

    let mut r = rng();
    for m in 1..=4 {
        let lambda = r.gen_range(0.0..1.0);
        let mut sigma = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..=i {
                let v = r.gen_range(-1.0..1.0);
                sigma[i][j] = v;
                sigma[j][i] = v;
            }
        }
        let mu: Vec<f64> = (0..m).map(|_| r.gen_range(-1.0..1.0)).collect();
        let y: Vec<i64> = (0..m).map(|_| r.gen_range(-1..=1)).collect();
        let t = r.gen_range(0.0..0.5);
        let inst = ProblemInstance::Portfolio {
            risk: lambda, covariance: sigma.clone(), returns: mu.clone(), previous: Some(y.clone()), trade_cost: t, target: Some(0),
        };
        check_all(&inst, |x| {
            let z: Vec<f64> = x.iter().map(|&k| k as f64 - 1.0).collect();
            let mut v = 0.0;
            for i in 0..m {
                for j in 0..m {
                    v += lambda * sigma[i][j] * z[i] * z[j];
                }
                v -= (1.0 - lambda) * mu[i] * z[i];
                if z[i] != y[i] as f64 {
                    v += t;
                }
            }
            v
        });
        let net = inst.portfolio_constraint().unwrap();
        for x in all_states(&vec![3; m]) {
            assert_eq!(value(&net, &x), x.iter().map(|&k| k as f64 - 1.0).sum::<f64>());
        }
    }
}

#[test]
fn ilp_examples_and_oracle() {
    let ilp = |c: Vec<f64>, d: Vec<usize>| ProblemInstance::Ilp { a: vec![], b: vec![], c, cardinalities: d };
    assert_eq!(value(&ilp(vec![1.0, 1.0], vec![3, 3]).cost().unwrap(), &[2, 2]), 4.0);
    assert_eq!(value(&ilp(vec![2.0, -1.0], vec![3, 3]).cost().unwrap(), &[1, 2]), 0.0);
    let h = ilp(vec![3.0], vec![4]).cost().unwrap();
    let spec: Vec<f64> = (0..4).map(|k| value(&h, &[k])).collect();
    assert_eq!(spec, [0.0, 3.0, 6.0, 9.0]);
    let min = ilp(vec![3.0], vec![4]).minimization_cost().unwrap();
    assert_eq!(value(&min, &[3]), -9.0);

    let mut r = rng();
    for _ in 0..5 {
        let n = r.gen_range(1..=4);
        let d: Vec<usize> = (0..n).map(|_| r.gen_range(2..=5)).collect();
        let c: Vec<f64> = (0..n).map(|_| r.gen_range(-4..=4) as f64).collect();
        check_all(&ilp(c.clone(), d), |x| x.iter().zip(&c).map(|(&k, ci)| k as f64 * ci).sum());
    }
}

#[test]
fn feasibility_projectors() {
    let dom = ProblemInstance::Tsp { distances: vec![vec![0.0; 3]; 3] }.domain().unwrap();
    let p = feasibility_projector(&dom, &FeasibilityKind::Permutation).unwrap();
    let rank: f64 = all_states(&[3, 3, 3]).iter().map(|x| value(&p, x)).sum();
    assert_eq!(rank, 6.0);
    for x in all_states(&[3, 3, 3]) {
        let distinct = x[0] != x[1] && x[1] != x[2] && x[0] != x[2];
        assert_eq!(value(&p, &x), distinct as u8 as f64);
    }
    let col = coloring(3, &[(0, 1)], 2).domain().unwrap();
    assert_eq!(feasibility_projector(&col, &FeasibilityKind::AllValid).unwrap(), OperatorPoly::identity(&col));
    assert!(feasibility_projector(&col, &FeasibilityKind::Permutation).is_err());

    let port = ProblemInstance::Portfolio {
        risk: 0.5, covariance: vec![vec![1.0]], returns: vec![0.1], previous: None, trade_cost: 0.0, target: Some(0),
    };
    let p = feasibility_projector(&port.domain().unwrap(), &port.feasibility()).unwrap();
    assert_eq!((0..3).map(|k| value(&p, &[k])).collect::<Vec<_>>(), [0.0, 1.0, 0.0]);
}

#[test]
fn instances_round_trip_json() {
    let inst = ProblemInstance::Sms { processing: vec![1.0, 2.0], deadlines: vec![2.0, 3.0], weights: None, weighted: true };
    let text = serde_json::to_string(&inst).unwrap();
    assert!(text.contains("\"kind\":\"sms\""));
    assert_eq!(serde_json::from_str::<ProblemInstance>(&text).unwrap(), inst);
}
