//! Problem instances as cost operators.
use dqir::problems::ProblemInstance;

fn main() -> dqir::Result<()> {
    let col = ProblemInstance::Coloring { num_nodes: 3, edges: vec![(0, 1), (1, 2)], colors: 2 };
    let ilp = ProblemInstance::Ilp { a: vec![vec![1.0, 1.0]], b: vec![3.0], c: vec![1.0, 2.0], cardinalities: vec![3, 3] };
    for p in [col, dqir::report::tsp_instance(3), dqir::report::sms_instance(2), ilp] {
        let h = p.minimization_cost()?;
        let dom = h.domain().clone();
        // unconstrained minimum; feasibility comes from penalties or mixers
        let best = dom.states().min_by(|a, b| h.diagonal_value(a).re.total_cmp(&h.diagonal_value(b).re)).unwrap();
        println!("{:<10} {:>3} terms  {:?}  argmin {best:?} -> {}", p.kind(), h.len(), p.feasibility(), h.diagonal_value(&best).re);
    }
    Ok(())
}
