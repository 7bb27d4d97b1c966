//! Exact phase separator for a diagonal Hamiltonian.
use dqir::circuit::emit_product_formula;
use dqir::encoding::{lower, CodeSpec, EncodingAssignment};
use dqir::sim::exp_check_diagonal;

fn main() -> dqir::Result<()> {
    let h = dqir::report::tsp_instance(3).cost()?;
    let asg = EncodingAssignment::uniform(h.domain(), CodeSpec::Gray)?;
    let p = lower(&h, &asg)?;
    let c = emit_product_formula(&p, 0.7)?;
    println!("{} qubits, {} Pauli terms", p.n_qubits, p.len());
    println!("macro gates {}, depth {}, cnots {}", c.gates.len(), c.depth(), c.cnot_count());
    println!("compiled depth {}", c.compile().depth());
    println!("max deviation from exp(-i beta H): {:e}", exp_check_diagonal(&p, &c, 0.7)?);
    Ok(())
}
