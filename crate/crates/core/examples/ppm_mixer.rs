//! Two-variable permutation mixer: swaps values between a pair of registers.
use dqir::encoding::CodeSpec;
use dqir::mixer::{ppm_construct, verify_criteria, CriteriaKind};

fn main() -> dqir::Result<()> {
    let m = ppm_construct(4, CodeSpec::Gray)?;
    println!("{} qubits, {} members, depth {}", m.n_qubits, m.gates.len(), m.depth());
    println!("{:#?}", verify_criteria(&m, CriteriaKind::Ppm)?);
    Ok(())
}
