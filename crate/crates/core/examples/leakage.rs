//! Trotterized shift mixer leaks out of the SB code space; the synthesized one does not.
use dqir::dqir::DomainSpec;
use dqir::encoding::{CodeSpec, EncodingAssignment};
use dqir::mixer::{gdpm, leakage_circuit, mixer_generator, trotter_mixer, GeneratorKind};
use dqir::sim::basis_state;

fn main() -> dqir::Result<()> {
    let d = 5;
    let dom = DomainSpec::uniform("x", 1, d);
    let asg = EncodingAssignment::uniform(&dom, CodeSpec::Sb)?;
    let gen = mixer_generator(GeneratorKind::Shift, &dom, &["x0".to_string()])?;
    let trot = trotter_mixer(&gen, &asg, 0.9)?;
    let design = gdpm(d, CodeSpec::Sb)?;
    let mask = design.feasible_mask();
    let psi = basis_state(design.n_qubits, 2);
    println!("trotter shift leakage {:.3e}", leakage_circuit(&trot, &mask, &psi)?);
    let c = design.circuit(&vec![0.9; design.n_params()])?;
    println!("gdpm leakage          {:.3e}", leakage_circuit(&c, &mask, &psi)?);
    Ok(())
}
