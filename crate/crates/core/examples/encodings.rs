//! Codewords and qubit footprints of each encoding.
use dqir::encoding::{CodeSpec, LocalCode};

fn main() -> dqir::Result<()> {
    let d = 6;
    let codes = [CodeSpec::Sb, CodeSpec::Gray, CodeSpec::Unary, CodeSpec::DomainWall, CodeSpec::bu(3, LocalCode::Gray)];
    for code in codes {
        let n = code.n_qubits(d);
        let words: Vec<String> = (0..d).map(|k| code.encode(k, d).map(|w| format!("{w:0n$b}"))).collect::<Result<_, _>>()?;
        println!("{:<8} {n:>2} qubits  {}", code.to_string(), words.join(" "));
        println!("         |1><4| touches {:?}", code.bitmask(1, 4, d)?);
    }
    Ok(())
}
