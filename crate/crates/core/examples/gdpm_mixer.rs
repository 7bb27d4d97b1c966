//! Search for a mixer that stays inside the valid codewords of one qudit.
use dqir::encoding::CodeSpec;
use dqir::mixer::{gdpm, verify_criteria, CriteriaKind};

fn main() -> dqir::Result<()> {
    for (code, d) in [(CodeSpec::Sb, 3), (CodeSpec::Gray, 5), (CodeSpec::Sb, 8)] {
        let m = gdpm(d, code)?;
        let r = verify_criteria(&m, CriteriaKind::SingleVar)?;
        println!("{code} d={d}: {} members, depth {}, criteria pass {}", m.gates.len(), m.depth(), r.passed);
        for g in &m.gates {
            println!("  {g:?}");
        }
    }
    Ok(())
}
