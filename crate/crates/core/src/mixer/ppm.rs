use super::design::{DesignKind, MixerDesign};
use crate::circuit::{Control, Gate};
use crate::encoding::CodeSpec;
use crate::error::{Error, Result};

/// Two-variable partial permutation mixer for compact codes. Gray pairs
/// `|k,k+1>`, `|k+1,k>` differ in one bit per register, so one controlled
/// `A_phi` per `k` swaps them. SB registers are converted to Gray and back.
pub fn ppm_construct(d: usize, code: CodeSpec) -> Result<MixerDesign> {
    if !(2..=16).contains(&d) {
        return Err(Error::InvalidInstance(format!("ppm needs 2 <= d <= 16, got {d}")));
    }
    if !matches!(code, CodeSpec::Gray | CodeSpec::Sb) {
        return Err(Error::Unsupported(format!("ppm construction for {code}")));
    }
    let w = code.n_qubits(d);
    let gray = |k: usize| k ^ (k >> 1);
    let mut gates = Vec::new();
    for k in 0..d - 1 {
        let (g0, g1) = (gray(k), gray(k + 1));
        let p = (g0 ^ g1).trailing_zeros() as usize;
        let mut controls: Vec<Control> = Vec::new();
        for (reg, word) in [(0, g0), (w, g1)] {
            controls.extend((0..w).filter(|&q| q != p).map(|q| (reg + q, word >> q & 1 == 1)));
        }
        let (a, b) = (p, w + p);
        gates.push(if controls.is_empty() { Gate::APhi { a, b, theta: 0.0 } } else { Gate::CAPhi { controls, a, b, theta: 0.0 } });
    }
    let (mut prologue, mut epilogue) = (Vec::new(), Vec::new());
    if code == CodeSpec::Sb {
        for reg in [0, w] {
            prologue.extend((0..w.saturating_sub(1)).map(|i| Gate::Cnot { control: reg + i + 1, target: reg + i }));
            epilogue.extend((0..w.saturating_sub(1)).rev().map(|i| Gate::Cnot { control: reg + i + 1, target: reg + i }));
        }
    }
    let mut design = MixerDesign {
        kind: DesignKind::Ppm,
        code,
        d,
        var_width: w,
        n_qubits: 2 * w,
        prologue,
        gates,
        epilogue,
        cost: 0,
        certificate: vec![],
    };
    design.cost = design.depth();
    let enc = |k: usize| code.encode(k, d).unwrap() as usize;
    design.certificate = (0..d - 1)
        .map(|k| {
            let (u, v) = (enc(k) | enc(k + 1) << w, enc(k + 1) | enc(k) << w);
            (u.min(v), u.max(v))
        })
        .collect();
    Ok(design)
}
