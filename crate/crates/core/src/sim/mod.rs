//! Dense reference simulation used by the verification checks.

mod dense;
mod state;

pub use dense::{dense_cap, DenseOperator, DEFAULT_DENSE_CAP};
pub use state::{apply_gate, basis_state, circuit_unitary, one_qubit_matrix, simulate, simulate_sparse};

pub use crate::encoding::{restricted_deviation, restricted_equiv};

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{BitString, PauliPoly};

/// `max |U_C - exp(-i beta H)|` over all entries, dense.
pub fn exp_check(h: &DenseOperator, c: &Circuit, beta: f64) -> Result<f64> {
    let u = circuit_unitary(c)?;
    if u.dim() != h.dim() {
        return Err(Error::InvalidGate(format!("circuit dimension {} vs operator {}", u.dim(), h.dim())));
    }
    Ok(u.max_abs_diff(&h.exp_i(beta)))
}

/// Same check for diagonal `H`, column by column with a sparse simulator, so
/// it stays cheap up to the dense cap.
pub fn exp_check_diagonal(h: &PauliPoly, c: &Circuit, beta: f64) -> Result<f64> {
    if !h.is_diagonal() {
        return Err(Error::Unsupported("exp_check_diagonal needs a diagonal operator".into()));
    }
    let n = h.n_qubits.max(c.n_qubits);
    dense::check_cap(1usize << n)?;
    let compiled = c.compile();
    let mut worst = 0.0f64;
    for y in 0..(1usize << n) {
        let col = simulate_sparse(&compiled, y);
        let want = (Complex64::new(0.0, -beta) * h.diagonal_value(&BitString::from_usize(y))).exp();
        for (x, v) in &col {
            let w = if *x == y { want } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((v - w).norm());
        }
        if !col.contains_key(&y) {
            worst = worst.max(want.norm());
        }
    }
    Ok(worst)
}
