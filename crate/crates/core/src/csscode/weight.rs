use super::Block;
use crate::error::{invalid, Result};
use crate::noise::{Pauli, PauliString};
use crate::statevec::SparseState;

const SAME_STATE: f64 = 1.0 - 1e-9;

/// Smallest weight of a Pauli `P` on `block` with `P·reference ∝ actual`,
/// searching weights up to `max_weight`. `None` when no such Pauli exists
/// within the bound.
pub fn error_weight(
    reference: &SparseState,
    actual: &SparseState,
    block: Block,
    max_weight: usize,
) -> Result<Option<usize>> {
    if reference.num_qubits() != actual.num_qubits() || block.end() > actual.num_qubits() {
        return invalid("states and block do not match");
    }
    for w in 0..=max_weight.min(block.len) {
        for positions in crate::f2linalg::combinations(block.len, w) {
            for kinds in 0..3usize.pow(w as u32) {
                let mut pattern = Vec::with_capacity(w);
                let mut k = kinds;
                for _ in 0..w {
                    pattern.push(Pauli::from_digit(k % 3 + 1));
                    k /= 3;
                }
                let targets: Vec<usize> = positions.iter().map(|&p| block.qubit(p)).collect();
                let mut candidate = reference.clone();
                PauliString(pattern).apply(&mut candidate, &targets)?;
                if candidate.fidelity(actual)? >= SAME_STATE {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
