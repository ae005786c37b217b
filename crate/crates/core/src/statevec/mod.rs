//! Pure-state simulation.
//!
//! Qubit `i` is bit `i` of a basis index, qubit 0 least significant. The
//! sparse engine is the workhorse; the dense engine is a small reference
//! implementation used to cross-check it.

mod dense;
mod gate;
mod sparse;

use serde::{Deserialize, Serialize};

pub use dense::{densify, sparsify, DenseState, MAX_DENSE_QUBITS};
pub use gate::{standard_gate, GateMatrix, StandardGate};
pub use sparse::{SparseState, DEFAULT_SUPPORT_LIMIT, MAX_QUBITS, PRUNE_THRESHOLD};


/// Result of a projective measurement of one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementOutcome {
    pub qubit: usize,
    pub bit: bool,
    /// Born probability of the observed bit.
    pub probability: f64,
}
