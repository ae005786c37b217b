//! Stochastic gate and measurement faults, event logging, and the executor
//! every protocol runs on.

mod log;
mod machine;
mod model;
mod pauli;
mod rng;

pub use log::{ErrorEvent, ErrorLog, Location};
pub use machine::{FaultPlan, Machine};
pub use model::{Channel, NoiseModel};
pub use pauli::{sample_pauli, Pauli, PauliString};
pub use rng::RngStream;

use rand::Rng;

use crate::error::Result;
use crate::statevec::{GateMatrix, MeasurementOutcome, SparseState};

/// Applies `gate`, then with probability `p_gate` a random fault on its support.
///
/// `step` is the gate's sequence number, used only for the log.
pub fn apply_noisy_gate<R: Rng + ?Sized>(
    state: &mut SparseState,
    gate: &GateMatrix,
    targets: &[usize],
    model: &NoiseModel,
    rng: &mut R,
    log: &mut ErrorLog,
    step: u64,
) -> Result<()> {
    state.apply_gate(gate, targets)?;
    if let Some(fault) = model.sample_gate_fault(targets.len(), rng) {
        fault.apply(state, targets)?;
        log.push(ErrorEvent::gate(step, targets, &fault, false));
    }
    Ok(())
}

/// Born-rule measurement whose reported bit is flipped with probability
/// `p_meas`. The state stays projected on the true outcome.
pub fn noisy_measure<R: Rng + ?Sized>(
    state: &mut SparseState,
    qubit: usize,
    model: &NoiseModel,
    rng: &mut R,
    log: &mut ErrorLog,
    step: u64,
) -> Result<(MeasurementOutcome, bool)> {
    let outcome = state.measure(qubit, rng)?;
    let flip = model.sample_measurement_flip(rng);
    if flip {
        log.push(ErrorEvent::measurement_flip(step, qubit, false));
    }
    Ok((outcome, outcome.bit ^ flip))
}
