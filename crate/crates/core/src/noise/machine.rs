use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{ErrorEvent, ErrorLog, Location, NoiseModel, PauliString, RngStream};
use crate::error::{invalid, Result};
use crate::statevec::{GateMatrix, SparseState, StandardGate};

/// Deterministic faults keyed by gate or measurement sequence number, for
/// exhaustive fault-injection sweeps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FaultPlan {
    gates: BTreeMap<u64, PauliString>,
    measurements: BTreeSet<u64>,
}

impl FaultPlan {
    pub fn new() -> Self {
        Self::default()
    }

    /// Applies `pauli` (over the gate's targets, in order) right after gate `index`.
    pub fn gate(mut self, index: u64, pauli: PauliString) -> Self {
        self.gates.insert(index, pauli);
        self
    }

    /// Flips the reported bit of measurement `index`.
    pub fn measurement(mut self, index: u64) -> Self {
        self.measurements.insert(index);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty() && self.measurements.is_empty()
    }
}

/// A state together with the noise model, random stream, fault log and
/// counters that every protocol step goes through.
///
/// Gates and measurements are numbered in execution order; those numbers are
/// what [`FaultPlan`] refers to. Forced branches let tests drive a protocol
/// down a chosen measurement branch instead of sampling it.
#[derive(Debug)]
pub struct Machine {
    state: SparseState,
    model: NoiseModel,
    rng: RngStream,
    log: ErrorLog,
    plan: FaultPlan,
    gates: u64,
    measurements: u64,
    forced_logical: VecDeque<bool>,
    forced_cat: VecDeque<bool>,
    trace: Option<Vec<Vec<usize>>>,
}

impl Machine {
    pub fn new(state: SparseState, model: NoiseModel, rng: RngStream) -> Self {
        Self {
            state,
            model,
            rng,
            log: ErrorLog::new(),
            plan: FaultPlan::new(),
            gates: 0,
            measurements: 0,
            forced_logical: VecDeque::new(),
            forced_cat: VecDeque::new(),
            trace: None,
        }
    }

    /// Noiseless machine on an empty register.
    pub fn ideal(seed: u64) -> Self {
        Self::new(
            SparseState::zero(0).expect("empty register"),
            NoiseModel::noiseless(),
            RngStream::new(seed, 0),
        )
    }

    pub fn with_plan(mut self, plan: FaultPlan) -> Self {
        self.plan = plan;
        self
    }

    /// Starts recording the target list of every gate.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    /// Targets of each gate since tracing was enabled.
    pub fn trace(&self) -> Option<&[Vec<usize>]> {
        self.trace.as_deref()
    }

    pub fn set_plan(&mut self, plan: FaultPlan) {
        self.plan = plan;
    }

    pub fn state(&self) -> &SparseState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut SparseState {
        &mut self.state
    }

    pub fn set_state(&mut self, state: SparseState) {
        self.state = state;
    }

    pub fn into_state(self) -> SparseState {
        self.state
    }

    pub fn num_qubits(&self) -> usize {
        self.state.num_qubits()
    }

    pub fn model(&self) -> &NoiseModel {
        &self.model
    }

    pub fn set_model(&mut self, model: NoiseModel) {
        self.model = model;
    }

    pub fn rng(&mut self) -> &mut RngStream {
        &mut self.rng
    }

    pub fn log(&self) -> &ErrorLog {
        &self.log
    }

    pub fn take_log(&mut self) -> ErrorLog {
        std::mem::take(&mut self.log)
    }

    pub fn gate_count(&self) -> u64 {
        self.gates
    }

    pub fn measurement_count(&self) -> u64 {
        self.measurements
    }

    /// Queues outcomes for the next logical-block measurements taken at
    /// protocol branch points.
    pub fn force_logical_outcomes(&mut self, outcomes: impl IntoIterator<Item = bool>) {
        self.forced_logical.extend(outcomes);
    }

    /// Queues parities for the next cat readouts in the ancilla factory.
    pub fn force_cat_parities(&mut self, parities: impl IntoIterator<Item = bool>) {
        self.forced_cat.extend(parities);
    }

    pub fn next_forced_logical(&mut self) -> Option<bool> {
        self.forced_logical.pop_front()
    }

    pub fn next_forced_cat(&mut self) -> Option<bool> {
        self.forced_cat.pop_front()
    }

    pub fn apply(&mut self, gate: StandardGate, targets: &[usize]) -> Result<()> {
        match gate {
            StandardGate::Rx(_) | StandardGate::Rz(_) => self.apply_matrix(&gate.matrix(), targets),
            _ => self.apply_matrix(gate.fixed(), targets),
        }
    }

    /// Applies a gate as one noisy operation.
    pub fn apply_matrix(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        self.state.apply_gate(gate, targets)?;
        self.after_gate(targets)
    }

    /// Applies a one-qubit gate to each of `qubits`, one noisy operation per
    /// qubit. Equivalent to applying them in order: the gates and the faults
    /// that follow them act on distinct qubits and commute.
    pub fn apply_layer(&mut self, gate: StandardGate, qubits: &[usize]) -> Result<()> {
        if gate.arity() != 1 || (self.model.enabled && self.model.p_idle > 0.0) {
            return qubits.iter().try_for_each(|&q| self.apply(gate, &[q]));
        }
        self.state.apply_layer(&gate.matrix(), qubits)?;
        qubits.iter().try_for_each(|&q| self.after_gate(&[q]))
    }

    /// Counter, trace and fault bookkeeping for a gate just applied.
    fn after_gate(&mut self, targets: &[usize]) -> Result<()> {
        let index = self.gates;
        self.gates += 1;
        if let Some(trace) = &mut self.trace {
            trace.push(targets.to_vec());
        }
        if let Some(fault) = self.plan.gates.get(&index).cloned() {
            fault.apply(&mut self.state, targets)?;
            self.log.push(ErrorEvent::gate(index, targets, &fault, true));
        }
        if let Some(fault) = self.model.sample_gate_fault(targets.len(), &mut self.rng) {
            fault.apply(&mut self.state, targets)?;
            self.log.push(ErrorEvent::gate(index, targets, &fault, false));
        }
        if self.model.enabled && self.model.p_idle > 0.0 {
            for q in 0..self.state.num_qubits() {
                if targets.contains(&q) {
                    continue;
                }
                if let Some(p) = self.model.sample_idle_fault(&mut self.rng) {
                    let fault = PauliString(vec![p]);
                    fault.apply(&mut self.state, &[q])?;
                    let mut event = ErrorEvent::gate(index, &[q], &fault, false);
                    event.location = Location::Idle(index);
                    self.log.push(event);
                }
            }
        }
        Ok(())
    }

    /// Applies a gate outside the noise model and the gate counter: used for
    /// error injection and ideal reference operations.
    pub fn apply_ideal(&mut self, gate: StandardGate, targets: &[usize]) -> Result<()> {
        match gate {
            StandardGate::Rx(_) | StandardGate::Rz(_) => self.state.apply_gate(&gate.matrix(), targets),
            _ => self.state.apply_gate(gate.fixed(), targets),
        }
    }

    /// Measures `qubit` and returns the reported bit.
    pub fn measure(&mut self, qubit: usize) -> Result<bool> {
        let outcome = self.state.measure(qubit, &mut self.rng)?;
        Ok(self.report(qubit, outcome.bit))
    }

    /// Measures `qubit` with its true outcome fixed to `bit` (postselection).
    /// Fails if that outcome has probability zero.
    pub fn measure_forced(&mut self, qubit: usize, bit: bool) -> Result<bool> {
        self.state.project(qubit, bit)?;
        Ok(self.report(qubit, bit))
    }

    fn report(&mut self, qubit: usize, bit: bool) -> bool {
        let index = self.measurements;
        self.measurements += 1;
        let mut reported = bit;
        if self.plan.measurements.contains(&index) {
            reported = !reported;
            self.log.push(ErrorEvent::measurement_flip(index, qubit, true));
        }
        if self.model.sample_measurement_flip(&mut self.rng) {
            reported = !reported;
            self.log.push(ErrorEvent::measurement_flip(index, qubit, false));
        }
        reported
    }

    /// Appends `count` fresh qubits in `|0⟩`; returns the first index.
    pub fn alloc(&mut self, count: usize) -> Result<usize> {
        self.state.allocate(count)
    }

    /// Removes qubits holding definite values (typically just measured);
    /// qubits above them are renumbered downward.
    pub fn discard(&mut self, qubits: &[usize]) -> Result<Vec<bool>> {
        self.state.remove_qubits(qubits)
    }

    /// Runs `f` on a fresh register of `n` qubits sharing this machine's noise,
    /// stream, log and counters, and returns the register it produced.
    pub fn isolated<T>(
        &mut self,
        n: usize,
        f: impl FnOnce(&mut Machine) -> Result<T>,
    ) -> Result<(T, SparseState)> {
        let limit = self.state.support_limit();
        let fresh = SparseState::zero(n)?.with_support_limit(limit);
        let saved = std::mem::replace(&mut self.state, fresh);
        let result = f(self);
        let produced = std::mem::replace(&mut self.state, saved);
        Ok((result?, produced))
    }

    /// Appends `other` above the current register; returns its first qubit.
    pub fn tensor_in(&mut self, other: &SparseState) -> Result<usize> {
        if other.num_qubits() == 0 {
            return invalid("tensoring in an empty register");
        }
        let first = self.state.num_qubits();
        self.state = self.state.tensor(other)?;
        Ok(first)
    }
}
