use num_complex::Complex64;
use rand::Rng;

use super::ExperimentConfig;
use crate::csscode::{
    logical_controlled_phase, logical_pauli, transversal_cnot, transversal_h, transversal_phase, Block,
    LogicalPauli,
};
use crate::error::{Error, Result};
use crate::gadgets::Protocol;
use crate::noise::{Machine, NoiseModel, RngStream};
use crate::statevec::{SparseState, StandardGate};

/// Fidelity below which a decoded logical state counts as a failure.
pub(crate) const FAILURE_FIDELITY: f64 = 1.0 - 1e-6;

/// Stream ids with the top bit set belong to the unencoded comparison runs.
const BASELINE_STREAM: u64 = 1 << 63;

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct TrialOutcome {
    pub failed: bool,
    pub aborted: bool,
    pub retries: usize,
    pub gates: u64,
    pub measurements: u64,
    pub baseline_failed: Option<bool>,
    pub fidelity: Option<f64>,
}

/// Gadget aborts and unsettled syndromes end a trial as a failure; anything
/// else is a bug and propagates.
fn abort_or<T>(result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::GadgetAbort { .. } | Error::SyndromeFailure { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Noiseless correction of each block, so that only damage beyond what the
/// code can fix shows up when decoding.
fn ideal_recovery(m: &mut Machine, proto: &Protocol, blocks: &[Block]) -> Result<()> {
    m.set_model(NoiseModel::noiseless());
    for &b in blocks {
        proto.correct_block(m, b)?;
    }
    Ok(())
}

/// Decoded amplitudes of `blocks`; a leaked or entangled register is `None`.
fn decoded(m: &Machine, proto: &Protocol, blocks: &[Block]) -> Result<Option<Vec<Complex64>>> {
    match proto.code.decode_register(m.state(), blocks) {
        Ok(a) => Ok(Some(a)),
        Err(Error::Leakage { .. } | Error::NotProduct(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm_sqr()
}

pub(crate) fn random_amplitudes(k: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1 << k)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

pub(crate) fn model_for(config: &ExperimentConfig, p: f64) -> Result<NoiseModel> {
    NoiseModel::new(p)?
        .with_measurement(config.p_meas.unwrap_or(p))
        .map(|m| m.with_channel(config.channel))
}

fn machine(config: &ExperimentConfig, p: f64, trial: u64) -> Result<Machine> {
    Ok(Machine::new(
        SparseState::zero(0)?,
        model_for(config, p)?,
        RngStream::new(config.seed, trial),
    ))
}

/// A bare qubit holding `v` through `gates` noisy gate slots and one noisy
/// readout; returns whether the readout differs from `v`.
pub(crate) fn bare_qubit_fails(model: &NoiseModel, seed: u64, trial: u64, v: bool, gates: u64) -> bool {
    let mut rng = RngStream::new(seed, trial | BASELINE_STREAM);
    let mut bit = v;
    for _ in 0..gates {
        if let Some(fault) = model.sample_gate_fault(1, &mut rng) {
            bit ^= fault.0[0].has_x();
        }
    }
    bit ^= model.sample_measurement_flip(&mut rng);
    bit != v
}

pub(crate) fn memory_trial(proto: &Protocol, config: &ExperimentConfig, p: f64, trial: u64) -> Result<TrialOutcome> {
    let mut m = machine(config, p, trial)?;
    let v: bool = m.rng().random();
    m.set_state(proto.code.logical_state(v));
    let block = Block::new(0, proto.code.n());
    let mut out = TrialOutcome::default();
    for _ in 0..config.rounds {
        match abort_or(proto.correct_block(&mut m, block))? {
            Some(report) => out.retries += report.retries,
            None => {
                out.aborted = true;
                break;
            }
        }
    }
    out.gates = m.gate_count();
    out.measurements = m.measurement_count();
    out.failed = out.aborted || {
        ideal_recovery(&mut m, proto, &[block])?;
        decoded(&m, proto, &[block])?.is_none_or(|a| a[usize::from(v)].norm_sqr() < 0.5)
    };
    if config.baseline {
        let model = model_for(config, p)?;
        out.baseline_failed = Some(bare_qubit_fails(&model, config.seed, trial, v, out.gates));
    }
    Ok(out)
}

/// Gates drawn by the transversal-gate experiment.
const TRANSVERSAL_GATES: [StandardGate; 7] = [
    StandardGate::H,
    StandardGate::PhaseI,
    StandardGate::PhaseIDg,
    StandardGate::X,
    StandardGate::Z,
    StandardGate::Cnot,
    StandardGate::Cz,
];

pub(crate) fn transversal_trial(proto: &Protocol, config: &ExperimentConfig, p: f64, trial: u64) -> Result<TrialOutcome> {
    let code = &proto.code;
    let n = code.n();
    let (b0, b1) = (Block::new(0, n), Block::new(n, n));
    let mut m = machine(config, p, trial)?;
    let choices = if code.phase_sign().is_some() { 7 } else { 5 };
    let gate = [0, 3, 4, 5, 6, 1, 2][m.rng().random_range(0..choices)];
    let gate = TRANSVERSAL_GATES[gate];
    let amps = random_amplitudes(2, m.rng());
    m.set_state(code.encode_register(&amps)?);

    let mut oracle_gate = gate.matrix();
    let mut targets = vec![0];
    match gate {
        StandardGate::H => transversal_h(&mut m, code, b0)?,
        StandardGate::PhaseI | StandardGate::PhaseIDg => {
            let dagger = gate == StandardGate::PhaseIDg;
            transversal_phase(&mut m, code, b0, dagger)?;
            let phase = code.phase_sign().expect("checked above").phase(dagger);
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            oracle_gate = crate::statevec::GateMatrix::new(1, vec![one, zero, zero, phase])?;
        }
        StandardGate::X => logical_pauli(&mut m, code, b0, LogicalPauli::X)?,
        StandardGate::Z => logical_pauli(&mut m, code, b0, LogicalPauli::Z)?,
        StandardGate::Cnot => {
            transversal_cnot(&mut m, code, b0, b1)?;
            targets = vec![0, 1];
        }
        _ => {
            logical_controlled_phase(&mut m, code, b0, b1)?;
            targets = vec![0, 1];
        }
    }
    let mut out = TrialOutcome::default();
    for b in [b0, b1] {
        match abort_or(proto.correct_block(&mut m, b))? {
            Some(r) => out.retries += r.retries,
            None => out.aborted = true,
        }
        if out.aborted {
            break;
        }
    }
    out.gates = m.gate_count();
    out.measurements = m.measurement_count();
    out.failed = out.aborted || {
        ideal_recovery(&mut m, proto, &[b0, b1])?;
        let mut want = SparseState::from_amplitudes(2, amps.iter().enumerate().map(|(i, &a)| (i as u64, a)))?;
        want.apply_gate(&oracle_gate, &targets)?;
        let want: Vec<Complex64> = (0..4).map(|i| want.amplitude(i)).collect();
        decoded(&m, proto, &[b0, b1])?.is_none_or(|a| overlap(&a, &want) < FAILURE_FIDELITY)
    };
    Ok(out)
}

pub(crate) fn toffoli_trial(proto: &Protocol, config: &ExperimentConfig, p: f64, trial: u64) -> Result<TrialOutcome> {
    let code = &proto.code;
    let n = code.n();
    let mut m = machine(config, p, trial)?;
    // Inputs cycle through the basis so every row is exercised equally.
    let input = (trial % 8) as usize;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[input] = Complex64::new(1.0, 0.0);
    m.set_state(code.encode_register(&amps)?);
    let blocks = [0, 1, 2].map(|i| Block::new(i * n, n));
    let mut out = TrialOutcome::default();
    let Some((result, report)) = abort_or(proto.toffoli(&mut m, blocks[0], blocks[1], blocks[2]))? else {
        out.aborted = true;
        out.failed = true;
        out.gates = m.gate_count();
        out.measurements = m.measurement_count();
        return Ok(out);
    };
    out.retries = report.retries;
    for &b in &result.blocks {
        match abort_or(proto.correct_block(&mut m, b))? {
            Some(r) => out.retries += r.retries,
            None => {
                out.aborted = true;
                break;
            }
        }
    }
    out.gates = m.gate_count();
    out.measurements = m.measurement_count();
    let (x, y, z) = (input & 1, (input >> 1) & 1, input >> 2);
    let expected = x | (y << 1) | ((z ^ (x & y)) << 2);
    out.failed = out.aborted || report.logical_error || {
        ideal_recovery(&mut m, proto, &result.blocks)?;
        decoded(&m, proto, &result.blocks)?.is_none_or(|a| a[expected].norm_sqr() < 0.5)
    };
    Ok(out)
}

/// Logical amplitudes of `|A⟩ = Σ_{a,b} |a, b, ab⟩ / 2`.
pub fn ancilla_a_amplitudes() -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        amps[a | (b << 1) | ((a & b) << 2)] = Complex64::new(0.5, 0.0);
    }
    amps
}

pub(crate) fn ancilla_trial(proto: &Protocol, config: &ExperimentConfig, p: f64, trial: u64) -> Result<TrialOutcome> {
    let mut m = machine(config, p, trial)?;
    let mut out = TrialOutcome::default();
    let prepared = abort_or(proto.prepare_ancilla_a(&mut m, config.rounds))?;
    out.gates = m.gate_count();
    out.measurements = m.measurement_count();
    let Some((ancilla, report)) = prepared else {
        out.aborted = true;
        out.failed = true;
        out.fidelity = Some(0.0);
        return Ok(out);
    };
    out.retries = report.retries;
    ideal_recovery(&mut m, proto, &ancilla.blocks)?;
    let fidelity = decoded(&m, proto, &ancilla.blocks)?
        .map_or(0.0, |a| overlap(&a, &ancilla_a_amplitudes()));
    out.fidelity = Some(fidelity);
    out.failed = fidelity < FAILURE_FIDELITY;
    Ok(out)
}

/// One verified and one unverified preparation of `|s₀⟩` on the same stream
/// id; returns whether each ended up logically wrong.
pub(crate) fn zero_prep_pair(proto: &Protocol, config: &ExperimentConfig, p: f64, trial: u64) -> Result<(bool, bool)> {
    let n = proto.code.n();
    let mut verified = machine(config, p, trial)?;
    let verified_failed = match abort_or(proto.prepare_logical_zero_ft(&mut verified))? {
        Some((block, _)) => {
            ideal_recovery(&mut verified, proto, &[block])?;
            decoded(&verified, proto, &[block])?.is_none_or(|a| a[0].norm_sqr() < 0.5)
        }
        None => true,
    };
    let mut plain = machine(config, p, trial)?;
    let block = Block::new(plain.alloc(n)?, n);
    proto.encode_zero(&mut plain, block)?;
    ideal_recovery(&mut plain, proto, &[block])?;
    let plain_failed = decoded(&plain, proto, &[block])?.is_none_or(|a| a[0].norm_sqr() < 0.5);
    Ok((verified_failed, plain_failed))
}
