#![allow(dead_code)]

use ftqc::noise::{Machine, NoiseModel, RngStream};
use ftqc::statevec::{densify, DenseState, GateMatrix, SparseState, StandardGate};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized amplitudes for `k` logical qubits.
pub fn random_amplitudes(k: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1 << k)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

pub fn basis_amplitudes(k: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << k];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// `|⟨a|b⟩|²` for normalized vectors.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm_sqr()
}

/// Applies `gate` to an unencoded register given by its amplitudes.
pub fn oracle(amps: &[Complex64], gate: &GateMatrix, targets: &[usize]) -> Vec<Complex64> {
    let k = amps.len().trailing_zeros() as usize;
    let mut s = SparseState::from_amplitudes(k, amps.iter().enumerate().map(|(i, &a)| (i as u64, a))).unwrap();
    s.apply_gate(gate, targets).unwrap();
    (0..amps.len() as u64).map(|i| s.amplitude(i)).collect()
}

pub fn ideal_machine(state: SparseState, seed: u64) -> Machine {
    Machine::new(state, NoiseModel::noiseless(), RngStream::new(seed, 0))
}

/// A random circuit over the standard gate set on `n` qubits.
pub fn random_circuit(n: usize, len: usize, rng: &mut impl Rng) -> Vec<(StandardGate, Vec<usize>)> {
    use rand::seq::index::sample;
    (0..len)
        .map(|_| {
            let gate = match rng.random_range(0..13) {
                0 => StandardGate::X,
                1 => StandardGate::Y,
                2 => StandardGate::Z,
                3 | 4 => StandardGate::H,
                5 => StandardGate::PhaseI,
                6 => StandardGate::PhaseIDg,
                7 => StandardGate::Cnot,
                8 => StandardGate::Cz,
                9 => StandardGate::Toffoli,
                10 => StandardGate::Rx(rng.random_range(0.0..std::f64::consts::TAU)),
                11 => StandardGate::Rz(rng.random_range(0.0..std::f64::consts::TAU)),
                _ => StandardGate::CatPhase4,
            };
            let arity = gate.arity().min(n);
            let gate = if arity < gate.arity() { StandardGate::H } else { gate };
            let targets = sample(rng, n, gate.arity()).into_vec();
            (gate, targets)
        })
        .collect()
}

/// Runs `circuit` on both engines from `|0…0⟩` and returns the fidelity.
pub fn engines_agree(n: usize, circuit: &[(StandardGate, Vec<usize>)]) -> f64 {
    let mut sparse = SparseState::zero(n).unwrap();
    let mut dense = DenseState::zero(n).unwrap();
    for (g, t) in circuit {
        let m = g.matrix();
        sparse.apply_gate(&m, t).unwrap();
        dense.apply_gate(&m, t).unwrap();
    }
    densify(&sparse).unwrap().fidelity(&dense).unwrap()
}
