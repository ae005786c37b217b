mod common;

use common::*;
use ftqc::noise::{
    apply_noisy_gate, noisy_measure, sample_pauli, ErrorLog, Machine, NoiseModel, Pauli, PauliString, RngStream,
};
use ftqc::statevec::{SparseState, StandardGate};
use rand::RngCore;

fn plus_state(n: usize) -> SparseState {
    let mut s = SparseState::zero(n).unwrap();
    for q in 0..n {
        s.apply_gate(StandardGate::H.fixed(), &[q]).unwrap();
    }
    s
}

#[test]
fn zero_rate_matches_ideal_gate() {
    let model = NoiseModel::new(0.0).unwrap();
    let mut r = rng(1);
    let mut log = ErrorLog::new();
    let mut noisy = plus_state(3);
    let mut ideal = plus_state(3);
    for step in 0..50 {
        apply_noisy_gate(&mut noisy, StandardGate::Cnot.fixed(), &[0, 2], &model, &mut r, &mut log, step).unwrap();
        ideal.apply_gate(StandardGate::Cnot.fixed(), &[0, 2]).unwrap();
    }
    assert_eq!(noisy.entries(), ideal.entries());
    assert!(log.is_empty());
}

#[test]
fn unit_rate_faults_every_gate() {
    let model = NoiseModel::new(1.0).unwrap();
    let mut r = rng(2);
    let mut log = ErrorLog::new();
    let mut s = SparseState::zero(2).unwrap();
    for step in 0..100 {
        apply_noisy_gate(&mut s, StandardGate::Cz.fixed(), &[0, 1], &model, &mut r, &mut log, step).unwrap();
    }
    assert_eq!(log.len(), 100);
    assert!(log.events().iter().all(|e| !e.pauli.is_empty() && !e.qubits.is_empty()));
}

#[test]
fn fault_count_is_binomial() {
    let (n, p) = (10_000u64, 0.1);
    let model = NoiseModel::new(p).unwrap();
    let mut r = rng(3);
    let mut log = ErrorLog::new();
    let mut s = SparseState::zero(1).unwrap();
    for step in 0..n {
        apply_noisy_gate(&mut s, StandardGate::H.fixed(), &[0], &model, &mut r, &mut log, step).unwrap();
    }
    let mean = n as f64 * p;
    let sigma = (n as f64 * p * (1.0 - p)).sqrt();
    assert!((log.len() as f64 - mean).abs() < 3.0 * sigma, "{} events", log.len());
}

#[test]
fn measurement_flips() {
    let mut r = rng(4);
    let mut log = ErrorLog::new();

    let quiet = NoiseModel::new(0.0).unwrap();
    let mut a = plus_state(1);
    let mut b = plus_state(1);
    let mut r2 = rng(4);
    let (outcome, reported) = noisy_measure(&mut a, 0, &quiet, &mut r, &mut log, 0).unwrap();
    let ideal = b.measure(0, &mut r2).unwrap();
    assert_eq!((outcome.bit, reported), (ideal.bit, ideal.bit));

    let always = NoiseModel::new(0.0).unwrap().with_measurement(1.0).unwrap();
    let mut zero = SparseState::zero(1).unwrap();
    let (outcome, reported) = noisy_measure(&mut zero, 0, &always, &mut r, &mut log, 1).unwrap();
    assert!(!outcome.bit && reported);
    assert_eq!(zero.entries(), SparseState::zero(1).unwrap().entries());
    assert_eq!(log.events()[0].pauli, "MEAS_FLIP");

    let model = NoiseModel::new(0.0).unwrap().with_measurement(0.2).unwrap();
    let trials = 10_000;
    let ones = (0..trials)
        .filter(|&i| {
            let mut s = SparseState::zero(1).unwrap();
            noisy_measure(&mut s, 0, &model, &mut r, &mut log, i).unwrap().1
        })
        .count();
    assert!((ones as f64 / trials as f64 - 0.2).abs() < 0.015);
}

fn chi_square(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

fn pattern_index(p: &PauliString) -> usize {
    p.0.iter().rev().fold(0, |acc, q| {
        4 * acc
            + match q {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            }
    })
}

#[test]
fn pauli_sampling_is_uniform() {
    let mut r = rng(5);
    let mut single = [0usize; 3];
    for _ in 0..30_000 {
        let p = sample_pauli(1, &mut r).unwrap();
        single[pattern_index(&p) - 1] += 1;
    }
    // 99% critical value of chi-square with 2 degrees of freedom.
    assert!(chi_square(&single) < 9.21, "{single:?}");

    let mut pairs = [0usize; 15];
    for _ in 0..100_000 {
        let p = sample_pauli(2, &mut r).unwrap();
        assert!(!p.is_identity());
        pairs[pattern_index(&p) - 1] += 1;
    }
    // 14 degrees of freedom.
    assert!(chi_square(&pairs) < 29.14, "{pairs:?}");
    assert!(sample_pauli(0, &mut r).is_err());
    assert!(sample_pauli(5, &mut r).is_err());
}

#[test]
fn y_equals_x_after_z() {
    let mut r = rng(6);
    for _ in 0..10 {
        let amps = random_amplitudes(2, &mut r);
        let start = SparseState::from_amplitudes(2, amps.iter().enumerate().map(|(i, &a)| (i as u64, a))).unwrap();
        let mut y = start.clone();
        PauliString(vec![Pauli::Y]).apply(&mut y, &[1]).unwrap();
        let mut zx = start.clone();
        zx.apply_gate(StandardGate::Z.fixed(), &[1]).unwrap();
        zx.apply_gate(StandardGate::X.fixed(), &[1]).unwrap();
        assert!((y.fidelity(&zx).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn streams_are_reproducible_and_distinct() {
    let bytes = |seed, stream| {
        let mut r = RngStream::new(seed, stream);
        (0..8).map(|_| r.next_u64()).collect::<Vec<_>>()
    };
    assert_eq!(bytes(9, 3), bytes(9, 3));
    assert_ne!(bytes(9, 3), bytes(9, 4));
    assert_ne!(bytes(9, 3), bytes(10, 3));
}

fn noisy_run(seed: u64, stream: u64) -> (Vec<bool>, ErrorLog, SparseState) {
    let model = NoiseModel::new(0.2).unwrap();
    let mut m = Machine::new(plus_state(4), model, RngStream::new(seed, stream));
    let mut bits = Vec::new();
    for i in 0..30 {
        m.apply(StandardGate::Cnot, &[i % 4, (i + 1) % 4]).unwrap();
        m.apply(StandardGate::H, &[i % 3]).unwrap();
        if i % 10 == 9 {
            bits.push(m.measure(3).unwrap());
        }
    }
    let log = m.log().clone();
    (bits, log, m.into_state())
}

#[test]
fn machine_runs_are_deterministic() {
    let (b1, l1, s1) = noisy_run(11, 0);
    let (b2, l2, s2) = noisy_run(11, 0);
    assert_eq!(b1, b2);
    assert_eq!(l1, l2);
    assert_eq!(s1.dump(), s2.dump());
    assert!(!l1.is_empty());
    let (_, l3, _) = noisy_run(11, 1);
    assert_ne!(l1, l3);
}

#[test]
fn disabled_model_consumes_no_randomness() {
    let mut model = NoiseModel::new(0.3).unwrap();
    model.enabled = false;
    let mut noisy = Machine::new(plus_state(3), model, RngStream::new(1, 0));
    let mut ideal = Machine::new(plus_state(3), NoiseModel::noiseless(), RngStream::new(1, 0));
    for m in [&mut noisy, &mut ideal] {
        for i in 0..20 {
            m.apply(StandardGate::Cnot, &[i % 3, (i + 2) % 3]).unwrap();
        }
    }
    let a: Vec<bool> = (0..3).map(|q| noisy.measure(q).unwrap()).collect();
    let b: Vec<bool> = (0..3).map(|q| ideal.measure(q).unwrap()).collect();
    assert_eq!(a, b);
    assert_eq!(noisy.state().dump(), ideal.state().dump());
    assert!(noisy.log().is_empty());
}

#[test]
fn log_exports_csv() {
    let model = NoiseModel::new(1.0).unwrap();
    let mut m = Machine::new(SparseState::zero(2).unwrap(), model, RngStream::new(2, 0));
    m.apply(StandardGate::Cnot, &[0, 1]).unwrap();
    m.measure(0).unwrap();
    let csv = m.log().to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "step,location,qubits,pauli");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,gate:0,"));
    assert!(lines[2].starts_with("1,meas:0,0,MEAS_FLIP"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("errors.csv");
    m.log().write_csv(&path).unwrap();
    assert_eq!(std::fs::read_to_string(path).unwrap(), csv);
}

#[test]
fn probabilities_are_validated() {
    assert!(NoiseModel::new(-0.1).is_err());
    assert!(NoiseModel::new(1.5).is_err());
    assert!(NoiseModel::new(0.1).unwrap().with_measurement(2.0).is_err());
    assert!(NoiseModel::new(f64::NAN).is_err());
}
