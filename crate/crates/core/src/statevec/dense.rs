use num_complex::Complex64;
use rand::Rng;

use super::gate::GateMatrix;
use super::{MeasurementOutcome, SparseState, PRUNE_THRESHOLD};
use crate::error::{invalid, Error, Result};

pub const MAX_DENSE_QUBITS: usize = 14;

/// Full `2^n` amplitude vector. Straightforward on purpose: it is the oracle
/// the sparse engine is checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                what: "dense state qubits",
                attempted: n,
                limit: MAX_DENSE_QUBITS,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return invalid("target count does not match gate arity");
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits || targets[..i].contains(&t) {
                return invalid(format!("bad target list {targets:?}"));
            }
        }
        let dim = gate.dim();
        let offsets: Vec<usize> = (0..dim)
            .map(|local| {
                targets
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| (local >> b) & 1 == 1)
                    .map(|(_, &t)| 1 << t)
                    .sum()
            })
            .collect();
        let mask: usize = offsets[dim - 1];
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            for (j, off) in offsets.iter().enumerate() {
                buf[j] = self.amplitudes[base | off];
            }
            for (i, off) in offsets.iter().enumerate() {
                self.amplitudes[base | off] = (0..dim).map(|j| gate.entry(i, j) * buf[j]).sum();
            }
        }
        Ok(())
    }

    pub fn measure<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<MeasurementOutcome> {
        if qubit >= self.num_qubits {
            return invalid(format!("qubit {qubit} out of range"));
        }
        let p1: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(k, _)| (k >> qubit) & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            / self.norm_sqr();
        let bit = rng.random::<f64>() < p1;
        let probability = if bit { p1 } else { 1.0 - p1 };
        let norm = probability.sqrt();
        for (k, a) in self.amplitudes.iter_mut().enumerate() {
            if ((k >> qubit) & 1 == 1) == bit {
                *a /= norm;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(MeasurementOutcome {
            qubit,
            bit,
            probability,
        })
    }

    pub fn fidelity(&self, other: &DenseState) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return invalid("dense states of different sizes");
        }
        let inner: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(inner.norm_sqr())
    }
}

pub fn densify(state: &SparseState) -> Result<DenseState> {
    let mut dense = DenseState::zero(state.num_qubits())?;
    dense.amplitudes[0] = Complex64::new(0.0, 0.0);
    for &(k, a) in state.entries() {
        dense.amplitudes[k as usize] = a;
    }
    Ok(dense)
}

/// Sparse copy of `state`, dropping amplitudes below the prune threshold.
pub fn sparsify(state: &DenseState) -> SparseState {
    SparseState::from_amplitudes(
        state.num_qubits,
        state
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD)
            .map(|(k, &a)| (k as u64, a)),
    )
    .expect("dense states are within sparse capacity")
}
