use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{sample_pauli, Pauli, PauliString};
use crate::error::{invalid, Result};

/// Distribution of the fault that follows a failed gate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Channel {
    /// With probability `p_gate`, one uniformly random non-identity Pauli on
    /// the whole gate support.
    #[default]
    UniformPauli,
    /// Each qubit of the support independently suffers X, Y or Z with
    /// probability `p_gate`.
    Depolarizing,
}

/// Per-gate failure model.
///
/// When disabled, or when a probability is zero, no random numbers are drawn
/// for that kind of fault, so a noiseless run consumes exactly the same
/// stream as the ideal circuit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p_gate: f64,
    pub p_meas: f64,
    /// Per-qubit fault probability for qubits idle during a gate. Zero by default.
    #[serde(default)]
    pub p_idle: f64,
    #[serde(default)]
    pub channel: Channel,
    pub enabled: bool,
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("{name} = {p} is not a probability"));
    }
    Ok(())
}

impl NoiseModel {
    /// Gate failure probability `p`, with the measurement flip probability equal to it.
    pub fn new(p: f64) -> Result<Self> {
        check_probability("p_gate", p)?;
        Ok(Self {
            p_gate: p,
            p_meas: p,
            p_idle: 0.0,
            channel: Channel::UniformPauli,
            enabled: true,
        })
    }

    pub fn noiseless() -> Self {
        Self {
            p_gate: 0.0,
            p_meas: 0.0,
            p_idle: 0.0,
            channel: Channel::UniformPauli,
            enabled: false,
        }
    }

    pub fn with_measurement(mut self, p_meas: f64) -> Result<Self> {
        check_probability("p_meas", p_meas)?;
        self.p_meas = p_meas;
        Ok(self)
    }

    pub fn with_idle(mut self, p_idle: f64) -> Result<Self> {
        check_probability("p_idle", p_idle)?;
        self.p_idle = p_idle;
        Ok(self)
    }

    pub fn with_channel(mut self, channel: Channel) -> Self {
        self.channel = channel;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p_gate", self.p_gate)?;
        check_probability("p_meas", self.p_meas)?;
        check_probability("p_idle", self.p_idle)
    }

    pub fn is_noiseless(&self) -> bool {
        !self.enabled || (self.p_gate == 0.0 && self.p_meas == 0.0 && self.p_idle == 0.0)
    }

    /// Draws the fault following one gate on `arity` qubits, if any.
    pub fn sample_gate_fault<R: Rng + ?Sized>(&self, arity: usize, rng: &mut R) -> Option<PauliString> {
        if !self.enabled || self.p_gate == 0.0 {
            return None;
        }
        match self.channel {
            Channel::UniformPauli => (rng.random::<f64>() < self.p_gate)
                .then(|| sample_pauli(arity, rng).expect("gate arity is 1..=4")),
            Channel::Depolarizing => {
                let fault = PauliString(
                    (0..arity)
                        .map(|_| {
                            if rng.random::<f64>() < self.p_gate {
                                Pauli::from_digit(rng.random_range(1..4))
                            } else {
                                Pauli::I
                            }
                        })
                        .collect(),
                );
                (!fault.is_identity()).then_some(fault)
            }
        }
    }

    pub fn sample_measurement_flip<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        self.enabled && self.p_meas > 0.0 && rng.random::<f64>() < self.p_meas
    }

    pub fn sample_idle_fault<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Pauli> {
        (self.enabled && self.p_idle > 0.0 && rng.random::<f64>() < self.p_idle)
            .then(|| Pauli::from_digit(rng.random_range(1..4)))
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::noiseless()
    }
}
