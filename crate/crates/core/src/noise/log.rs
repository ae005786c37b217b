use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PauliString;
use crate::error::Result;

/// Where a fault happened: the sequence number of a gate or measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Gate(u64),
    Measurement(u64),
    /// Idle qubit during the given gate.
    Idle(u64),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Gate(i) => write!(f, "gate:{i}"),
            Location::Measurement(i) => write!(f, "meas:{i}"),
            Location::Idle(i) => write!(f, "idle:{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEvent {
    /// Position in the log.
    pub step: u64,
    pub location: Location,
    pub qubits: Vec<usize>,
    /// Pauli pattern over `qubits`, or `MEAS_FLIP`.
    pub pauli: String,
    /// Placed by a fault plan rather than drawn at random.
    pub injected: bool,
}

impl ErrorEvent {
    pub(crate) fn gate(index: u64, targets: &[usize], fault: &PauliString, injected: bool) -> Self {
        // Only the non-identity factors matter for diagnosis.
        let (qubits, pauli): (Vec<usize>, String) = targets
            .iter()
            .zip(&fault.0)
            .filter(|(_, p)| p.symbol() != 'I')
            .map(|(&q, p)| (q, p.symbol()))
            .unzip();
        Self {
            step: 0,
            location: Location::Gate(index),
            qubits,
            pauli,
            injected,
        }
    }

    pub(crate) fn measurement_flip(index: u64, qubit: usize, injected: bool) -> Self {
        Self {
            step: 0,
            location: Location::Measurement(index),
            qubits: vec![qubit],
            pauli: "MEAS_FLIP".into(),
            injected,
        }
    }
}

/// Ordered record of every fault that fired.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorLog {
    events: Vec<ErrorEvent>,
}

impl ErrorLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, mut event: ErrorEvent) {
        event.step = self.events.len() as u64;
        self.events.push(event);
    }

    pub fn events(&self) -> &[ErrorEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn clear(&mut self) {
        self.events.clear();
    }

    /// CSV with header `step,location,qubits,pauli`; qubits are `;`-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,location,qubits,pauli\n");
        for e in &self.events {
            let qubits: Vec<String> = e.qubits.iter().map(usize::to_string).collect();
            out.push_str(&format!("{},{},{},{}\n", e.step, e.location, qubits.join(";"), e.pauli));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}
