use serde::{Deserialize, Serialize};

use super::SyndromeRecord;
use crate::error::Result;
use crate::noise::{ErrorEvent, Machine};

/// A labelled classical outcome observed during a protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub label: String,
    pub bit: bool,
}

/// What a protocol run observed and did.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub gadget: String,
    pub outcomes: Vec<Outcome>,
    pub syndromes: Vec<SyndromeRecord>,
    /// Conditional corrections in application order.
    pub corrections: Vec<String>,
    /// Rejected cats, preparations and repeated readouts.
    pub retries: usize,
    /// Set when a classical decode failed, i.e. more errors than the code corrects.
    pub logical_error: bool,
    pub gates: u64,
    pub measurements: u64,
    /// Faults that fired while the protocol ran.
    pub errors: Vec<ErrorEvent>,
    #[serde(skip)]
    start: Option<(usize, u64, u64)>,
}

impl GadgetReport {
    /// Starts a report, remembering the machine's counters.
    pub(crate) fn begin(gadget: &str, m: &Machine) -> Self {
        Self {
            gadget: gadget.to_string(),
            start: Some((m.log().len(), m.gate_count(), m.measurement_count())),
            ..Self::default()
        }
    }

    /// Records counters and forwards the faults logged since [`begin`](Self::begin).
    pub(crate) fn finish(mut self, m: &Machine) -> Self {
        if let Some((log, gates, meas)) = self.start.take() {
            self.errors = m.log().events()[log..].to_vec();
            self.gates = m.gate_count() - gates;
            self.measurements = m.measurement_count() - meas;
        }
        self
    }

    /// Merges a nested protocol's observations.
    pub(crate) fn absorb(&mut self, sub: GadgetReport) {
        self.outcomes.extend(sub.outcomes);
        self.syndromes.extend(sub.syndromes);
        self.corrections.extend(sub.corrections);
        self.retries += sub.retries;
        self.logical_error |= sub.logical_error;
    }

    pub(crate) fn outcome(&mut self, label: impl Into<String>, bit: bool) {
        self.outcomes.push(Outcome {
            label: label.into(),
            bit,
        });
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}
