use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gadgets::GadgetConfig;
use crate::noise::Channel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Correction cycles on an idle encoded qubit.
    Memory,
    /// A random transversal gate on random encoded inputs.
    TransversalGate,
    /// The Toffoli gadget on random basis inputs.
    Toffoli,
    /// The `|A⟩` factory.
    Ancilla,
}

fn default_rounds() -> usize {
    1
}

fn default_trials() -> usize {
    10_000
}

fn default_r_consistent() -> usize {
    3
}

fn default_true() -> bool {
    true
}

/// One sweep over physical error rates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Generator file of the classical code; the bundled 7-qubit code when absent.
    #[serde(default)]
    pub code_file: Option<PathBuf>,
    pub p_values: Vec<f64>,
    /// Correction cycles per memory trial, or cat readouts per ancilla.
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_r_consistent")]
    pub r_consistent: usize,
    /// Base path for the `.csv` and `.json` outputs.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Measurement flip probability; equal to each swept `p` when absent.
    #[serde(default)]
    pub p_meas: Option<f64>,
    #[serde(default)]
    pub channel: Channel,
    /// Run the unencoded single-qubit comparison (memory experiments).
    #[serde(default = "default_true")]
    pub baseline: bool,
    #[serde(default)]
    pub gadget: GadgetConfig,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, p_values: Vec<f64>, trials: usize, seed: u64) -> Self {
        Self {
            kind,
            code_file: None,
            p_values,
            rounds: default_rounds(),
            trials,
            seed,
            r_consistent: default_r_consistent(),
            output: None,
            p_meas: None,
            channel: Channel::default(),
            baseline: true,
            gadget: GadgetConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.p_values.is_empty() {
            return invalid("no p values given");
        }
        for &p in self.p_values.iter().chain(self.p_meas.iter()) {
            if !(0.0..=1.0).contains(&p) {
                return invalid(format!("{p} is not a probability"));
            }
        }
        if self.rounds == 0 {
            return invalid("rounds must be at least 1");
        }
        if self.r_consistent == 0 {
            return invalid("r_consistent must be at least 1");
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }
}
