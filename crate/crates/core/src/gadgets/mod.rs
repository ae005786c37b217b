//! Fault-tolerant protocols on CSS code blocks: cat-state syndrome
//! extraction, the two-basis correction cycle, verified preparation of
//! `|s₀⟩`, the `|A⟩` ancilla factory and the Toffoli gadget.
//!
//! Every protocol runs on a [`Machine`](crate::noise::Machine), so the same
//! code path serves noiseless checks, random noise and planned fault
//! injection. Scratch qubits (cats, verification qubits, disposable blocks)
//! are allocated above the current register and removed once measured.

mod ancilla;
mod cat;
mod prep;
mod report;
mod syndrome;
mod toffoli;

use serde::{Deserialize, Serialize};

pub use ancilla::AncillaA;
pub use cat::{prepare_cat, read_cat_parity, verify_cat, CatBlock};
pub use report::{GadgetReport, Outcome};
pub use syndrome::{Basis, SyndromeBit, SyndromeRecord};
pub use toffoli::{ToffoliOutput, TOFFOLI_CORRECTIONS};

use crate::csscode::CssCode;

/// Tunable constants of the protocols.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GadgetConfig {
    /// Pair checks per cat verification; `None` means one per cat qubit.
    pub verification_checks: Option<usize>,
    /// Cat preparations attempted before giving up.
    pub cat_retry_cap: usize,
    /// Identical consecutive syndromes required to accept one.
    pub r_consistent: usize,
    /// Syndrome rounds attempted before giving up.
    pub syndrome_cap: usize,
    /// Preparations of `|s₀⟩` attempted before giving up.
    pub prep_retry_cap: usize,
    /// Cat readouts used to build `|A⟩` in the Toffoli gadget.
    pub ancilla_rounds: usize,
    /// Upper bound on cat readouts in one `|A⟩` preparation.
    pub ancilla_readout_cap: usize,
}

impl Default for GadgetConfig {
    fn default() -> Self {
        Self {
            verification_checks: None,
            cat_retry_cap: 10,
            r_consistent: 3,
            syndrome_cap: 25,
            prep_retry_cap: 10,
            ancilla_rounds: 2,
            ancilla_readout_cap: 20,
        }
    }
}

/// A code together with the protocol constants used on it.
#[derive(Clone, Debug)]
pub struct Protocol {
    pub code: CssCode,
    pub config: GadgetConfig,
}

impl Protocol {
    pub fn new(code: CssCode) -> Self {
        Self {
            code,
            config: GadgetConfig::default(),
        }
    }

    pub fn with_config(mut self, config: GadgetConfig) -> Self {
        self.config = config;
        self
    }

    pub fn steane() -> Self {
        Self::new(CssCode::steane())
    }
}
