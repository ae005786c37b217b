//! Monte Carlo experiments: noise sweeps of the protocols, logical failure
//! rates with confidence intervals, and power-law fits.
//!
//! Trial `i` of every sweep point draws from stream `i` of the master seed,
//! so results do not depend on scheduling and any trial can be replayed.

mod config;
mod export;
mod stats;
mod trials;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{ExperimentConfig, ExperimentKind};
pub use export::{export_results, read_results, CSV_HEADER};
pub use stats::{fit_scaling, wilson_interval, ScalingFit, Z_99};
pub use trials::ancilla_a_amplitudes;

use crate::csscode::CssCode;
use crate::error::{invalid, Result};
use crate::f2linalg::read_code;
use crate::gadgets::Protocol;
use trials::TrialOutcome;

/// Failure counts of the unencoded comparison qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineRecord {
    pub failures: usize,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Aggregate of all trials at one physical error rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub p: f64,
    pub trials: usize,
    pub failures: usize,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub retries_mean: f64,
    pub seconds: f64,
    /// Trials ended by a gadget giving up; they count as failures.
    pub aborted: usize,
    pub gates_mean: f64,
    pub measurements_mean: f64,
    pub baseline: Option<BaselineRecord>,
    /// Mean fidelity with the target state (ancilla experiments).
    pub fidelity_mean: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<ExperimentRecord>,
    pub fit: Option<ScalingFit>,
    pub notes: Vec<String>,
}

impl ExperimentResult {
    pub fn record(&self, p: f64) -> Option<&ExperimentRecord> {
        self.records.iter().find(|r| r.p == p)
    }

    /// Some sweep point had every trial end in a gadget abort.
    pub fn abort_saturated(&self) -> bool {
        self.records.iter().any(|r| r.aborted == r.trials)
    }
}

fn protocol(config: &ExperimentConfig) -> Result<Protocol> {
    let code = match &config.code_file {
        Some(path) => CssCode::new(read_code(path)?)?,
        None => CssCode::steane(),
    };
    let mut gadget = config.gadget;
    gadget.r_consistent = config.r_consistent;
    Ok(Protocol::new(code).with_config(gadget))
}

fn aggregate(p: f64, outcomes: &[TrialOutcome], seconds: f64) -> ExperimentRecord {
    let trials = outcomes.len();
    let n = trials as f64;
    let failures = outcomes.iter().filter(|o| o.failed).count();
    let (ci_lo, ci_hi) = wilson_interval(failures, trials, Z_99);
    let baseline = outcomes[0].baseline_failed.is_some().then(|| {
        let failures = outcomes.iter().filter(|o| o.baseline_failed == Some(true)).count();
        let (ci_lo, ci_hi) = wilson_interval(failures, trials, Z_99);
        BaselineRecord {
            failures,
            rate: failures as f64 / n,
            ci_lo,
            ci_hi,
        }
    });
    let fidelity_mean = outcomes[0]
        .fidelity
        .is_some()
        .then(|| outcomes.iter().filter_map(|o| o.fidelity).sum::<f64>() / n);
    ExperimentRecord {
        p,
        trials,
        failures,
        rate: failures as f64 / n,
        ci_lo,
        ci_hi,
        retries_mean: outcomes.iter().map(|o| o.retries as f64).sum::<f64>() / n,
        seconds,
        aborted: outcomes.iter().filter(|o| o.aborted).count(),
        gates_mean: outcomes.iter().map(|o| o.gates as f64).sum::<f64>() / n,
        measurements_mean: outcomes.iter().map(|o| o.measurements as f64).sum::<f64>() / n,
        baseline,
        fidelity_mean,
    }
}

type TrialFn = fn(&Protocol, &ExperimentConfig, f64, u64) -> Result<TrialOutcome>;

fn sweep(config: &ExperimentConfig, trial: TrialFn) -> Result<ExperimentResult> {
    config.validate()?;
    let proto = protocol(config)?;
    let mut records = Vec::with_capacity(config.p_values.len());
    for &p in &config.p_values {
        let start = Instant::now();
        let outcomes = (0..config.trials as u64)
            .into_par_iter()
            .map(|i| trial(&proto, config, p, i))
            .collect::<Result<Vec<_>>>()?;
        records.push(aggregate(p, &outcomes, start.elapsed().as_secs_f64()));
    }
    let mut notes = vec![
        "failures are judged after one noiseless correction cycle per block".to_string(),
    ];
    if matches!(config.kind, ExperimentKind::Toffoli | ExperimentKind::Ancilla) {
        notes.push("|s0> blocks come from the unitary encoder followed by verification and retry".to_string());
    }
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.p, r.rate)).collect();
    let fit = match fit_scaling(&points) {
        Ok(fit) => {
            if !fit.excluded.is_empty() {
                notes.push(format!("fit excludes zero-failure points p = {:?}", fit.excluded));
            }
            Some(fit)
        }
        Err(e) => {
            notes.push(format!("no scaling fit: {e}"));
            None
        }
    };
    Ok(ExperimentResult {
        config: config.clone(),
        records,
        fit,
        notes,
    })
}

/// Correction cycles on an idle encoded qubit, alongside an unencoded qubit
/// exposed to as many gate slots.
pub fn memory_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    if config.kind != ExperimentKind::Memory {
        return invalid("memory_experiment needs kind = memory");
    }
    sweep(config, trials::memory_trial)
}

/// Gadget runs on random encoded inputs followed by one correction cycle.
pub fn gadget_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let trial: TrialFn = match config.kind {
        ExperimentKind::TransversalGate => trials::transversal_trial,
        ExperimentKind::Toffoli => trials::toffoli_trial,
        ExperimentKind::Ancilla => trials::ancilla_trial,
        ExperimentKind::Memory => return invalid("gadget_experiment does not run memory sweeps"),
    };
    sweep(config, trial)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    match config.kind {
        ExperimentKind::Memory => memory_experiment(config),
        _ => gadget_experiment(config),
    }
}

/// Logical error rates of `|s₀⟩` prepared with and without verification,
/// each judged after a noiseless correction cycle. Returns
/// `(verified failures, unverified failures)` over `trials` paired trials.
pub fn zero_preparation_comparison(p: f64, trials: usize, seed: u64) -> Result<(usize, usize)> {
    let config = ExperimentConfig::new(ExperimentKind::Memory, vec![p], trials, seed);
    let proto = protocol(&config)?;
    let counts = (0..trials as u64)
        .into_par_iter()
        .map(|i| trials::zero_prep_pair(&proto, &config, p, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(counts
        .iter()
        .fold((0, 0), |(a, b), &(x, y)| (a + usize::from(x), b + usize::from(y))))
}
