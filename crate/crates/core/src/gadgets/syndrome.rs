use serde::{Deserialize, Serialize};

use super::cat::{discard_cat, prepare_cat, verify_cat};
use super::{GadgetReport, Protocol};
use crate::csscode::{transversal_h, Block};
use crate::error::{invalid, Error, Result};
use crate::noise::Machine;
use crate::statevec::StandardGate;

/// Which errors a syndrome round looks at: bit flips (`S`) or, after a
/// transversal Hadamard, phase flips (`C`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    S,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyndromeBit {
    pub bit: bool,
    /// Cats rejected before one passed verification.
    pub rejected_cats: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyndromeRound {
    /// Syndrome word, check `i` at bit `i`.
    pub syndrome: u64,
    pub accepted: bool,
}

/// All rounds of one repeated syndrome measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyndromeRecord {
    pub basis: Basis,
    pub rounds: Vec<SyndromeRound>,
    pub accepted: Option<u64>,
    pub rejected_cats: usize,
}

impl Protocol {
    /// One syndrome bit `row · x` of the block's bit-error pattern `x`.
    ///
    /// A verified cat with one qubit per support position of `row` is
    /// rotated by Hadamards into the even-parity superposition, each data
    /// qubit on the support is XORed into its own cat qubit, and the parity
    /// of the cat readout is returned.
    pub fn measure_syndrome_bit(&self, m: &mut Machine, block: Block, row: u64) -> Result<SyndromeBit> {
        let support: Vec<usize> = (0..block.len).filter(|i| (row >> i) & 1 == 1).collect();
        if support.len() < 2 || row >> block.len != 0 {
            return invalid(format!("check row {row:#b} does not fit the block"));
        }
        let checks = self.config.verification_checks.unwrap_or(support.len());
        let mut rejected_cats = 0;
        let cat = loop {
            if rejected_cats == self.config.cat_retry_cap {
                return Err(Error::GadgetAbort {
                    gadget: "cat preparation",
                    attempts: rejected_cats,
                });
            }
            let mut cat = prepare_cat(m, support.len())?;
            if verify_cat(m, &mut cat, checks)? {
                break cat;
            }
            discard_cat(m, &cat)?;
            rejected_cats += 1;
        };
        m.apply_layer(StandardGate::H, &cat.qubits)?;
        for (&d, &c) in support.iter().zip(&cat.qubits) {
            m.apply(StandardGate::Cnot, &[block.qubit(d), c])?;
        }
        let mut bit = false;
        for &q in &cat.qubits {
            bit ^= m.measure(q)?;
        }
        m.discard(&cat.qubits)?;
        Ok(SyndromeBit { bit, rejected_cats })
    }

    /// Repeats full syndrome measurements until `r_consistent` consecutive
    /// rounds agree. Fails with [`Error::SyndromeFailure`] after `syndrome_cap` rounds.
    pub fn measure_full_syndrome(&self, m: &mut Machine, block: Block, basis: Basis) -> Result<SyndromeRecord> {
        let mut record = SyndromeRecord {
            basis,
            rounds: Vec::new(),
            accepted: None,
            rejected_cats: 0,
        };
        let mut streak = 0;
        for _ in 0..self.config.syndrome_cap {
            let mut syndrome = 0u64;
            for (i, &row) in self.code.check_masks().iter().enumerate() {
                let b = self.measure_syndrome_bit(m, block, row)?;
                record.rejected_cats += b.rejected_cats;
                syndrome |= u64::from(b.bit) << i;
            }
            streak = match record.rounds.last() {
                Some(prev) if prev.syndrome == syndrome => streak + 1,
                _ => 1,
            };
            let accepted = streak >= self.config.r_consistent;
            record.rounds.push(SyndromeRound { syndrome, accepted });
            if accepted {
                record.accepted = Some(syndrome);
                return Ok(record);
            }
        }
        Err(Error::SyndromeFailure {
            rounds: self.config.syndrome_cap,
        })
    }

    /// Measures a syndrome and applies the decoded X correction.
    fn correct_basis(&self, m: &mut Machine, block: Block, basis: Basis, report: &mut GadgetReport) -> Result<()> {
        let record = self.measure_full_syndrome(m, block, basis)?;
        let syndrome = record.accepted.expect("accepted record");
        report.retries += record.rejected_cats + record.rounds.len() - self.config.r_consistent;
        report.syndromes.push(record);
        match self.code.error_for_syndrome(syndrome) {
            Ok(error) => {
                for i in (0..block.len).filter(|i| (error >> i) & 1 == 1) {
                    m.apply(StandardGate::X, &[block.qubit(i)])?;
                    let kind = if basis == Basis::S { 'X' } else { 'Z' };
                    report.corrections.push(format!("{kind}@{i}"));
                }
            }
            Err(Error::DecodeFailure { .. }) => report.logical_error = true,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    /// One correction cycle: bit flips in the s-basis, then phase flips as
    /// bit flips between two transversal Hadamards.
    pub fn correct_block(&self, m: &mut Machine, block: Block) -> Result<GadgetReport> {
        let mut report = GadgetReport::begin("correct_block", m);
        self.correct_basis(m, block, Basis::S, &mut report)?;
        transversal_h(m, &self.code, block)?;
        self.correct_basis(m, block, Basis::C, &mut report)?;
        transversal_h(m, &self.code, block)?;
        Ok(report.finish(m))
    }
}
