use super::{Basis, GadgetReport, Protocol};
use crate::csscode::{measure_logical, transversal_cnot, transversal_h, Block};
use crate::error::{Error, Result};
use crate::noise::Machine;
use crate::statevec::StandardGate;

impl Protocol {
    /// Unitary (not fault-tolerant) encoder of `|s₀⟩` into `block`, which
    /// must start in `|0…0⟩`: Hadamards on the pivots of the reduced `C⊥`
    /// generator, then CNOTs from each pivot along its row.
    pub fn encode_zero(&self, m: &mut Machine, block: Block) -> Result<()> {
        let dual = self.code.classical().dual();
        for row in dual.generator().rows() {
            let ones = row.ones_positions();
            m.apply(StandardGate::H, &[block.qubit(ones[0])])?;
        }
        for row in dual.generator().rows() {
            let ones = row.ones_positions();
            for &j in &ones[1..] {
                m.apply(StandardGate::Cnot, &[block.qubit(ones[0]), block.qubit(j)])?;
            }
        }
        Ok(())
    }

    /// Prepares `|s₀⟩` in a new block above the register and verifies it.
    ///
    /// The encoder alone is not fault tolerant, so the result is checked:
    /// the block is XORed into a disposable second encoded block whose
    /// logical readout must be 0 with a clean word, and both syndromes must
    /// read zero, phase basis first. Any failure discards the block and
    /// starts over.
    pub fn prepare_logical_zero_ft(&self, m: &mut Machine) -> Result<(Block, GadgetReport)> {
        let mut report = GadgetReport::begin("prepare_logical_zero_ft", m);
        let n = self.code.n();
        for attempt in 0..self.config.prep_retry_cap {
            let block = Block::new(m.alloc(n)?, n);
            self.encode_zero(m, block)?;
            let copy = Block::new(m.alloc(n)?, n);
            self.encode_zero(m, copy)?;
            transversal_cnot(m, &self.code, block, copy)?;
            let readout = measure_logical(m, &self.code, copy, None);
            m.discard(&copy.qubits().collect::<Vec<_>>())?;
            let mut clean = match readout {
                Ok(r) => !r.bit && r.word == r.corrected,
                Err(Error::DecodeFailure { .. }) => false,
                Err(e) => return Err(e),
            };
            // Phase check first: bit flips are what turn |s₀⟩ into |s₁⟩, and
            // the bit-flip check run last also sees those left by the rotations.
            if clean {
                transversal_h(m, &self.code, block)?;
                clean = self.zero_syndrome(m, block, Basis::C, &mut report)?;
                transversal_h(m, &self.code, block)?;
            }
            if clean {
                clean = self.zero_syndrome(m, block, Basis::S, &mut report)?;
            }
            if clean {
                report.outcome(format!("accepted attempt {attempt}"), true);
                return Ok((block, report.finish(m)));
            }
            report.retries += 1;
            for q in block.qubits() {
                m.measure(q)?;
            }
            m.discard(&block.qubits().collect::<Vec<_>>())?;
        }
        Err(Error::GadgetAbort {
            gadget: "logical zero preparation",
            attempts: self.config.prep_retry_cap,
        })
    }

    fn zero_syndrome(&self, m: &mut Machine, block: Block, basis: Basis, report: &mut GadgetReport) -> Result<bool> {
        match self.measure_full_syndrome(m, block, basis) {
            Ok(record) => {
                let zero = record.accepted == Some(0);
                report.syndromes.push(record);
                Ok(zero)
            }
            Err(Error::SyndromeFailure { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}
