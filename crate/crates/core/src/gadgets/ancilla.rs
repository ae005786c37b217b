use serde::{Deserialize, Serialize};

use super::cat::{discard_cat, prepare_cat, read_cat_parity, verify_cat};
use super::{GadgetReport, Protocol};
use crate::csscode::{logical_pauli, transversal_h, Block, LogicalPauli};
use crate::error::{invalid, Error, Result};
use crate::noise::Machine;
use crate::statevec::StandardGate;

/// Three blocks holding `½(|s₀s₀s₀⟩ + |s₀s₁s₀⟩ + |s₁s₀s₀⟩ + |s₁s₁s₁⟩)`, i.e.
/// `|a, b, ab⟩` summed over `a, b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AncillaA {
    pub blocks: [Block; 3],
    /// Cat parities read, in order; a 1 was followed by a logical NOT on the third block.
    pub parities: Vec<bool>,
}

impl AncillaA {
    pub fn rounds(&self) -> usize {
        self.parities.len()
    }

    /// The blocks after removing `removed` qubits below them.
    pub fn shifted_down(&self, removed: &[usize]) -> AncillaA {
        AncillaA {
            blocks: self.blocks.map(|b| b.shifted_down(removed)),
            parities: self.parities.clone(),
        }
    }
}

impl Protocol {
    /// Builds `|A⟩` in three new blocks above the register.
    ///
    /// Three verified `|s₀⟩` blocks are rotated to `|c₀⟩`, the uniform
    /// superposition of all eight logical words. A verified `n`-qubit cat
    /// then controls the bitwise phase `(−1)^{a(bc+d)}`, which acts on the
    /// blocks as `(−1)^{v₁v₂+v₃}`, and is read out in the X basis. Parity 0
    /// leaves `|A⟩`; parity 1 leaves `|B⟩ = Σ|a, b, ab+1⟩/2`, which a logical
    /// NOT on the third block turns into `|A⟩`.
    ///
    /// The first readout projects; the remaining `rounds − 1` readouts must
    /// come out 0 in a row, each 1 triggering another NOT and restarting the
    /// count. Every block gets a correction cycle before each readout after
    /// the first. Gives up after `ancilla_readout_cap` readouts.
    pub fn prepare_ancilla_a(&self, m: &mut Machine, rounds: usize) -> Result<(AncillaA, GadgetReport)> {
        if rounds == 0 {
            return invalid("at least one cat readout is needed");
        }
        let mut report = GadgetReport::begin("prepare_ancilla_A", m);
        let mut blocks = Vec::with_capacity(3);
        for _ in 0..3 {
            let (b, sub) = self.prepare_logical_zero_ft(m)?;
            report.absorb(sub);
            blocks.push(b);
        }
        let blocks: [Block; 3] = blocks.try_into().expect("three blocks");
        for &b in &blocks {
            transversal_h(m, &self.code, b)?;
        }

        let n = self.code.n();
        let mut parities = Vec::new();
        let mut quiet = 0;
        while parities.is_empty() || quiet + 1 < rounds {
            if parities.len() == self.config.ancilla_readout_cap {
                return Err(Error::GadgetAbort {
                    gadget: "ancilla preparation",
                    attempts: parities.len(),
                });
            }
            // A bit flip on a block flips every later readout the same way,
            // so repetition only helps if the blocks are corrected in between.
            if !parities.is_empty() {
                for &b in &blocks {
                    let sub = self.correct_block(m, b)?;
                    report.absorb(sub);
                }
            }
            let checks = self.config.verification_checks.unwrap_or(n);
            let mut rejected = 0;
            let cat = loop {
                if rejected == self.config.cat_retry_cap {
                    return Err(Error::GadgetAbort {
                        gadget: "cat preparation",
                        attempts: rejected,
                    });
                }
                let mut cat = prepare_cat(m, n)?;
                if verify_cat(m, &mut cat, checks)? {
                    break cat;
                }
                discard_cat(m, &cat)?;
                rejected += 1;
            };
            report.retries += rejected;
            for i in 0..n {
                let targets = [cat.qubits[i], blocks[0].qubit(i), blocks[1].qubit(i), blocks[2].qubit(i)];
                m.apply(StandardGate::CatPhase4, &targets)?;
            }
            let forced = m.next_forced_cat();
            let parity = read_cat_parity(m, &cat, forced)?;
            report.outcome(format!("cat parity {}", parities.len()), parity);
            if !parities.is_empty() {
                if parity {
                    quiet = 0;
                    report.retries += 1;
                } else {
                    quiet += 1;
                }
            }
            if parity {
                logical_pauli(m, &self.code, blocks[2], LogicalPauli::X)?;
                report.corrections.push("NOT a3".into());
            }
            parities.push(parity);
        }
        Ok((AncillaA { blocks, parities }, report.finish(m)))
    }
}
