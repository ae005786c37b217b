use serde::{Deserialize, Serialize};

use super::{AncillaA, GadgetReport, Protocol};
use crate::csscode::{
    logical_controlled_phase, logical_pauli, transversal_cnot, transversal_h, Block, LogicalPauli,
};
use crate::error::{Error, Result};
use crate::noise::Machine;
use crate::statevec::SparseState;

/// One step of a branch correction on the ancilla blocks (indices 0..3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fix {
    Not(usize),
    Cnot(usize, usize),
}

/// Corrections after reading `(m₁, m₂)`, indexed by `m₁ + 2·m₂`.
///
/// The ancilla holds `|a, b, ab⟩` and the readouts are `m₁ = x + a`,
/// `m₂ = y + b`, so the blocks hold `|x+m₁, y+m₂, (x+m₁)(y+m₂)⟩` and each
/// entry restores `|x, y, xy⟩`.
pub const TOFFOLI_CORRECTIONS: [&[Fix]; 4] = [
    &[],
    &[Fix::Cnot(1, 2), Fix::Not(0)],
    &[Fix::Cnot(0, 2), Fix::Not(1)],
    &[Fix::Not(0), Fix::Not(1), Fix::Cnot(0, 2), Fix::Cnot(1, 2), Fix::Not(2)],
];

/// Where the Toffoli gadget left its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToffoliOutput {
    pub blocks: [Block; 3],
}

impl Protocol {
    /// Reads a block's logical value at a protocol branch point; a failed
    /// decode flags a logical error and falls back to the raw parity.
    fn branch_readout(&self, m: &mut Machine, block: Block, label: &str, report: &mut GadgetReport) -> Result<bool> {
        let forced = m.next_forced_logical();
        if let Some(v) = forced {
            let code = &self.code;
            m.state_mut()
                .postselect(|key| code.decode_word(block.word(key)).is_ok_and(|(b, _)| b == v))?;
        }
        let mut word = 0u64;
        for i in 0..block.len {
            if m.measure(block.qubit(i))? {
                word |= 1 << i;
            }
        }
        let bit = match self.code.decode_word(word) {
            Ok((bit, _)) => bit,
            Err(Error::DecodeFailure { .. }) => {
                report.logical_error = true;
                word.count_ones() & 1 == 1
            }
            Err(e) => return Err(e),
        };
        report.outcome(label, bit);
        Ok(bit)
    }

    /// Takes `|x⟩|y⟩` in `q1, q2` to `|x, y, xy⟩` in the ancilla blocks, consuming
    /// the ancilla and leaving `q1, q2` measured.
    pub fn toffoli_two_to_three(&self, m: &mut Machine, q1: Block, q2: Block, ancilla: &AncillaA) -> Result<GadgetReport> {
        let mut report = GadgetReport::begin("toffoli_two_to_three", m);
        let [a1, a2, a3] = ancilla.blocks;
        transversal_cnot(m, &self.code, a1, q1)?;
        transversal_cnot(m, &self.code, a2, q2)?;
        let m1 = self.branch_readout(m, q1, "m1", &mut report)?;
        let m2 = self.branch_readout(m, q2, "m2", &mut report)?;
        let blocks = [a1, a2, a3];
        for fix in TOFFOLI_CORRECTIONS[usize::from(m1) + 2 * usize::from(m2)] {
            match *fix {
                Fix::Not(i) => {
                    logical_pauli(m, &self.code, blocks[i], LogicalPauli::X)?;
                    report.corrections.push(format!("NOT a{}", i + 1));
                }
                Fix::Cnot(c, t) => {
                    transversal_cnot(m, &self.code, blocks[c], blocks[t])?;
                    report.corrections.push(format!("CNOT a{}->a{}", c + 1, t + 1));
                }
            }
        }
        Ok(report.finish(m))
    }

    /// Encoded Toffoli `|x, y, z⟩ → |x, y, z + xy⟩` using a prepared ancilla.
    ///
    /// After the two-to-three step the third data block is XORed into the
    /// product block, rotated and read; reading 1 leaves the phase
    /// `(−1)^{xy + c}` on the outputs, removed by a logical CZ and Z. The
    /// data blocks end up measured and the result lives in the ancilla blocks.
    pub fn toffoli_full(
        &self,
        m: &mut Machine,
        q1: Block,
        q2: Block,
        q3: Block,
        ancilla: &AncillaA,
    ) -> Result<(ToffoliOutput, GadgetReport)> {
        let mut report = GadgetReport::begin("toffoli", m);
        let sub = self.toffoli_two_to_three(m, q1, q2, ancilla)?;
        report.absorb(sub);
        let [a1, a2, a3] = ancilla.blocks;
        transversal_cnot(m, &self.code, q3, a3)?;
        transversal_h(m, &self.code, q3)?;
        if self.branch_readout(m, q3, "m3", &mut report)? {
            logical_controlled_phase(m, &self.code, a1, a2)?;
            logical_pauli(m, &self.code, a3, LogicalPauli::Z)?;
            report.corrections.push("CZ a1,a2".into());
            report.corrections.push("Z a3".into());
        }
        Ok((ToffoliOutput { blocks: [a1, a2, a3] }, report.finish(m)))
    }

    /// Prepares an ancilla in a separate register, appends it, runs the
    /// Toffoli on `q1, q2, q3` and removes the measured data blocks.
    ///
    /// The returned blocks are renumbered for the smaller register.
    pub fn toffoli(&self, m: &mut Machine, q1: Block, q2: Block, q3: Block) -> Result<(ToffoliOutput, GadgetReport)> {
        let mut report = GadgetReport::begin("toffoli", m);
        let rounds = self.config.ancilla_rounds;
        let ((ancilla, sub), prepared) = m.isolated(0, |m| self.prepare_ancilla_a(m, rounds))?;
        report.absorb(sub);
        let offset = m.tensor_in(&check_ancilla_register(prepared, &ancilla)?)?;
        let ancilla = AncillaA {
            blocks: [0, 1, 2].map(|i| Block::new(offset + i * self.code.n(), self.code.n())),
            parities: ancilla.parities,
        };
        let (out, sub) = self.toffoli_full(m, q1, q2, q3, &ancilla)?;
        report.absorb(sub);
        let removed: Vec<usize> = [q1, q2, q3].iter().flat_map(|b| b.qubits()).collect();
        m.discard(&removed)?;
        let blocks = out.blocks.map(|b| b.shifted_down(&removed));
        Ok((ToffoliOutput { blocks }, report.finish(m)))
    }
}

/// Checks the prepared register is exactly the three ancilla blocks.
fn check_ancilla_register(state: SparseState, ancilla: &AncillaA) -> Result<SparseState> {
    let expected = ancilla.blocks.iter().map(Block::end).max().unwrap_or(0);
    if state.num_qubits() != expected || ancilla.blocks[0].start != 0 {
        return Err(Error::Internal(format!(
            "ancilla register has {} qubits, expected {expected}",
            state.num_qubits()
        )));
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over the unencoded five-bit picture: for every `x, y, a, b`
    /// the table must map `(x+m₁, y+m₂, (x+m₁)(y+m₂))` back to `(x, y, xy)`.
    #[test]
    fn correction_table_restores_products() {
        for (x, y, a, b) in (0..16u8).map(|i| (i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1)) {
            let (m1, m2) = (x ^ a, y ^ b);
            let mut reg = [a, b, a & b];
            for fix in TOFFOLI_CORRECTIONS[usize::from(m1) + 2 * usize::from(m2)] {
                match *fix {
                    Fix::Not(i) => reg[i] ^= 1,
                    Fix::Cnot(c, t) => reg[t] ^= reg[c],
                }
            }
            assert_eq!(reg, [x, y, x & y], "x={x} y={y} a={a} b={b}");
        }
    }
}
