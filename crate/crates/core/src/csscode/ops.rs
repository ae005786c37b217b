use super::{Block, CssCode};
use crate::error::{invalid, Error, Result};
use crate::noise::Machine;
use crate::statevec::StandardGate;

/// Which logical Pauli to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicalPauli {
    X,
    Z,
}

/// Outcome of a destructive logical measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalReadout {
    pub bit: bool,
    /// The reported physical word, qubit `i` of the block at bit `i`.
    pub word: u64,
    /// Nearest codeword of `C`.
    pub corrected: u64,
}

fn check_block(code: &CssCode, m: &Machine, block: Block) -> Result<()> {
    if block.len != code.n() || block.end() > m.num_qubits() {
        return invalid(format!(
            "block {block:?} is not a {}-qubit block of this {}-qubit register",
            code.n(),
            m.num_qubits()
        ));
    }
    Ok(())
}

fn check_pair(code: &CssCode, m: &Machine, a: Block, b: Block) -> Result<()> {
    check_block(code, m, a)?;
    check_block(code, m, b)?;
    if a.overlaps(&b) {
        return invalid(format!("blocks {a:?} and {b:?} overlap"));
    }
    Ok(())
}

/// Bitwise CNOT from `control` into `target`: logical XOR.
pub fn transversal_cnot(m: &mut Machine, code: &CssCode, control: Block, target: Block) -> Result<()> {
    check_pair(code, m, control, target)?;
    for i in 0..code.n() {
        m.apply(StandardGate::Cnot, &[control.qubit(i), target.qubit(i)])?;
    }
    Ok(())
}

/// Bitwise Hadamard: logical Hadamard, exchanging the s- and c-bases.
pub fn transversal_h(m: &mut Machine, code: &CssCode, block: Block) -> Result<()> {
    check_block(code, m, block)?;
    m.apply_layer(StandardGate::H, &block.qubits().collect::<Vec<_>>())
}

/// Bitwise `diag(1, i)` (or its inverse); the logical phase is
/// [`CssCode::phase_sign`].
pub fn transversal_phase(m: &mut Machine, code: &CssCode, block: Block, dagger: bool) -> Result<()> {
    check_block(code, m, block)?;
    if code.phase_sign().is_none() {
        return Err(Error::UnsupportedCode(
            "bitwise phase needs a punctured doubly-even self-dual code".into(),
        ));
    }
    let gate = if dagger {
        StandardGate::PhaseIDg
    } else {
        StandardGate::PhaseI
    };
    for q in block.qubits() {
        m.apply(gate, &[q])?;
    }
    Ok(())
}

/// Bitwise CZ: `|s_a⟩|s_b⟩ → (−1)^{ab}|s_a⟩|s_b⟩`.
pub fn logical_controlled_phase(m: &mut Machine, code: &CssCode, a: Block, b: Block) -> Result<()> {
    check_pair(code, m, a, b)?;
    for i in 0..code.n() {
        m.apply(StandardGate::Cz, &[a.qubit(i), b.qubit(i)])?;
    }
    Ok(())
}

/// Bitwise X or Z on the logical operator support.
pub fn logical_pauli(m: &mut Machine, code: &CssCode, block: Block, which: LogicalPauli) -> Result<()> {
    check_block(code, m, block)?;
    let gate = match which {
        LogicalPauli::X => StandardGate::X,
        LogicalPauli::Z => StandardGate::Z,
    };
    for i in code.logical_support().ones_positions() {
        m.apply(gate, &[block.qubit(i)])?;
    }
    Ok(())
}

/// Measures every qubit of the block, corrects the reported word to the
/// nearest codeword and returns its weight parity.
///
/// With `forced = Some(v)` the block is first postselected onto words that
/// decode to `v`, which lets tests walk every branch of a protocol.
pub fn measure_logical(
    m: &mut Machine,
    code: &CssCode,
    block: Block,
    forced: Option<bool>,
) -> Result<LogicalReadout> {
    check_block(code, m, block)?;
    if let Some(v) = forced {
        m.state_mut().postselect(|key| {
            code.decode_word(block.word(key))
                .is_ok_and(|(bit, _)| bit == v)
        })?;
    }
    let mut word = 0u64;
    for i in 0..code.n() {
        if m.measure(block.qubit(i))? {
            word |= 1 << i;
        }
    }
    let (bit, corrected) = code.decode_word(word)?;
    Ok(LogicalReadout {
        bit,
        word,
        corrected,
    })
}
