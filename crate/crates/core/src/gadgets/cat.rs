use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::noise::Machine;
use crate::statevec::StandardGate;

/// Qubits holding a cat state `(|0…0⟩ + |1…1⟩)/√2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatBlock {
    pub qubits: Vec<usize>,
    pub verified: bool,
    pub checks: usize,
}

/// Allocates `l` qubits above the register and entangles them with a
/// Hadamard followed by a CNOT chain.
pub fn prepare_cat(m: &mut Machine, l: usize) -> Result<CatBlock> {
    if l < 2 {
        return invalid(format!("a cat needs at least 2 qubits, got {l}"));
    }
    let first = m.alloc(l)?;
    let qubits: Vec<usize> = (first..first + l).collect();
    m.apply(StandardGate::H, &[qubits[0]])?;
    for w in qubits.windows(2) {
        m.apply(StandardGate::Cnot, &[w[0], w[1]])?;
    }
    Ok(CatBlock {
        qubits,
        verified: false,
        checks: 0,
    })
}

/// The pairs compared by a verification with `num_checks` checks.
///
/// The first `l − 1` pairs follow a random Hamiltonian path through the cat,
/// so any nonconstant bit pattern disagrees on at least one of them; further
/// checks use uniformly random pairs.
fn verification_pairs<R: Rng + ?Sized>(l: usize, num_checks: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..l).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = order
        .windows(2)
        .map(|w| (w[0], w[1]))
        .take(num_checks)
        .collect();
    while pairs.len() < num_checks {
        let a = rng.random_range(0..l);
        let b = (a + rng.random_range(1..l)) % l;
        pairs.push((a, b));
    }
    pairs
}

/// Compares pairs of cat qubits through fresh parity qubits. Returns `true`
/// if every comparison read 0. Stops at the first disagreement.
pub fn verify_cat(m: &mut Machine, cat: &mut CatBlock, num_checks: usize) -> Result<bool> {
    let pairs = verification_pairs(cat.qubits.len(), num_checks, m.rng());
    for (a, b) in pairs {
        let aux = m.alloc(1)?;
        m.apply(StandardGate::Cnot, &[cat.qubits[a], aux])?;
        m.apply(StandardGate::Cnot, &[cat.qubits[b], aux])?;
        let bit = m.measure(aux)?;
        m.discard(&[aux])?;
        cat.checks += 1;
        if bit {
            return Ok(false);
        }
    }
    cat.verified = true;
    Ok(true)
}

/// Measures every cat qubit in the X basis (Hadamard then measurement, one
/// qubit at a time), removes the cat and returns the parity of the readings.
///
/// With `forced = Some(v)` the last qubit's outcome is chosen so the parity is `v`.
pub fn read_cat_parity(m: &mut Machine, cat: &CatBlock, forced: Option<bool>) -> Result<bool> {
    let mut parity = false;
    let last = cat.qubits.len() - 1;
    for (i, &q) in cat.qubits.iter().enumerate() {
        m.apply(StandardGate::H, &[q])?;
        parity ^= match forced {
            Some(v) if i == last => m.measure_forced(q, v ^ parity)?,
            _ => m.measure(q)?,
        };
    }
    discard_cat(m, cat)?;
    Ok(parity)
}

/// Measures and removes the cat's qubits.
pub(crate) fn discard_cat(m: &mut Machine, cat: &CatBlock) -> Result<()> {
    for &q in &cat.qubits {
        if m.state().definite_value(q).is_none() {
            m.measure(q)?;
        }
    }
    m.discard(&cat.qubits)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn path_pairs_catch_every_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in 2..8usize {
            for _ in 0..20 {
                let pairs = verification_pairs(l, l, &mut rng);
                assert_eq!(pairs.len(), l);
                for pattern in 1..(1u32 << l) - 1 {
                    let bit = |q: usize| (pattern >> q) & 1;
                    assert!(pairs.iter().any(|&(a, b)| bit(a) != bit(b)));
                }
            }
        }
    }
}
