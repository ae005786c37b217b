use num_complex::Complex64;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{steane_classical, BitVector, DecodeTable, LinearCode};

/// Logical action of bitwise `diag(1, i)` on a code block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhaseSign {
    /// Logical `diag(1, i)`.
    PlusI,
    /// Logical `diag(1, −i)`.
    MinusI,
}

impl PhaseSign {
    /// The phase picked up by `|s₁⟩`, for the gate or its inverse.
    pub fn phase(self, dagger: bool) -> Complex64 {
        let i = match self {
            PhaseSign::PlusI => Complex64::new(0.0, 1.0),
            PhaseSign::MinusI => Complex64::new(0.0, -1.0),
        };
        if dagger {
            i.conj()
        } else {
            i
        }
    }
}

/// A CSS code built from a classical code `C` with `C⊥ ⊆ C` and `dim C − dim C⊥ = 1`.
///
/// `|s_v⟩` is the uniform superposition over the coset `v·1 + C⊥`, where the
/// all-ones word `1` is the logical operator support.
#[derive(Clone, Debug)]
pub struct CssCode {
    classical: LinearCode,
    distance: usize,
    table: DecodeTable,
    logical: BitVector,
    phase_sign: Option<PhaseSign>,
    check_masks: Vec<u64>,
    syndrome_errors: FxHashMap<u64, u64>,
    coset_words: [Vec<u64>; 2],
    coset_of: FxHashMap<u64, bool>,
}

/// Codes whose cosets are enumerated as 64-bit words.
pub const MAX_BLOCK_LENGTH: usize = 32;

fn mask(v: &BitVector) -> u64 {
    v.to_u64().expect("block length fits a word")
}

impl CssCode {
    pub fn new(classical: LinearCode) -> Result<Self> {
        let n = classical.n();
        if n > MAX_BLOCK_LENGTH {
            return Err(Error::Capacity {
                what: "CSS block length",
                attempted: n,
                limit: MAX_BLOCK_LENGTH,
            });
        }
        let class = classical.classify()?;
        if !class.contains_dual {
            return Err(Error::UnsupportedCode("the code does not contain its dual".into()));
        }
        if 2 * classical.k() != n + 1 {
            return Err(Error::UnsupportedCode(format!(
                "[{n},{}] encodes {} logical qubits; only one is supported",
                classical.k(),
                2 * classical.k() as isize - n as isize
            )));
        }
        let logical = BitVector::ones(n);
        let dual = classical.dual();
        if !classical.contains(&logical) || dual.contains(&logical) {
            return Err(Error::UnsupportedCode(
                "the all-ones word is not a logical operator".into(),
            ));
        }
        let distance = classical.min_distance()?;
        let table = DecodeTable::build(&classical, (distance - 1) / 2)?;

        let zero: Vec<u64> = dual.codewords()?.iter().map(mask).collect();
        let ones = mask(&logical);
        let one: Vec<u64> = zero.iter().map(|w| w ^ ones).collect();
        let mut coset_of = FxHashMap::default();
        coset_of.extend(zero.iter().map(|&w| (w, false)));
        coset_of.extend(one.iter().map(|&w| (w, true)));

        let parent = classical.extend_parity().classify()?;
        let phase_sign = if parent.self_dual && parent.doubly_even {
            let dual_ok = zero.iter().all(|w| w.count_ones() % 4 == 0);
            let odd: Vec<u32> = one.iter().map(|w| w.count_ones() % 4).collect();
            match (dual_ok, odd.iter().all(|&r| r == 1), odd.iter().all(|&r| r == 3)) {
                (true, true, _) => Some(PhaseSign::PlusI),
                (true, _, true) => Some(PhaseSign::MinusI),
                _ => None,
            }
        } else {
            None
        };

        let check_masks = classical.parity_check().rows().iter().map(mask).collect();
        let syndrome_errors = table.entries().map(|(s, e)| (mask(s), mask(e))).collect();
        Ok(Self {
            classical,
            distance,
            table,
            logical,
            phase_sign,
            check_masks,
            syndrome_errors,
            coset_words: [zero, one],
            coset_of,
        })
    }

    /// The 7-qubit code from the `[7,4,3]` punctured first-order Reed-Muller code.
    pub fn steane() -> Self {
        Self::new(steane_classical()).expect("the bundled code is a valid CSS code")
    }

    pub fn classical(&self) -> &LinearCode {
        &self.classical
    }

    pub fn n(&self) -> usize {
        self.classical.n()
    }

    pub fn k_logical(&self) -> usize {
        2 * self.classical.k() - self.n()
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn t(&self) -> usize {
        self.table.t()
    }

    pub fn decode_table(&self) -> &DecodeTable {
        &self.table
    }

    /// Support of logical X and of logical Z.
    pub fn logical_support(&self) -> &BitVector {
        &self.logical
    }

    /// Realized sign of bitwise `diag(1, i)`, when the code supports it.
    pub fn phase_sign(&self) -> Option<PhaseSign> {
        self.phase_sign
    }

    /// Parity-check rows as words, qubit `i` at bit `i`.
    pub fn check_masks(&self) -> &[u64] {
        &self.check_masks
    }

    /// Words of the coset `v·1 + C⊥`.
    pub fn coset_words(&self, v: bool) -> &[u64] {
        &self.coset_words[usize::from(v)]
    }

    /// Which coset of `C⊥` in `C` the word lies in, if any.
    pub fn coset_of(&self, word: u64) -> Option<bool> {
        self.coset_of.get(&word).copied()
    }

    pub fn syndrome_of(&self, word: u64) -> u64 {
        self.check_masks
            .iter()
            .enumerate()
            .fold(0, |s, (i, m)| s | (u64::from((word & m).count_ones() & 1) << i))
    }

    /// Error pattern for a syndrome word, or a decode failure.
    pub fn error_for_syndrome(&self, syndrome: u64) -> Result<u64> {
        self.syndrome_errors
            .get(&syndrome)
            .copied()
            .ok_or_else(|| Error::DecodeFailure {
                syndrome: BitVector::from_u64(self.check_masks.len(), syndrome).to_string(),
            })
    }

    /// Corrects an observed word to the nearest codeword of `C` and returns
    /// `(logical parity, corrected word)`.
    pub fn decode_word(&self, word: u64) -> Result<(bool, u64)> {
        let corrected = word ^ self.error_for_syndrome(self.syndrome_of(word))?;
        Ok((corrected.count_ones() & 1 == 1, corrected))
    }
}
