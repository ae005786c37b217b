use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::{Block, CssCode};
use crate::error::{invalid, Error, Result};
use crate::statevec::SparseState;

/// Residual weight outside the code space above which decoding reports leakage.
pub const LEAKAGE_TOLERANCE: f64 = 1e-9;

fn unit_check(amplitudes: &[Complex64]) -> Result<()> {
    let norm: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return invalid(format!("logical amplitudes have norm² {norm}, expected 1"));
    }
    Ok(())
}

impl CssCode {
    /// `|s_v⟩`: uniform superposition over the coset `v·1 + C⊥`.
    pub fn logical_state(&self, v: bool) -> SparseState {
        let words = self.coset_words(v);
        let amp = Complex64::new((words.len() as f64).sqrt().recip(), 0.0);
        SparseState::from_amplitudes(self.n(), words.iter().map(|&w| (w, amp)))
            .expect("code words fit the block")
    }

    /// `|c_v⟩`: superposition over all of `C` with sign `(−1)^{v·|w|}`.
    pub fn c_state(&self, v: bool) -> SparseState {
        let size = (2 * self.coset_words(false).len()) as f64;
        let amp = size.sqrt().recip();
        let entries = [false, true].into_iter().flat_map(|odd| {
            let sign = if v && odd { -amp } else { amp };
            self.coset_words(odd)
                .iter()
                .map(move |&w| (w, Complex64::new(sign, 0.0)))
        });
        SparseState::from_amplitudes(self.n(), entries).expect("code words fit the block")
    }

    /// `α|s₀⟩ + β|s₁⟩`, built amplitude by amplitude.
    pub fn encode_logical(&self, alpha: Complex64, beta: Complex64) -> Result<SparseState> {
        self.encode_register(&[alpha, beta])
    }

    /// Encodes a `k`-qubit logical state into `k` consecutive blocks; logical
    /// qubit `j` (bit `j` of the amplitude index) goes to block `j`.
    pub fn encode_register(&self, amplitudes: &[Complex64]) -> Result<SparseState> {
        let blocks = amplitudes.len().trailing_zeros() as usize;
        if amplitudes.len() != 1 << blocks || blocks == 0 {
            return invalid("logical amplitude count must be a power of two ≥ 2");
        }
        unit_check(amplitudes)?;
        let n = self.n();
        if blocks * n > crate::statevec::MAX_QUBITS {
            return Err(Error::Capacity {
                what: "encoded register qubits",
                attempted: blocks * n,
                limit: crate::statevec::MAX_QUBITS,
            });
        }
        let per_block = self.coset_words(false).len();
        let scale = (per_block as f64).powi(blocks as i32).sqrt().recip();
        let mut entries = Vec::new();
        for (x, &a) in amplitudes.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let mut words: Vec<u64> = vec![0];
            for j in 0..blocks {
                let coset = self.coset_words((x >> j) & 1 == 1);
                words = words
                    .iter()
                    .flat_map(|&w| coset.iter().map(move |&c| w | (c << (j * n))))
                    .collect();
            }
            entries.extend(words.into_iter().map(|w| (w, a * scale)));
        }
        SparseState::from_amplitudes(blocks * n, entries)
    }

    /// Logical amplitudes `(α, β)` of one block, which must be unentangled
    /// with the rest of the register.
    pub fn decode_logical(&self, state: &SparseState, block: Block) -> Result<(Complex64, Complex64)> {
        let a = self.decode_register(state, &[block])?;
        Ok((a[0], a[1]))
    }

    /// Projects the listed blocks onto the code space and returns their joint
    /// logical amplitudes (index bit `j` is block `j`), normalized.
    ///
    /// Fails with [`Error::Leakage`] if more than [`LEAKAGE_TOLERANCE`] of
    /// the weight lies outside the code space, and with [`Error::NotProduct`]
    /// if the blocks are entangled with the remaining qubits.
    pub fn decode_register(&self, state: &SparseState, blocks: &[Block]) -> Result<Vec<Complex64>> {
        for (i, b) in blocks.iter().enumerate() {
            if b.len != self.n() || b.end() > state.num_qubits() {
                return invalid(format!("block {b:?} does not fit the code or register"));
            }
            if blocks[..i].iter().any(|o| o.overlaps(b)) {
                return invalid("overlapping blocks");
            }
        }
        let dim = 1usize << blocks.len();
        let inside: u64 = blocks.iter().fold(0, |m, b| m | b.mask());
        let scale = (self.coset_words(false).len() as f64)
            .powi(blocks.len() as i32)
            .sqrt()
            .recip();

        // Projection coefficient for each (logical value, rest-of-register word).
        let mut columns: FxHashMap<u64, Vec<Complex64>> = FxHashMap::default();
        let mut total = 0.0;
        for &(key, amp) in state.entries() {
            total += amp.norm_sqr();
            let mut x = 0usize;
            let mut in_code = true;
            for (j, b) in blocks.iter().enumerate() {
                match self.coset_of(b.word(key)) {
                    Some(v) => x |= usize::from(v) << j,
                    None => {
                        in_code = false;
                        break;
                    }
                }
            }
            if in_code {
                columns
                    .entry(key & !inside)
                    .or_insert_with(|| vec![Complex64::new(0.0, 0.0); dim])[x] += amp * scale;
            }
        }
        let projected: f64 = columns
            .values()
            .flat_map(|c| c.iter().map(Complex64::norm_sqr))
            .sum();
        let residual = 1.0 - projected / total;
        if residual >= LEAKAGE_TOLERANCE {
            return Err(Error::Leakage { residual });
        }

        let mut keys: Vec<u64> = columns.keys().copied().collect();
        keys.sort_unstable();
        let norm = |c: &[Complex64]| c.iter().map(Complex64::norm_sqr).sum::<f64>();
        let best = keys
            .iter()
            .copied()
            .max_by(|a, b| norm(&columns[a]).total_cmp(&norm(&columns[b])))
            .ok_or_else(|| Error::Internal("empty state".into()))?;
        let mut logical = columns[&best].clone();
        let scale = norm(&logical).sqrt();
        logical.iter_mut().for_each(|a| *a /= scale);

        let mut off_product = 0.0;
        for c in columns.values() {
            let overlap: Complex64 = logical.iter().zip(c).map(|(a, b)| a.conj() * b).sum();
            off_product += norm(c) - overlap.norm_sqr();
        }
        if off_product / projected >= LEAKAGE_TOLERANCE {
            return Err(Error::NotProduct(format!(
                "blocks are entangled with the rest of the register (residual {:e})",
                off_product / projected
            )));
        }
        Ok(logical)
    }
}
