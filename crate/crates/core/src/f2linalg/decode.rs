use std::collections::HashMap;

use super::code::combinations;
use super::{BinaryMatrix, BitVector, LinearCode};
use crate::error::{invalid, Error, Result};

pub const MAX_TABLE_LENGTH: usize = 32;
pub const MAX_TABLE_ERRORS: usize = 3;

/// Syndrome `H · yᵀ`.
pub fn syndrome(parity_check: &BinaryMatrix, y: &BitVector) -> Result<BitVector> {
    parity_check.mul_vec(y)
}

/// Syndrome lookup table for every error pattern of weight `<= t`.
#[derive(Clone, Debug)]
pub struct DecodeTable {
    t: usize,
    n: usize,
    entries: HashMap<BitVector, BitVector>,
}

impl DecodeTable {
    /// Enumerates errors by increasing weight, positions in lexicographic
    /// order, keeping the first error seen for each syndrome.
    pub fn build(code: &LinearCode, t: usize) -> Result<Self> {
        let n = code.n();
        if n > MAX_TABLE_LENGTH || t > MAX_TABLE_ERRORS {
            return Err(Error::Capacity {
                what: "decode table (n <= 32, t <= 3)",
                attempted: n.max(t),
                limit: if n > MAX_TABLE_LENGTH {
                    MAX_TABLE_LENGTH
                } else {
                    MAX_TABLE_ERRORS
                },
            });
        }
        let d = code.min_distance()?;
        if d < 2 * t + 1 {
            return invalid(format!(
                "distance {d} cannot correct {t} errors (needs {})",
                2 * t + 1
            ));
        }
        let h = code.parity_check();
        let mut entries = HashMap::new();
        for w in 0..=t {
            for positions in combinations(n, w) {
                let mut e = BitVector::zeros(n);
                for p in positions {
                    e.set(p, true);
                }
                let s = h.mul_vec(&e)?;
                entries.entry(s).or_insert(e);
            }
        }
        Ok(Self { t, n, entries })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, syndrome: &BitVector) -> Option<&BitVector> {
        self.entries.get(syndrome)
    }

    /// The error pattern for `syndrome`, or a decode failure when more than `t`
    /// errors occurred.
    pub fn decode(&self, syndrome: &BitVector) -> Result<BitVector> {
        self.lookup(syndrome).cloned().ok_or_else(|| Error::DecodeFailure {
            syndrome: syndrome.to_string(),
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BitVector, &BitVector)> {
        self.entries.iter()
    }

    pub fn block_length(&self) -> usize {
        self.n
    }
}
