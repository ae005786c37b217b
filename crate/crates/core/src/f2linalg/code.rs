use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::{BinaryMatrix, BitVector};
use crate::error::{invalid, Error, Result};

/// Largest dimension for which codewords are enumerated exhaustively.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// Structural flags of a binary linear code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeClass {
    /// `C⊥ ⊆ C`.
    pub contains_dual: bool,
    /// `C⊥ = C`.
    pub self_dual: bool,
    /// Every codeword weight is a multiple of 4.
    pub doubly_even: bool,
}

/// A binary linear `[n, k]` code.
///
/// The generator is kept in reduced row echelon form, so two codes are equal
/// exactly when their row spaces are.
#[derive(Clone)]
pub struct LinearCode {
    generator: BinaryMatrix,
    parity_check: BinaryMatrix,
    weights: OnceLock<Vec<u64>>,
}

impl LinearCode {
    /// Builds a code from linearly independent generator rows.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let (reduced, _) = generator.rref();
        if reduced.num_rows() != generator.num_rows() {
            return invalid(format!(
                "generator has {} rows but rank {}",
                generator.num_rows(),
                reduced.num_rows()
            ));
        }
        Ok(Self::from_reduced(reduced))
    }

    /// The code spanned by arbitrary (possibly dependent) rows.
    pub fn span(rows: BinaryMatrix) -> Self {
        Self::from_reduced(rows.rref().0)
    }

    fn from_reduced(generator: BinaryMatrix) -> Self {
        let parity_check = generator.kernel();
        Self {
            generator,
            parity_check,
            weights: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.generator.num_cols()
    }

    pub fn k(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.parity_check
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n() && self.parity_check.rows().iter().all(|h| !h.dot(v))
    }

    /// `C⊥`, generated by this code's parity-check rows.
    pub fn dual(&self) -> Self {
        Self::span(self.parity_check.clone())
    }

    /// All `2^k` codewords, in Gray-code order starting from zero.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        self.check_enumerable()?;
        let mut out = Vec::with_capacity(1 << self.k());
        let mut current = BitVector::zeros(self.n());
        out.push(current.clone());
        for i in 1u64..(1 << self.k()) {
            current.add_assign(self.generator.row(i.trailing_zeros() as usize));
            out.push(current.clone());
        }
        Ok(out)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.k() > MAX_ENUMERATION_DIM {
            return Err(Error::Capacity {
                what: "codeword enumeration (dimension k)",
                attempted: self.k(),
                limit: MAX_ENUMERATION_DIM,
            });
        }
        Ok(())
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Result<&[u64]> {
        if let Some(w) = self.weights.get() {
            return Ok(w);
        }
        self.check_enumerable()?;
        let mut counts = vec![0u64; self.n() + 1];
        let mut current = BitVector::zeros(self.n());
        counts[0] = 1;
        for i in 1u64..(1 << self.k()) {
            current.xor_words(self.generator.row(i.trailing_zeros() as usize).words());
            counts[current.weight()] += 1;
        }
        Ok(self.weights.get_or_init(|| counts))
    }

    /// Minimum weight of a nonzero codeword, by exhaustive enumeration.
    pub fn min_distance(&self) -> Result<usize> {
        if self.k() == 0 {
            return invalid("the zero code has no nonzero codeword");
        }
        let dist = self.weight_distribution()?;
        Ok(dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|&(_, &c)| c > 0)
            .map(|(w, _)| w)
            .expect("a code with k >= 1 has a nonzero codeword"))
    }

    /// Number of bit errors the code corrects, `⌊(d−1)/2⌋`.
    pub fn correctable_errors(&self) -> Result<usize> {
        Ok((self.min_distance()? - 1) / 2)
    }

    pub fn classify(&self) -> Result<CodeClass> {
        let contains_dual = self
            .parity_check
            .mul_transpose(&self.parity_check)?
            .is_zero();
        let self_dual = contains_dual && self.n() == 2 * self.k();
        let doubly_even = self
            .weight_distribution()?
            .iter()
            .enumerate()
            .all(|(w, &c)| c == 0 || w % 4 == 0);
        Ok(CodeClass {
            contains_dual,
            self_dual,
            doubly_even,
        })
    }

    /// Deletes coordinate `coord`.
    pub fn puncture(&self, coord: usize) -> Result<Self> {
        if coord >= self.n() {
            return invalid(format!(
                "coordinate {coord} out of range for length {}",
                self.n()
            ));
        }
        if self.n() == 1 {
            return invalid("cannot puncture a length-1 code");
        }
        let punctured = self.generator.delete_column(coord);
        if punctured.rank() != self.k() {
            return Err(Error::UnsupportedCode(format!(
                "deleting coordinate {coord} drops the rank below {}",
                self.k()
            )));
        }
        Self::from_generator(punctured)
    }

    /// Appends an overall parity bit to every codeword.
    pub fn extend_parity(&self) -> Self {
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|r| r.extended(r.weight() % 2 == 1))
            .collect();
        Self::span(BinaryMatrix::new(self.n() + 1, rows).expect("rows share length"))
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]", self.n(), self.k())
    }
}

/// The Reed–Muller code `RM(r, m)`: evaluations of all monomials of degree
/// `<= r` in `m` variables at the points of `F2^m`. Coordinate `j` is the
/// point whose `i`-th variable is bit `i` of `j`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    if r > m || m > 8 {
        return invalid(format!("RM({r},{m}) needs 0 <= r <= m <= 8"));
    }
    let n = 1usize << m;
    let mut rows = Vec::new();
    for degree in 0..=r {
        for vars in combinations(m, degree) {
            let mask: usize = vars.iter().map(|&v| 1 << v).sum();
            rows.push(BitVector::from_bits((0..n).map(|j| j & mask == mask)));
        }
    }
    LinearCode::from_generator(BinaryMatrix::new(n, rows)?)
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(0, n, size, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

/// `[n, 1, n]` repetition code.
pub fn repetition(n: usize) -> LinearCode {
    LinearCode::span(BinaryMatrix::new(n, vec![BitVector::ones(n)]).expect("one row"))
}

/// `[7, 4, 3]` Hamming code in its systematic form.
pub fn hamming_7_4() -> LinearCode {
    LinearCode::from_generator(
        BinaryMatrix::from_strs(7, &["1000111", "0100110", "0010101", "0001011"])
            .expect("valid rows"),
    )
    .expect("independent rows")
}
