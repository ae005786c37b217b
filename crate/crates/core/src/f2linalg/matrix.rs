use super::BitVector;
use crate::error::{invalid, Result};

/// A dense binary matrix stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn new(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return invalid(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            ));
        }
        Ok(Self { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Parses rows written as '0'/'1' strings.
    pub fn from_strs(cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cols, rows)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    /// `M · yᵀ` over F2.
    pub fn mul_vec(&self, y: &BitVector) -> Result<BitVector> {
        if y.len() != self.cols {
            return invalid(format!(
                "vector of length {} against a matrix with {} columns",
                y.len(),
                self.cols
            ));
        }
        Ok(BitVector::from_bits(self.rows.iter().map(|r| r.dot(y))))
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if other.cols != self.cols {
            return invalid("column counts differ");
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bits(other.rows.iter().map(|b| a.dot(b))))
            .collect();
        Ok(Self {
            cols: other.rows.len(),
            rows,
        })
    }

    pub fn transpose(&self) -> Self {
        Self {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Reduced row echelon form; returns the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_words(pivot_row.words());
                }
            }
            pivots.push(c);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            Self {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{ x : M xᵀ = 0 }`, one vector per free column of the echelon form.
    pub fn kernel(&self) -> Self {
        let (reduced, pivots) = self.rref();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = BitVector::unit(self.cols, f);
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Self {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        let (reduced, pivots) = self.rref();
        let mut rem = v.clone();
        for (row, &p) in reduced.rows.iter().zip(&pivots) {
            if rem.get(p) {
                rem.add_assign(row);
            }
        }
        rem.is_zero()
    }

    pub(crate) fn delete_column(&self, coord: usize) -> Self {
        Self {
            cols: self.cols - 1,
            rows: self.rows.iter().map(|r| r.without(coord)).collect(),
        }
    }
}
