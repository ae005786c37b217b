use num_complex::Complex64;
use rand::Rng;
use rustc_hash::FxHashMap;

use super::gate::{GateMatrix, Structure};
use super::MeasurementOutcome;
use crate::error::{invalid, Error, Result};
use crate::f2linalg::BitVector;

pub const MAX_QUBITS: usize = 48;
/// Amplitudes with smaller magnitude are dropped after a branching gate.
pub const PRUNE_THRESHOLD: f64 = 1e-14;
pub const DEFAULT_SUPPORT_LIMIT: usize = 1 << 23;
/// Layers wider than this, or whose dense buffers would exceed
/// `MAX_LAYER_BUFFER` amplitudes, fall back to gate-by-gate application.
const MAX_LAYER_WIDTH: usize = 12;
const MAX_LAYER_BUFFER: usize = 1 << 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A pure state stored as its nonzero amplitudes.
///
/// Qubit `i` is bit `i` of the basis index (qubit 0 least significant).
/// Keys are unique but unordered; permutation and diagonal gates rewrite the
/// entries in place, only branching gates rebuild the table.
#[derive(Clone, Debug)]
pub struct SparseState {
    num_qubits: usize,
    entries: Vec<(u64, Complex64)>,
    support_limit: usize,
}

#[inline]
fn gather(key: u64, targets: &[usize]) -> usize {
    match *targets {
        [a] => ((key >> a) & 1) as usize,
        [a, b] => (((key >> a) & 1) | (((key >> b) & 1) << 1)) as usize,
        _ => targets
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &t)| acc | ((((key >> t) & 1) as usize) << b)),
    }
}

#[inline]
fn scatter(local: usize, targets: &[usize]) -> u64 {
    let local = local as u64;
    match *targets {
        [a] => (local & 1) << a,
        [a, b] => ((local & 1) << a) | (((local >> 1) & 1) << b),
        _ => targets
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &t)| acc | (((local >> b) & 1) << t)),
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "sparse state qubits",
            attempted: n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

impl SparseState {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            num_qubits: n,
            entries: vec![(0, ONE)],
            support_limit: DEFAULT_SUPPORT_LIMIT,
        })
    }

    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        check_qubits(n)?;
        if n < 64 && index >> n != 0 {
            return invalid(format!("basis index {index} needs more than {n} qubits"));
        }
        Ok(Self {
            num_qubits: n,
            entries: vec![(index, ONE)],
            support_limit: DEFAULT_SUPPORT_LIMIT,
        })
    }

    /// The computational basis state whose qubit `i` is `bits[i]`.
    pub fn basis_state(n: usize, bits: &BitVector) -> Result<Self> {
        if bits.len() != n {
            return invalid(format!("{} bits for {n} qubits", bits.len()));
        }
        check_qubits(n)?;
        Self::from_index(n, bits.to_u64().expect("n <= 48"))
    }

    /// Builds a state from raw amplitudes; duplicate keys are summed and tiny
    /// entries dropped. The result is not renormalized.
    pub fn from_amplitudes(
        n: usize,
        amplitudes: impl IntoIterator<Item = (u64, Complex64)>,
    ) -> Result<Self> {
        check_qubits(n)?;
        let mut map: FxHashMap<u64, Complex64> = FxHashMap::default();
        for (k, a) in amplitudes {
            if k >> n != 0 {
                return invalid(format!("basis index {k} needs more than {n} qubits"));
            }
            *map.entry(k).or_insert(ZERO) += a;
        }
        let mut entries: Vec<_> = map
            .into_iter()
            .filter(|(_, a)| a.norm_sqr() >= PRUNE_THRESHOLD * PRUNE_THRESHOLD)
            .collect();
        entries.sort_unstable_by_key(|e| e.0);
        Ok(Self {
            num_qubits: n,
            entries,
            support_limit: DEFAULT_SUPPORT_LIMIT,
        })
    }

    pub fn with_support_limit(mut self, limit: usize) -> Self {
        self.support_limit = limit;
        self
    }

    pub fn set_support_limit(&mut self, limit: usize) {
        self.support_limit = limit;
    }

    pub fn support_limit(&self) -> usize {
        self.support_limit
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of stored amplitudes.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u64, Complex64)] {
        &self.entries
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.entries
            .iter()
            .find(|e| e.0 == index)
            .map_or(ZERO, |e| e.1)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::Internal("normalizing the zero vector".into()));
        }
        for e in &mut self.entries {
            e.1 /= norm;
        }
        Ok(())
    }

    pub fn scale(&mut self, factor: Complex64) {
        for e in &mut self.entries {
            e.1 *= factor;
        }
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return invalid(format!(
                    "qubit {t} out of range for {} qubits",
                    self.num_qubits
                ));
            }
            if targets[..i].contains(&t) {
                return invalid(format!("qubit {t} repeated in target list"));
            }
        }
        Ok(())
    }

    /// Applies `gate` to `targets` (local bit `b` of the gate is `targets[b]`).
    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return invalid(format!(
                "{} targets for a {}-qubit gate",
                targets.len(),
                gate.arity()
            ));
        }
        self.check_targets(targets)?;
        let mask = scatter((1 << targets.len()) - 1, targets);
        match gate.structure() {
            Structure::Diagonal(diag) => {
                for e in &mut self.entries {
                    e.1 *= diag[gather(e.0, targets)];
                }
            }
            Structure::Monomial(cols) => {
                for e in &mut self.entries {
                    let (row, factor) = cols[gather(e.0, targets)];
                    e.0 = (e.0 & !mask) | scatter(row, targets);
                    e.1 *= factor;
                }
            }
            Structure::General(cols) => {
                let cols: Vec<Vec<(u64, Complex64)>> = cols
                    .iter()
                    .map(|col| col.iter().map(|&(row, u)| (scatter(row, targets), u)).collect())
                    .collect();
                let mut map: FxHashMap<u64, Complex64> = FxHashMap::default();
                map.reserve(self.entries.len().saturating_mul(2));
                for &(key, amp) in &self.entries {
                    let base = key & !mask;
                    for &(row, u) in &cols[gather(key, targets)] {
                        *map.entry(base | row).or_insert(ZERO) += u * amp;
                    }
                    if map.len() > self.support_limit {
                        return Err(Error::Capacity {
                            what: "sparse state support",
                            attempted: map.len(),
                            limit: self.support_limit,
                        });
                    }
                }
                self.entries.clear();
                self.entries.extend(
                    map.into_iter()
                        .filter(|(_, a)| a.norm_sqr() >= PRUNE_THRESHOLD * PRUNE_THRESHOLD),
                );
            }
        }
        Ok(())
    }

    /// Applies the one-qubit `gate` to every qubit in `qubits`.
    ///
    /// Branching gates are applied to all targets at once, group by group,
    /// so the support never passes through the intermediate sizes a
    /// gate-by-gate application would reach.
    pub fn apply_layer(&mut self, gate: &GateMatrix, qubits: &[usize]) -> Result<()> {
        if gate.arity() != 1 {
            return invalid(format!("layer needs a one-qubit gate, got arity {}", gate.arity()));
        }
        self.check_targets(qubits)?;
        let width = qubits.len();
        let sequential = width <= 1
            || width > MAX_LAYER_WIDTH
            || !matches!(gate.structure(), Structure::General(_))
            || self.entries.len().saturating_mul(1 << width) > MAX_LAYER_BUFFER;
        if sequential {
            return qubits.iter().try_for_each(|&q| self.apply_gate(gate, &[q]));
        }
        let dim = 1usize << width;
        let mask = scatter(dim - 1, qubits);
        let mut groups: FxHashMap<u64, usize> = FxHashMap::default();
        let mut bases = Vec::new();
        let mut data = Vec::new();
        for &(key, amp) in &self.entries {
            let base = key & !mask;
            let g = *groups.entry(base).or_insert_with(|| {
                bases.push(base);
                data.resize(data.len() + dim, ZERO);
                bases.len() - 1
            });
            data[g * dim + gather(key, qubits)] = amp;
        }
        let (u00, u01, u10, u11) = (gate.entry(0, 0), gate.entry(0, 1), gate.entry(1, 0), gate.entry(1, 1));
        for chunk in data.chunks_exact_mut(dim) {
            for b in 0..width {
                let bit = 1 << b;
                for i in (0..dim).filter(|i| i & bit == 0) {
                    let (a0, a1) = (chunk[i], chunk[i | bit]);
                    chunk[i] = u00 * a0 + u01 * a1;
                    chunk[i | bit] = u10 * a0 + u11 * a1;
                }
            }
        }
        let offsets: Vec<u64> = (0..dim).map(|l| scatter(l, qubits)).collect();
        self.entries.clear();
        for (base, chunk) in bases.iter().zip(data.chunks_exact(dim)) {
            for (offset, &amp) in offsets.iter().zip(chunk) {
                if amp.norm_sqr() >= PRUNE_THRESHOLD * PRUNE_THRESHOLD {
                    self.entries.push((base | offset, amp));
                }
            }
        }
        if self.entries.len() > self.support_limit {
            return Err(Error::Capacity {
                what: "sparse state support",
                attempted: self.entries.len(),
                limit: self.support_limit,
            });
        }
        Ok(())
    }

    /// Probability of reading 1 on `qubit`.
    pub fn probability_one(&self, qubit: usize) -> Result<f64> {
        self.check_targets(&[qubit])?;
        let (mut one, mut total) = (0.0, 0.0);
        for &(k, a) in &self.entries {
            let p = a.norm_sqr();
            total += p;
            if (k >> qubit) & 1 == 1 {
                one += p;
            }
        }
        Ok(one / total)
    }

    /// Born-rule measurement of `qubit`; the state collapses and is renormalized.
    pub fn measure<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<MeasurementOutcome> {
        let p1 = self.probability_one(qubit)?;
        let bit = rng.random::<f64>() < p1;
        let probability = if bit { p1 } else { 1.0 - p1 };
        if probability <= 0.0 {
            return Err(Error::Internal(format!(
                "sampled a zero-probability outcome on qubit {qubit}"
            )));
        }
        self.collapse(qubit, bit);
        Ok(MeasurementOutcome {
            qubit,
            bit,
            probability,
        })
    }

    /// Projects `qubit` onto `bit` and renormalizes; returns the branch probability.
    pub fn project(&mut self, qubit: usize, bit: bool) -> Result<f64> {
        let p1 = self.probability_one(qubit)?;
        let probability = if bit { p1 } else { 1.0 - p1 };
        if probability <= 0.0 {
            return invalid(format!(
                "outcome {} on qubit {qubit} has probability zero",
                u8::from(bit)
            ));
        }
        self.collapse(qubit, bit);
        Ok(probability)
    }

    fn collapse(&mut self, qubit: usize, bit: bool) {
        let want = u64::from(bit);
        self.entries.retain(|&(k, _)| (k >> qubit) & 1 == want);
        let norm = self.norm_sqr().sqrt();
        for e in &mut self.entries {
            e.1 /= norm;
        }
    }

    /// Keeps only basis states accepted by `keep`, renormalizing; returns the
    /// probability of the kept subspace.
    pub fn postselect(&mut self, keep: impl Fn(u64) -> bool) -> Result<f64> {
        let total = self.norm_sqr();
        self.entries.retain(|&(k, _)| keep(k));
        let kept = self.norm_sqr();
        if kept <= 0.0 {
            return invalid("postselected subspace has probability zero");
        }
        let norm = kept.sqrt();
        for e in &mut self.entries {
            e.1 /= norm;
        }
        Ok(kept / total)
    }

    /// The value of `qubit` if every stored basis state agrees on it.
    pub fn definite_value(&self, qubit: usize) -> Option<bool> {
        let first = (self.entries.first()?.0 >> qubit) & 1;
        self.entries
            .iter()
            .all(|&(k, _)| (k >> qubit) & 1 == first)
            .then_some(first == 1)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SparseState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return invalid(format!(
                "states on {} and {} qubits",
                self.num_qubits, other.num_qubits
            ));
        }
        let (small, large, conj_small) = if self.entries.len() <= other.entries.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let lookup: FxHashMap<u64, Complex64> = small.entries.iter().copied().collect();
        let mut acc = ZERO;
        for (k, b) in &large.entries {
            if let Some(a) = lookup.get(k) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        Ok(acc)
    }

    /// `|⟨a|b⟩|²`.
    pub fn fidelity(&self, other: &SparseState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ other`, with `other`'s qubits appended after this state's.
    pub fn tensor(&self, other: &SparseState) -> Result<SparseState> {
        let n = self.num_qubits + other.num_qubits;
        check_qubits(n)?;
        let size = self.entries.len().saturating_mul(other.entries.len());
        if size > self.support_limit {
            return Err(Error::Capacity {
                what: "sparse state support",
                attempted: size,
                limit: self.support_limit,
            });
        }
        let mut entries = Vec::with_capacity(size);
        for &(kb, b) in &other.entries {
            let high = kb << self.num_qubits;
            entries.extend(self.entries.iter().map(|&(ka, a)| (ka | high, a * b)));
        }
        Ok(SparseState {
            num_qubits: n,
            entries,
            support_limit: self.support_limit,
        })
    }

    /// Appends `count` qubits in `|0⟩`; returns the index of the first.
    pub fn allocate(&mut self, count: usize) -> Result<usize> {
        check_qubits(self.num_qubits + count)?;
        let first = self.num_qubits;
        self.num_qubits += count;
        Ok(first)
    }

    /// Removes qubits that hold a definite classical value, renumbering the
    /// remaining qubits downward. Returns the removed values in the given order.
    pub fn remove_qubits(&mut self, qubits: &[usize]) -> Result<Vec<bool>> {
        self.check_targets(qubits)?;
        let values = qubits
            .iter()
            .map(|&q| {
                self.definite_value(q).ok_or_else(|| {
                    Error::InvalidArgument(format!("qubit {q} is not in a definite state"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let removed: u64 = qubits.iter().map(|&q| 1u64 << q).sum();
        let kept: Vec<usize> = (0..self.num_qubits)
            .filter(|q| removed >> q & 1 == 0)
            .collect();
        let top_only = kept.iter().enumerate().all(|(i, &q)| i == q);
        for e in &mut self.entries {
            e.0 = if top_only {
                e.0 & !removed
            } else {
                kept.iter()
                    .enumerate()
                    .fold(0, |acc, (i, &q)| acc | (((e.0 >> q) & 1) << i))
            };
        }
        self.num_qubits = kept.len();
        Ok(values)
    }

    /// Sorted `(bitstring, amplitude)` view; character `i` is qubit `i`.
    pub fn sorted_entries(&self) -> Vec<(String, Complex64)> {
        let mut out: Vec<(String, Complex64)> = self
            .entries
            .iter()
            .map(|&(k, a)| (index_to_bitstring(k, self.num_qubits), a))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Text dump: one `bitstring re im` line per stored amplitude, sorted by bitstring.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (bits, a) in self.sorted_entries() {
            out.push_str(&format!("{bits} {} {}\n", fmt_real(a.re), fmt_real(a.im)));
        }
        out
    }
}

fn index_to_bitstring(index: u64, n: usize) -> String {
    (0..n)
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn fmt_real(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}
