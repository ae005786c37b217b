use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

const UNITARITY_TOL: f64 = 1e-10;

/// How a gate permutes basis states; picked once at construction so the
/// sparse engine can take the cheapest update path.
#[derive(Clone, Debug)]
pub(crate) enum Structure {
    /// `U = diag(d)`.
    Diagonal(Vec<Complex64>),
    /// Exactly one nonzero per column: column `j` maps to `(row, factor)`.
    Monomial(Vec<(usize, Complex64)>),
    /// Nonzero entries of each column.
    General(Vec<Vec<(usize, Complex64)>>),
}

/// A `2^arity × 2^arity` unitary, row-major.
///
/// Local basis index bit `b` refers to the `b`-th entry of the target list the
/// gate is applied with, so for `CNOT` on `[control, target]` the control is
/// local bit 0.
#[derive(Clone, Debug)]
pub struct GateMatrix {
    arity: usize,
    entries: Vec<Complex64>,
    structure: Structure,
}

impl GateMatrix {
    pub fn new(arity: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !(1..=4).contains(&arity) {
            return invalid(format!("gate arity {arity} outside 1..=4"));
        }
        let dim = 1 << arity;
        if entries.len() != dim * dim {
            return invalid(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            ));
        }
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = (0..dim)
                    .map(|l| entries[i * dim + l] * entries[j * dim + l].conj())
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (dot - expected).norm() >= UNITARITY_TOL {
                    return invalid(format!("matrix is not unitary at ({i},{j})"));
                }
            }
        }
        let structure = Self::analyse(dim, &entries);
        Ok(Self {
            arity,
            entries,
            structure,
        })
    }

    fn analyse(dim: usize, entries: &[Complex64]) -> Structure {
        let columns: Vec<Vec<(usize, Complex64)>> = (0..dim)
            .map(|j| {
                (0..dim)
                    .filter_map(|i| {
                        let u = entries[i * dim + j];
                        (u.norm() > 1e-15).then_some((i, u))
                    })
                    .collect()
            })
            .collect();
        if columns
            .iter()
            .enumerate()
            .all(|(j, c)| c.len() == 1 && c[0].0 == j)
        {
            Structure::Diagonal(columns.iter().map(|c| c[0].1).collect())
        } else if columns.iter().all(|c| c.len() == 1) {
            Structure::Monomial(columns.iter().map(|c| c[0]).collect())
        } else {
            Structure::General(columns)
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub(crate) fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.structure, Structure::Diagonal(_))
    }

    /// Diagonal gates and permutations with phases (Paulis, CNOT, Toffoli...).
    pub fn is_monomial(&self) -> bool {
        !matches!(self.structure, Structure::General(_))
    }

    /// Tensor product `self ⊗ other`, with `other` on the higher local bits.
    pub fn tensor(&self, other: &GateMatrix) -> Result<GateMatrix> {
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (ib, jb) in (0..db).flat_map(|i| (0..db).map(move |j| (i, j))) {
            let b = other.entry(ib, jb);
            if b.norm() == 0.0 {
                continue;
            }
            for (ia, ja) in (0..da).flat_map(|i| (0..da).map(move |j| (i, j))) {
                entries[(ib * da + ia) * dim + (jb * da + ja)] = self.entry(ia, ja) * b;
            }
        }
        GateMatrix::new(self.arity + other.arity, entries)
    }
}

/// The gate set of the workbench.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StandardGate {
    I,
    X,
    Y,
    Z,
    H,
    /// `diag(1, i)`.
    PhaseI,
    /// `diag(1, -i)`.
    PhaseIDg,
    Cnot,
    Cz,
    Toffoli,
    /// `|0⟩ → cos(θ/2)|0⟩ + sin(θ/2)|1⟩`, `|1⟩ → −sin(θ/2)|0⟩ + cos(θ/2)|1⟩`.
    Rx(f64),
    /// `diag(1, e^{iφ/2})`.
    Rz(f64),
    /// `|a,b,c,d⟩ → (−1)^{a(bc+d)} |a,b,c,d⟩`, with `a` the first target.
    CatPhase4,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| c(v, 0.0)).collect()
}

fn diagonal(diag: &[Complex64]) -> Vec<Complex64> {
    let dim = diag.len();
    let mut m = vec![c(0.0, 0.0); dim * dim];
    for (i, &d) in diag.iter().enumerate() {
        m[i * dim + i] = d;
    }
    m
}

fn permutation(perm: &[usize]) -> Vec<Complex64> {
    let dim = perm.len();
    let mut m = vec![c(0.0, 0.0); dim * dim];
    for (j, &i) in perm.iter().enumerate() {
        m[i * dim + j] = c(1.0, 0.0);
    }
    m
}

impl StandardGate {
    pub fn arity(&self) -> usize {
        match self {
            Self::Cnot | Self::Cz => 2,
            Self::Toffoli => 3,
            Self::CatPhase4 => 4,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::I => "I",
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::H => "H",
            Self::PhaseI => "PHASE_I",
            Self::PhaseIDg => "PHASE_I_DG",
            Self::Cnot => "CNOT",
            Self::Cz => "CZ",
            Self::Toffoli => "TOFFOLI",
            Self::Rx(_) => "RX",
            Self::Rz(_) => "RZ",
            Self::CatPhase4 => "CAT_PHASE4",
        }
    }

    pub fn matrix(&self) -> GateMatrix {
        let s = FRAC_1_SQRT_2;
        let (arity, entries) = match *self {
            Self::I => (1, real(&[1.0, 0.0, 0.0, 1.0])),
            Self::X => (1, real(&[0.0, 1.0, 1.0, 0.0])),
            Self::Y => (1, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
            Self::Z => (1, real(&[1.0, 0.0, 0.0, -1.0])),
            Self::H => (1, real(&[s, s, s, -s])),
            Self::PhaseI => (1, diagonal(&[c(1.0, 0.0), c(0.0, 1.0)])),
            Self::PhaseIDg => (1, diagonal(&[c(1.0, 0.0), c(0.0, -1.0)])),
            // local index = control + 2·target
            Self::Cnot => (2, permutation(&[0, 3, 2, 1])),
            Self::Cz => (2, diagonal(&real(&[1.0, 1.0, 1.0, -1.0]))),
            // local index = c1 + 2·c2 + 4·target
            Self::Toffoli => (3, permutation(&[0, 1, 2, 7, 4, 5, 6, 3])),
            Self::Rx(theta) => {
                let (sn, cs) = (theta / 2.0).sin_cos();
                (1, real(&[cs, -sn, sn, cs]))
            }
            Self::Rz(phi) => (1, diagonal(&[c(1.0, 0.0), Complex64::from_polar(1.0, phi / 2.0)])),
            Self::CatPhase4 => {
                let d: Vec<Complex64> = (0..16usize)
                    .map(|i| {
                        let (a, b, cc, d) = (i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1);
                        if a & ((b & cc) ^ d) == 1 {
                            c(-1.0, 0.0)
                        } else {
                            c(1.0, 0.0)
                        }
                    })
                    .collect();
                (4, diagonal(&d))
            }
        };
        GateMatrix::new(arity, entries).expect("standard gates are unitary")
    }

    /// A shared instance of a parameter-free gate.
    pub fn fixed(&self) -> &'static GateMatrix {
        static TABLE: LazyLock<Vec<GateMatrix>> = LazyLock::new(|| {
            FIXED.iter().map(StandardGate::matrix).collect()
        });
        let idx = FIXED
            .iter()
            .position(|g| g == self)
            .unwrap_or_else(|| panic!("{} takes parameters", self.name()));
        &TABLE[idx]
    }
}

const FIXED: [StandardGate; 11] = [
    StandardGate::I,
    StandardGate::X,
    StandardGate::Y,
    StandardGate::Z,
    StandardGate::H,
    StandardGate::PhaseI,
    StandardGate::PhaseIDg,
    StandardGate::Cnot,
    StandardGate::Cz,
    StandardGate::Toffoli,
    StandardGate::CatPhase4,
];

impl fmt::Display for StandardGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rx(t) | Self::Rz(t) => write!(f, "{}({t})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for StandardGate {
    type Err = Error;

    /// Accepts `NAME` or `NAME(param)`, case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase();
        let (name, params) = match s.split_once('(') {
            Some((n, rest)) => {
                let Some(p) = rest.strip_suffix(')') else {
                    return invalid(format!("unbalanced parameters in '{s}'"));
                };
                (n.to_string(), vec![p.to_string()])
            }
            None => (s.clone(), vec![]),
        };
        let params: Vec<f64> = params
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad gate parameter '{p}': {e}")))
            })
            .collect::<Result<_>>()?;
        standard_gate_kind(&name, &params)
    }
}

fn standard_gate_kind(name: &str, params: &[f64]) -> Result<StandardGate> {
    let gate = match (name, params) {
        ("I", []) => StandardGate::I,
        ("X", []) => StandardGate::X,
        ("Y", []) => StandardGate::Y,
        ("Z", []) => StandardGate::Z,
        ("H", []) => StandardGate::H,
        ("PHASE_I", []) => StandardGate::PhaseI,
        ("PHASE_I_DG", []) => StandardGate::PhaseIDg,
        ("CNOT", []) => StandardGate::Cnot,
        ("CZ", []) => StandardGate::Cz,
        ("TOFFOLI", []) => StandardGate::Toffoli,
        ("CAT_PHASE4", []) => StandardGate::CatPhase4,
        ("RX", [t]) => StandardGate::Rx(*t),
        ("RZ", [p]) => StandardGate::Rz(*p),
        _ => {
            return invalid(format!(
                "unknown gate '{name}' with {} parameter(s)",
                params.len()
            ))
        }
    };
    Ok(gate)
}

/// Looks a gate up by name and returns its matrix.
pub fn standard_gate(name: &str, params: &[f64]) -> Result<GateMatrix> {
    Ok(standard_gate_kind(&name.to_ascii_uppercase(), params)?.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_detection() {
        assert!(StandardGate::Cz.fixed().is_diagonal());
        assert!(StandardGate::CatPhase4.fixed().is_diagonal());
        assert!(StandardGate::Cnot.fixed().is_monomial());
        assert!(StandardGate::Y.fixed().is_monomial());
        assert!(!StandardGate::H.fixed().is_monomial());
    }

    #[test]
    fn non_unitary_rejected() {
        let m = real(&[1.0, 1.0, 0.0, 1.0]);
        assert!(GateMatrix::new(1, m).is_err());
        assert!(GateMatrix::new(5, vec![]).is_err());
        assert!(GateMatrix::new(1, real(&[1.0])).is_err());
    }

    #[test]
    fn names_parse() {
        assert_eq!("cnot".parse::<StandardGate>().unwrap(), StandardGate::Cnot);
        assert_eq!("RX(0.5)".parse::<StandardGate>().unwrap(), StandardGate::Rx(0.5));
        assert!("SWAP".parse::<StandardGate>().is_err());
        assert!("RX".parse::<StandardGate>().is_err());
        assert!(standard_gate("TOFFOLI", &[]).is_ok());
        assert!(standard_gate("H", &[1.0]).is_err());
    }

    #[test]
    fn tensor_of_paulis() {
        let xz = StandardGate::X.fixed().tensor(StandardGate::Z.fixed()).unwrap();
        assert_eq!(xz.arity(), 2);
        // |local 0⟩ = |q0=0,q1=0⟩ → X on q0 → local 1, Z on q1 gives +1
        assert_eq!(xz.entry(1, 0), c(1.0, 0.0));
        assert_eq!(xz.entry(3, 2), c(-1.0, 0.0));
    }
}
