use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::statevec::{SparseState, StandardGate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Base-4 digit order used when sampling: `0=I, 1=X, 2=Y, 3=Z`.
    pub fn from_digit(d: usize) -> Self {
        match d & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn gate(self) -> StandardGate {
        match self {
            Pauli::I => StandardGate::I,
            Pauli::X => StandardGate::X,
            Pauli::Y => StandardGate::Y,
            Pauli::Z => StandardGate::Z,
        }
    }

    pub fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis; entry `i` acts on the `i`-th target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn identity(len: usize) -> Self {
        Self(vec![Pauli::I; len])
    }

    /// The pattern whose base-4 digits (least significant first) are `index`.
    pub fn from_index(arity: usize, index: usize) -> Self {
        Self((0..arity).map(|b| Pauli::from_digit(index >> (2 * b))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn apply(&self, state: &mut SparseState, targets: &[usize]) -> Result<()> {
        if targets.len() != self.0.len() {
            return invalid(format!(
                "{}-qubit Pauli applied to {} targets",
                self.0.len(),
                targets.len()
            ));
        }
        for (&p, &q) in self.0.iter().zip(targets) {
            if p != Pauli::I {
                state.apply_gate(p.gate().fixed(), &[q])?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => invalid(format!("'{other}' is not a Pauli")),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// Uniform over the `4^arity − 1` non-identity patterns.
pub fn sample_pauli<R: Rng + ?Sized>(arity: usize, rng: &mut R) -> Result<PauliString> {
    if !(1..=4).contains(&arity) {
        return invalid(format!("Pauli arity {arity} outside 1..=4"));
    }
    let index = rng.random_range(1..1usize << (2 * arity));
    Ok(PauliString::from_index(arity, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trips_text() {
        let p: PauliString = "xIyZ".parse().unwrap();
        assert_eq!(p.to_string(), "XIYZ");
        assert_eq!(p.weight(), 3);
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn never_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for arity in 1..=4 {
            for _ in 0..500 {
                assert!(!sample_pauli(arity, &mut rng).unwrap().is_identity());
            }
        }
        assert!(sample_pauli(0, &mut rng).is_err());
        assert!(sample_pauli(5, &mut rng).is_err());
    }
}
