use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            other => Err(Error::BadPauliLetter(other)),
        }
    }

    /// 2x2 matrix of the letter.
    pub fn matrix(self) -> DMatrix<Complex64> {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
            PauliLetter::X => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
            PauliLetter::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            PauliLetter::Z => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        }
    }
}

/// Measurement basis for a single qubit (no identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub fn as_char(self) -> char {
        match self {
            PauliBasis::X => 'X',
            PauliBasis::Y => 'Y',
            PauliBasis::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'X' => Ok(PauliBasis::X),
            'Y' => Ok(PauliBasis::Y),
            'Z' => Ok(PauliBasis::Z),
            other => Err(Error::BadPauliLetter(other)),
        }
    }

    pub fn as_letter(self) -> PauliLetter {
        match self {
            PauliBasis::X => PauliLetter::X,
            PauliBasis::Y => PauliLetter::Y,
            PauliBasis::Z => PauliLetter::Z,
        }
    }
}

/// Tensor product of single-qubit Paulis. Qubit 0 is the leftmost letter
/// and the most significant bit of basis-state indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(letters: Vec<PauliLetter>) -> Self {
        PauliString { letters }
    }

    /// All-identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString {
            letters: vec![PauliLetter::I; n],
        }
    }

    /// Parse from a letter string such as "XIZ".
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s.chars().map(PauliLetter::from_char).collect::<Result<_>>()?;
        Ok(PauliString { letters })
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters[qubit]
    }

    /// Qubits on which the string acts non-trivially.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != PauliLetter::I)
            .map(|(q, _)| q)
            .collect()
    }

    /// Locality k = |support|.
    pub fn locality(&self) -> usize {
        self.letters.iter().filter(|l| **l != PauliLetter::I).count()
    }

    /// Dense 2^n x 2^n matrix, built by Kronecker products. Intended for
    /// small-n cross-checks against the fast expectation path.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for letter in &self.letters {
            m = m.kronecker(&letter.matrix());
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PauliString::parse(&s).map_err(serde::de::Error::custom)
    }
}
