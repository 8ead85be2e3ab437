//! Binary constant-length substitutions.
//!
//! A substitution sends `0 -> w0` and `1 -> w1`, two words over {0, 1} of
//! the same length `L >= 2`. Its columns (pairs of letters at each
//! position, indexed from 0) drive everything here: the column
//! decomposition, the substitution matrix, the Fourier matrix, and the
//! signed column polynomial `Q - R` whose Mahler measure is the maximal
//! Lyapunov exponent of the associated cocycle.

use crate::fourier::FourierMatrix;
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstError {
    #[error("substitution words must have equal length (got {0} and {1})")]
    UnequalLengths(usize, usize),
    #[error("substitution length must be at least 2 (got {0})")]
    TooShort(usize),
    #[error("substitution words must be over the alphabet {{0,1}} (found {0:?})")]
    BadSymbol(char),
    #[error("substitution text must be two comma-separated words, e.g. \"01,10\"")]
    BadFormat,
    #[error("classification requires primitivity")]
    NotPrimitive,
}

/// A binary constant-length substitution `(w0, w1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySubstitution {
    w0: Vec<u8>,
    w1: Vec<u8>,
}

/// The four position sets of the column decomposition: coincidences on
/// letter 0 and letter 1, and the bijective positions of each type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDecomposition {
    /// Positions with column (0,0).
    pub p0: Vec<usize>,
    /// Positions with column (1,1).
    pub p1: Vec<usize>,
    /// Positions with column (0,1).
    pub pa: Vec<usize>,
    /// Positions with column (1,0).
    pub pb: Vec<usize>,
}

/// Outcome of the periodic-hull classification of a primitive
/// substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicClass {
    /// Equal words `(w, w)`.
    PeriodicEqualWords,
    /// Strictly alternating bijective pair `((ab)^m a, (ba)^m b)`.
    PeriodicAlternating,
    /// Everything else: the hull is aperiodic.
    NotPeriodic,
}

impl BinarySubstitution {
    /// Builds a substitution from two words over `{0,1}` (as text).
    pub fn new(w0: &str, w1: &str) -> Result<Self, SubstError> {
        let parse = |w: &str| -> Result<Vec<u8>, SubstError> {
            w.chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(SubstError::BadSymbol(other)),
                })
                .collect()
        };
        Self::from_bits(parse(w0)?, parse(w1)?)
    }

    /// Builds from raw letter vectors (entries 0 or 1).
    pub fn from_bits(w0: Vec<u8>, w1: Vec<u8>) -> Result<Self, SubstError> {
        if w0.len() != w1.len() {
            return Err(SubstError::UnequalLengths(w0.len(), w1.len()));
        }
        if w0.len() < 2 {
            return Err(SubstError::TooShort(w0.len()));
        }
        if let Some(&b) = w0.iter().chain(&w1).find(|&&b| b > 1) {
            return Err(SubstError::BadSymbol((b'0' + b) as char));
        }
        Ok(Self { w0, w1 })
    }

    /// Common word length `L`.
    pub fn length(&self) -> usize {
        self.w0.len()
    }

    pub fn word(&self, letter: u8) -> &[u8] {
        if letter == 0 {
            &self.w0
        } else {
            &self.w1
        }
    }

    /// Column at position `m`: the pair `(w0[m], w1[m])`.
    pub fn column(&self, m: usize) -> (u8, u8) {
        (self.w0[m], self.w1[m])
    }

    /// Exchanges the two image words (the `-p` companion).
    pub fn swapped(&self) -> BinarySubstitution {
        BinarySubstitution {
            w0: self.w1.clone(),
            w1: self.w0.clone(),
        }
    }

    /// True when some column is a coincidence (equal pair).
    pub fn has_coincidence(&self) -> bool {
        self.w0.iter().zip(&self.w1).any(|(a, b)| a == b)
    }

    /// Bijective: no coincidences.
    pub fn is_bijective(&self) -> bool {
        !self.has_coincidence()
    }

    /// Splits positions by column type.
    pub fn decompose(&self) -> ColumnDecomposition {
        let mut d = ColumnDecomposition {
            p0: Vec::new(),
            p1: Vec::new(),
            pa: Vec::new(),
            pb: Vec::new(),
        };
        for m in 0..self.length() {
            match self.column(m) {
                (0, 0) => d.p0.push(m),
                (1, 1) => d.p1.push(m),
                (0, 1) => d.pa.push(m),
                (1, 0) => d.pb.push(m),
                _ => unreachable!("letters are validated on construction"),
            }
        }
        d
    }

    /// Substitution matrix: entry (i, j) counts letter `i` in `w_j`.
    pub fn substitution_matrix(&self) -> [[u64; 2]; 2] {
        let mut m = [[0u64; 2]; 2];
        for &a in &self.w0 {
            m[a as usize][0] += 1;
        }
        for &a in &self.w1 {
            m[a as usize][1] += 1;
        }
        m
    }

    /// Primitivity of the substitution matrix. For a 2x2 nonnegative
    /// matrix the square already decides it.
    pub fn is_primitive(&self) -> bool {
        let m = self.substitution_matrix();
        let mut sq = [[0u64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                sq[r][c] = m[r][0] * m[0][c] + m[r][1] * m[1][c];
            }
        }
        sq.iter().flatten().all(|&e| e > 0)
    }

    /// Classifies the hull of a primitive substitution as periodic of one
    /// of the two possible shapes, or aperiodic. Errors on non-primitive
    /// input.
    pub fn periodic_class(&self) -> Result<PeriodicClass, SubstError> {
        if !self.is_primitive() {
            return Err(SubstError::NotPrimitive);
        }
        if self.w0 == self.w1 {
            return Ok(PeriodicClass::PeriodicEqualWords);
        }
        let len = self.length();
        let alternating = len % 2 == 1
            && self
                .w0
                .iter()
                .enumerate()
                .all(|(m, &a)| a == self.w0[0] ^ (m as u8 & 1))
            && self
                .w0
                .iter()
                .zip(&self.w1)
                .all(|(&a, &b)| a != b);
        if alternating {
            Ok(PeriodicClass::PeriodicAlternating)
        } else {
            Ok(PeriodicClass::NotPeriodic)
        }
    }

    /// The Fourier matrix: entry (i, j) collects the positions of letter
    /// `i` in `w_j` as exponents of `e^{2 pi i k}`.
    pub fn fourier_matrix(&self) -> FourierMatrix {
        let mut entries: [[Vec<Vec<u32>>; 2]; 2] = Default::default();
        for (j, word) in [&self.w0, &self.w1].into_iter().enumerate() {
            for (m, &letter) in word.iter().enumerate() {
                entries[letter as usize][j].push(vec![m as u32]);
            }
        }
        FourierMatrix::from_parts(vec![self.length() as u32], entries)
    }

    /// The signed bijective-column polynomial `Q - R`: coefficient `+1`
    /// at positions with column (0,1), `-1` at (1,0), zero elsewhere.
    /// This is the zero polynomial exactly when `w0 = w1`.
    pub fn qr_polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::from(0); self.length()];
        for m in 0..self.length() {
            match self.column(m) {
                (0, 1) => coeffs[m] = BigInt::from(1),
                (1, 0) => coeffs[m] = BigInt::from(-1),
                _ => {}
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// The unsigned bijective-column polynomial `Q + R`: coefficient `+1`
    /// at every bijective position.
    pub fn qr_sum_polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::from(0); self.length()];
        for m in 0..self.length() {
            let (a, b) = self.column(m);
            if a != b {
                coeffs[m] = BigInt::from(1);
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// The normalized Borwein polynomial `(Q - R) / z^v` with `v` the
    /// valuation, so the constant term is nonzero. `None` when `w0 = w1`.
    pub fn borwein_polynomial(&self) -> Option<IntPolynomial> {
        let qr = self.qr_polynomial();
        if qr.is_zero() {
            None
        } else {
            Some(qr.strip_valuation().1)
        }
    }
}

impl fmt::Display for BinarySubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.w0 {
            write!(f, "{b}")?;
        }
        write!(f, ",")?;
        for &b in &self.w1 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySubstitution({self})")
    }
}

impl FromStr for BinarySubstitution {
    type Err = SubstError;

    /// Parses the `w0,w1` form, e.g. `01,10`.
    fn from_str(s: &str) -> Result<Self, SubstError> {
        let (w0, w1) = s.trim().split_once(',').ok_or(SubstError::BadFormat)?;
        BinarySubstitution::new(w0.trim(), w1.trim())
    }
}

/// Thue–Morse substitution `0 -> 01, 1 -> 10`.
pub fn thue_morse() -> BinarySubstitution {
    BinarySubstitution::new("01", "10").unwrap()
}

/// Period doubling substitution `0 -> 01, 1 -> 00`.
pub fn period_doubling() -> BinarySubstitution {
    BinarySubstitution::new("01", "00").unwrap()
}
