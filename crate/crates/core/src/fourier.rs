//! Fourier matrices of substitutions.
//!
//! A Fourier matrix is a 2x2 grid of exponent-vector sets over one or two
//! torus variables. Entry (i, j) holds the positions of letter `i` in the
//! image of letter `j`; evaluating at a point `k` replaces each exponent
//! vector `m` by `e^{2 pi i k.m}` and sums. Evaluation at `k = 0` recovers
//! the substitution matrix.

use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;

/// 2x2 complex matrix, row major.
pub type Matrix2 = [[Complex64; 2]; 2];

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn mat_det(a: &Matrix2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entry magnitude.
pub fn mat_sup_norm(a: &Matrix2) -> f64 {
    a.iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

/// Row-vector times matrix: `(v0, v1) . B`.
pub fn row_mul(v: &[Complex64; 2], b: &Matrix2) -> [Complex64; 2] {
    [
        v[0] * b[0][0] + v[1] * b[1][0],
        v[0] * b[0][1] + v[1] * b[1][1],
    ]
}

/// Matrix times column vector: `B . (v0, v1)^T`.
pub fn col_mul(b: &Matrix2, v: &[Complex64; 2]) -> [Complex64; 2] {
    [
        b[0][0] * v[0] + b[0][1] * v[1],
        b[1][0] * v[0] + b[1][1] * v[1],
    ]
}

/// Fourier matrix of a one- or two-dimensional binary substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierMatrix {
    expansion: Vec<u32>,
    entries: [[Vec<Vec<u32>>; 2]; 2],
}

impl FourierMatrix {
    /// Builds from per-axis expansion factors and exponent sets. Each
    /// exponent vector must match the dimension and stay inside the
    /// expansion box.
    pub(crate) fn from_parts(expansion: Vec<u32>, entries: [[Vec<Vec<u32>>; 2]; 2]) -> Self {
        let dim = expansion.len();
        debug_assert!(dim == 1 || dim == 2);
        for row in &entries {
            for set in row {
                for e in set {
                    debug_assert_eq!(e.len(), dim);
                    for (a, &x) in e.iter().enumerate() {
                        debug_assert!(x < expansion[a]);
                    }
                }
            }
        }
        Self { expansion, entries }
    }

    /// Number of torus variables (1 or 2).
    pub fn dim(&self) -> usize {
        self.expansion.len()
    }

    /// Per-axis expansion factors of the underlying substitution.
    pub fn expansion(&self) -> &[u32] {
        &self.expansion
    }

    /// Exponent vectors of entry (i, j).
    pub fn entry(&self, i: usize, j: usize) -> &[Vec<u32>] {
        &self.entries[i][j]
    }

    /// Evaluates entrywise: each exponent vector `m` contributes
    /// `e^{2 pi i k.m}`.
    pub fn evaluate(&self, k: &[f64]) -> Matrix2 {
        assert_eq!(k.len(), self.dim(), "point dimension must match the matrix");
        let mut scratch = EvalScratch::new();
        scratch.evaluate(self, k)
    }

    /// Human-readable polynomial form of entry (i, j) in `z` (1D) or
    /// `x, y` (2D).
    pub fn entry_string(&self, i: usize, j: usize) -> String {
        let mut set = self.entries[i][j].clone();
        if set.is_empty() {
            return "0".into();
        }
        set.sort_by_key(|e| {
            (
                e.iter().map(|&x| x as u64).sum::<u64>(),
                e.iter().rev().cloned().collect::<Vec<u32>>(),
            )
        });
        let names: &[&str] = if self.dim() == 1 { &["z"] } else { &["x", "y"] };
        let mut parts: Vec<String> = Vec::new();
        for e in &set {
            let mut factors: Vec<String> = Vec::new();
            for (axis, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(names[axis].to_string()),
                    _ => factors.push(format!("{}^{}", names[axis], exp)),
                }
            }
            if factors.is_empty() {
                parts.push("1".into());
            } else {
                parts.push(factors.join("*"));
            }
        }
        parts.join("+")
    }
}

impl fmt::Display for FourierMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.entry_string(0, 0),
            self.entry_string(0, 1),
            self.entry_string(1, 0),
            self.entry_string(1, 1)
        )
    }
}

/// Reusable power-table buffers for evaluating a Fourier matrix without
/// per-call allocation; the cocycle iterations evaluate millions of times.
pub(crate) struct EvalScratch {
    powers: [Vec<Complex64>; 2],
}

impl EvalScratch {
    pub(crate) fn new() -> Self {
        Self {
            powers: [Vec::new(), Vec::new()],
        }
    }

    pub(crate) fn evaluate(&mut self, f: &FourierMatrix, k: &[f64]) -> Matrix2 {
        for (axis, &len) in f.expansion.iter().enumerate() {
            let table = &mut self.powers[axis];
            table.clear();
            table.reserve(len as usize);
            let z = Complex64::from_polar(1.0, TAU * k[axis]);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..len {
                table.push(acc);
                acc *= z;
            }
        }
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for e in &f.entries[i][j] {
                    let mut term = self.powers[0][e[0] as usize];
                    if e.len() == 2 {
                        term *= self.powers[1][e[1] as usize];
                    }
                    sum += term;
                }
                out[i][j] = sum;
            }
        }
        out
    }
}
