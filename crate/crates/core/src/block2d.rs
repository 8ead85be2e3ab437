//! Two-dimensional binary block substitutions.
//!
//! Each letter maps to a rectangular block of letters; both blocks share
//! the same width and height (at least 2 each). Cells are addressed with
//! the reference point at the lower-left corner: exponent `(m1, m2)` means
//! column `m1`, row `m2` counted upwards, which pins the printed Fourier
//! matrices. Block text reads the top row first, rows separated by `/`,
//! blocks separated by `;`, letters `0/1` or `a/b`.

use crate::fourier::FourierMatrix;
use crate::laurent::LaurentPoly;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("blocks must share dimensions (got {0}x{1} and {2}x{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("blocks must be at least 2x2 (got {0}x{1})")]
    TooSmall(usize, usize),
    #[error("block rows must have equal length")]
    RaggedRows,
    #[error("blocks must be over {{0,1}} or {{a,b}} (found {0:?})")]
    BadSymbol(char),
    #[error("block text must be two '/'-separated blocks joined by ';', e.g. \"ba/ab;ab/ba\"")]
    BadFormat,
}

/// A binary block substitution: image blocks for the letters 0 and 1,
/// stored with row 0 at the bottom.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockSubstitution2D {
    block0: Vec<Vec<u8>>,
    block1: Vec<Vec<u8>>,
}

impl BlockSubstitution2D {
    /// Builds from rows listed bottom-up (row 0 first).
    pub fn from_rows_bottom_up(
        block0: Vec<Vec<u8>>,
        block1: Vec<Vec<u8>>,
    ) -> Result<Self, BlockError> {
        let check = |b: &Vec<Vec<u8>>| -> Result<(usize, usize), BlockError> {
            let h = b.len();
            let w = b.first().map_or(0, |r| r.len());
            if b.iter().any(|r| r.len() != w) {
                return Err(BlockError::RaggedRows);
            }
            for row in b {
                if let Some(&c) = row.iter().find(|&&c| c > 1) {
                    return Err(BlockError::BadSymbol((b'0' + c) as char));
                }
            }
            Ok((w, h))
        };
        let (w0, h0) = check(&block0)?;
        let (w1, h1) = check(&block1)?;
        if (w0, h0) != (w1, h1) {
            return Err(BlockError::DimensionMismatch(w0, h0, w1, h1));
        }
        if w0 < 2 || h0 < 2 {
            return Err(BlockError::TooSmall(w0, h0));
        }
        Ok(Self { block0, block1 })
    }

    /// Block width (expansion along the first torus variable).
    pub fn width(&self) -> usize {
        self.block0[0].len()
    }

    /// Block height (expansion along the second torus variable).
    pub fn height(&self) -> usize {
        self.block0.len()
    }

    /// Letter of block `j` at column `m1`, row `m2` (bottom-up).
    pub fn cell(&self, j: u8, m1: usize, m2: usize) -> u8 {
        let b = if j == 0 { &self.block0 } else { &self.block1 };
        b[m2][m1]
    }

    /// True when some cell carries the same letter in both blocks.
    pub fn has_coincidence(&self) -> bool {
        self.block0
            .iter()
            .flatten()
            .zip(self.block1.iter().flatten())
            .any(|(a, b)| a == b)
    }

    pub fn is_bijective(&self) -> bool {
        !self.has_coincidence()
    }

    /// Letter-count matrix: entry (i, j) counts letter `i` in block `j`.
    pub fn substitution_matrix(&self) -> [[u64; 2]; 2] {
        let mut m = [[0u64; 2]; 2];
        for (j, block) in [&self.block0, &self.block1].into_iter().enumerate() {
            for &c in block.iter().flatten() {
                m[c as usize][j] += 1;
            }
        }
        m
    }

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

    /// Fourier matrix in two torus variables: entry (i, j) collects the
    /// cell positions `(m1, m2)` of letter `i` in block `j`.
    pub fn fourier_matrix_2d(&self) -> FourierMatrix {
        let mut entries: [[Vec<Vec<u32>>; 2]; 2] = Default::default();
        for (j, block) in [&self.block0, &self.block1].into_iter().enumerate() {
            for (m2, row) in block.iter().enumerate() {
                for (m1, &letter) in row.iter().enumerate() {
                    entries[letter as usize][j].push(vec![m1 as u32, m2 as u32]);
                }
            }
        }
        for row in &mut entries {
            for set in row.iter_mut() {
                set.sort();
            }
        }
        FourierMatrix::from_parts(vec![self.width() as u32, self.height() as u32], entries)
    }

    /// Bivariate `Q - R`: coefficient `+1` where the blocks show (0,1),
    /// `-1` where they show (1,0), zero at coincidences.
    pub fn qr_polynomial_2d(&self) -> LaurentPoly {
        let mut terms = Vec::new();
        for m2 in 0..self.height() {
            for m1 in 0..self.width() {
                let pair = (self.cell(0, m1, m2), self.cell(1, m1, m2));
                let c = match pair {
                    (0, 1) => 1,
                    (1, 0) => -1,
                    _ => 0,
                };
                if c != 0 {
                    terms.push((vec![m1 as i64, m2 as i64], c));
                }
            }
        }
        LaurentPoly::new(2, terms).expect("fixed dimension 2")
    }

    /// Bivariate `Q + R`: coefficient `+1` at every bijective cell.
    pub fn qr_sum_polynomial_2d(&self) -> LaurentPoly {
        let mut terms = Vec::new();
        for m2 in 0..self.height() {
            for m1 in 0..self.width() {
                if self.cell(0, m1, m2) != self.cell(1, m1, m2) {
                    terms.push((vec![m1 as i64, m2 as i64], 1));
                }
            }
        }
        LaurentPoly::new(2, terms).expect("fixed dimension 2")
    }

    /// The bijective 2x2 block analogue of Thue–Morse:
    /// `0 -> (b a / a b)`, `1 -> (a b / b a)` reading top rows first.
    pub fn thue_morse_2d() -> Self {
        Self::from_rows_bottom_up(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    /// The 3x3 bijective block substitution of the squiral tiling.
    pub fn squiral() -> Self {
        Self::from_rows_bottom_up(
            vec![vec![1, 0, 1], vec![0, 0, 0], vec![1, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 0]],
        )
        .unwrap()
    }

    /// A primitive 2x2 block substitution with a coincidence whose
    /// maximal exponent is the triangular-Ising constant `m(1+x+y)`
    /// (Wannier's entropy): `0 -> (b a / b b)`, `1 -> (a a / a a)`.
    pub fn wannier() -> Self {
        Self::from_rows_bottom_up(
            vec![vec![1, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap()
    }
}

impl fmt::Display for BlockSubstitution2D {
    /// Top row first, `/` between rows, `;` between blocks, letters 0/1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_block = |f: &mut fmt::Formatter<'_>, b: &Vec<Vec<u8>>| -> fmt::Result {
            for (i, row) in b.iter().rev().enumerate() {
                if i > 0 {
                    write!(f, "/")?;
                }
                for &c in row {
                    write!(f, "{c}")?;
                }
            }
            Ok(())
        };
        write_block(f, &self.block0)?;
        write!(f, ";")?;
        write_block(f, &self.block1)
    }
}

impl fmt::Debug for BlockSubstitution2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSubstitution2D({self})")
    }
}

impl FromStr for BlockSubstitution2D {
    type Err = BlockError;

    fn from_str(s: &str) -> Result<Self, BlockError> {
        let (first, second) = s.trim().split_once(';').ok_or(BlockError::BadFormat)?;
        let parse_block = |text: &str| -> Result<Vec<Vec<u8>>, BlockError> {
            let mut rows: Vec<Vec<u8>> = Vec::new();
            for row in text.trim().split('/') {
                let mut cells = Vec::new();
                for c in row.trim().chars() {
                    cells.push(match c {
                        '0' | 'a' => 0,
                        '1' | 'b' => 1,
                        other => return Err(BlockError::BadSymbol(other)),
                    });
                }
                rows.push(cells);
            }
            rows.reverse(); // text reads top row first; storage is bottom-up
            Ok(rows)
        };
        Self::from_rows_bottom_up(parse_block(first)?, parse_block(second)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parsing_and_display() {
        let tm: BlockSubstitution2D = "ba/ab;ab/ba".parse().unwrap();
        assert_eq!(tm, BlockSubstitution2D::thue_morse_2d());
        assert_eq!(tm.to_string(), "10/01;01/10");
        assert!("ba/ab".parse::<BlockSubstitution2D>().is_err());
        assert!("bc/ab;ab/ba".parse::<BlockSubstitution2D>().is_err());
        assert!("ba/a;ab/ba".parse::<BlockSubstitution2D>().is_err());
        assert!("b/a;a/b".parse::<BlockSubstitution2D>().is_err());
    }

    #[test]
    fn thue_morse_2d_fourier_entries() {
        let f = BlockSubstitution2D::thue_morse_2d().fourier_matrix_2d();
        assert_eq!(f.entry_string(0, 0), "1+x*y");
        assert_eq!(f.entry_string(1, 0), "x+y");
        assert_eq!(f.entry_string(0, 1), "x+y");
        assert_eq!(f.entry_string(1, 1), "1+x*y");
    }

    #[test]
    fn wannier_fourier_entries() {
        let f = BlockSubstitution2D::wannier().fourier_matrix_2d();
        assert_eq!(f.entry_string(0, 0), "x*y");
        assert_eq!(f.entry_string(0, 1), "1+x+y+x*y");
        assert_eq!(f.entry_string(1, 0), "1+x+y");
        assert_eq!(f.entry_string(1, 1), "0");
    }

    #[test]
    fn evaluation_at_zero_counts_letters() {
        for b in [
            BlockSubstitution2D::thue_morse_2d(),
            BlockSubstitution2D::squiral(),
            BlockSubstitution2D::wannier(),
        ] {
            let f = b.fourier_matrix_2d();
            let at0 = f.evaluate(&[0.0, 0.0]);
            let m = b.substitution_matrix();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (at0[i][j] - Complex64::new(m[i][j] as f64, 0.0)).norm() < 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn qr_polynomials_match_worked_examples() {
        let tm = BlockSubstitution2D::thue_morse_2d().qr_polynomial_2d();
        assert_eq!(tm.to_string(), "1-x-y+x*y");

        let sq = BlockSubstitution2D::squiral().qr_polynomial_2d();
        let expected: LaurentPoly = "x+y+x*y+x^2*y+x*y^2-1-x^2-y^2-x^2*y^2".parse().unwrap();
        assert_eq!(sq, expected);

        let wn = BlockSubstitution2D::wannier().qr_polynomial_2d();
        let expected: LaurentPoly = "-1-x-y".parse().unwrap();
        assert_eq!(wn, expected);

        let equal = BlockSubstitution2D::from_rows_bottom_up(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert!(equal.qr_polynomial_2d().is_zero());
    }

    #[test]
    fn squiral_qr_sum_factorizes() {
        // Q + R for the squiral blocks is (1+x+x^2)(1+y+y^2)
        let sum = BlockSubstitution2D::squiral().qr_sum_polynomial_2d();
        let expected: LaurentPoly = "1+x+x^2+y+x*y+x^2*y+y^2+x*y^2+x^2*y^2".parse().unwrap();
        assert_eq!(sum, expected);
    }

    #[test]
    fn coincidence_detection() {
        assert!(BlockSubstitution2D::wannier().has_coincidence());
        assert!(BlockSubstitution2D::thue_morse_2d().is_bijective());
        assert!(BlockSubstitution2D::squiral().is_bijective());
    }

    #[test]
    fn primitivity() {
        assert!(BlockSubstitution2D::thue_morse_2d().is_primitive());
        assert!(BlockSubstitution2D::squiral().is_primitive());
        assert!(BlockSubstitution2D::wannier().is_primitive());
    }
}
