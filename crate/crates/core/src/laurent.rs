//! Laurent polynomials in up to three torus variables.
//!
//! Terms are kept in a sorted map from exponent vectors to integer
//! coefficients; zero coefficients are never stored. The variables are
//! named `x`, `y`, `z` in that order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

const VAR_NAMES: [char; 3] = ['x', 'y', 'z'];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("invalid polynomial text: {0}")]
    Parse(String),
    #[error("dimension must be between 1 and 3, got {0}")]
    BadDimension(usize),
}

/// Sparse Laurent polynomial with integer coefficients in `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    /// Builds from `(exponent vector, coefficient)` pairs. All exponent
    /// vectors must have length `dim`; zero coefficients are dropped and
    /// repeated exponents accumulate.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self, LaurentError> {
        if dim == 0 || dim > 3 {
            return Err(LaurentError::BadDimension(dim));
        }
        let mut map: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(LaurentError::BadDimension(e.len()));
            }
            *map.entry(e).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(Self { dim, terms: map })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Display order: total degree first, ties broken by the reversed
/// exponent vector, so `x` prints before `y`, e.g. `1+x+y+x*y`.
fn display_key(exps: &[i64]) -> (i64, Vec<i64>) {
    (exps.iter().sum(), exps.iter().rev().cloned().collect())
}

impl fmt::Display for LaurentPoly {
    /// Sum-of-terms form with unit parts omitted, e.g. `1+x+y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<i64>, &i64)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| display_key(e));
        let mut first = true;
        for (exps, &coeff) in ordered {
            let mag = coeff.abs();
            if first {
                if coeff < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || exps.iter().all(|&e| e == 0) {
                factors.push(mag.to_string());
            }
            for (axis, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(VAR_NAMES[axis].to_string()),
                    _ => factors.push(format!("{}^{}", VAR_NAMES[axis], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses sums of terms `c*x^a*y^b[*z^c]` with omitted unit parts.
    /// The dimension is the highest variable used (`x` alone gives 1,
    /// anything mentioning `y` gives 2, `z` gives 3); pure constants
    /// parse as one-dimensional.
    fn from_str(s: &str) -> Result<Self, LaurentError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentError::Parse("empty input".into()));
        }
        let chars: Vec<char> = compact.chars().collect();
        let mut raw: Vec<([i64; 3], i64)> = Vec::new();
        let mut max_axis = 0usize;
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= chars.len() {
                return Err(LaurentError::Parse("dangling sign".into()));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff: i64 = if start == i {
                1
            } else {
                compact[start..i]
                    .parse()
                    .map_err(|_| LaurentError::Parse("bad coefficient".into()))?
            };
            coeff *= sign;
            let mut exps = [0i64; 3];
            let mut saw_var = start != i;
            loop {
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
                if i >= chars.len() || !chars[i].is_ascii_alphabetic() {
                    break;
                }
                let axis = match chars[i] {
                    'x' => 0,
                    'y' => 1,
                    'z' => 2,
                    other => {
                        return Err(LaurentError::Parse(format!("unknown variable {other:?}")))
                    }
                };
                max_axis = max_axis.max(axis);
                i += 1;
                let mut e: i64 = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let neg = i < chars.len() && chars[i] == '-';
                    if neg {
                        i += 1;
                    }
                    let e_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if e_start == i {
                        return Err(LaurentError::Parse("missing exponent after ^".into()));
                    }
                    e = compact[e_start..i]
                        .parse()
                        .map_err(|_| LaurentError::Parse("bad exponent".into()))?;
                    if neg {
                        e = -e;
                    }
                }
                exps[axis] += e;
                saw_var = true;
            }
            if !saw_var {
                return Err(LaurentError::Parse(format!(
                    "unexpected character {:?}",
                    chars[i]
                )));
            }
            raw.push((exps, coeff));
        }
        let dim = max_axis + 1;
        LaurentPoly::new(dim, raw.into_iter().map(|(e, c)| (e[..dim].to_vec(), c)))
    }
}
