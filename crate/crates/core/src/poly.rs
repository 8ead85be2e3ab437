//! Exact integer and complex polynomial arithmetic.
//!
//! Integer polynomials are stored densely with arbitrary-precision
//! coefficients in ascending exponent order, so that products built during
//! searches and property checks can never overflow. The zero polynomial is
//! represented by the empty coefficient list; every operation documents its
//! behaviour on it.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Errors raised by polynomial operations and parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// The zero polynomial has no degree, classification or reciprocal.
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    /// Text input did not parse as a polynomial.
    #[error("invalid polynomial text: {0}")]
    Parse(String),
}

/// Univariate polynomial with integer coefficients, ascending by exponent
/// (index `m` holds the coefficient of `z^m`).
///
/// Invariants: the last stored coefficient is nonzero; the zero polynomial
/// is the empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients, stripping trailing
    /// zeros so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero polynomial (empty coefficient list).
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `z^m` (zero when `m` exceeds the degree).
    pub fn coeff(&self, m: usize) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides out `z^valuation`, leaving a nonzero constant term.
    /// Returns the polynomial unchanged if it is zero or already has one.
    pub fn strip_valuation(&self) -> (usize, IntPolynomial) {
        match self.valuation() {
            None | Some(0) => (0, self.clone()),
            Some(v) => (v, IntPolynomial::new(self.coeffs[v..].to_vec())),
        }
    }

    pub fn negated(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Coefficientwise `p(-z)`: flips the sign of odd-exponent coefficients.
    pub fn alternated(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Height: maximum coefficient magnitude. Zero for the zero polynomial.
    pub fn height(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_else(BigUint::zero)
    }

    /// Lossy conversion to floating-point coefficients (exact while the
    /// coefficients fit in a double, which all height-one work does).
    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0))
                .collect(),
        )
    }

    pub(crate) fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| c * BigInt::from(m))
                .collect(),
        )
    }

    /// Content: gcd of all coefficient magnitudes (zero for zero).
    pub(crate) fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c.magnitude()))
    }

    /// Primitive part with positive leading coefficient.
    pub(crate) fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let content = BigInt::from(self.content());
        let mut out: Vec<BigInt> = self.coeffs.iter().map(|c| c / &content).collect();
        if out.last().unwrap().is_negative() {
            for c in &mut out {
                *c = -&*c;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self` in Z[z].
    pub(crate) fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let (dn, dd) = (self.coeffs.len(), divisor.coeffs.len());
        if dn < dd {
            return None;
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for qi in (0..quot.len()).rev() {
            let top = rem[qi + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (di, dc) in divisor.coeffs.iter().enumerate() {
                rem[qi + di] -= &q * dc;
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    /// Gcd over Z[z] via a primitive pseudo-remainder sequence. The result
    /// is primitive with positive leading coefficient.
    pub(crate) fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r.primitive_part();
        }
        a
    }
}

/// Pseudo-remainder of `a` by `b` (degrees `da >= db`, `b` nonzero):
/// `lc(b)^(da-db+1) * a  mod  b`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.coeffs.len() - 1;
    let lead = b.coeffs.last().unwrap().clone();
    let mut rem = a.coeffs.clone();
    while rem.len() >= b.coeffs.len() && !rem.is_empty() {
        if rem.last().unwrap().is_zero() {
            rem.pop();
            continue;
        }
        let shift = rem.len() - 1 - db;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for (di, dc) in b.coeffs.iter().enumerate() {
            rem[shift + di] -= &top * dc;
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    IntPolynomial::new(rem)
}

/// Classification flags for an integer polynomial.
///
/// Borwein: height at most one and nonzero constant term. Littlewood: all
/// coefficients in {-1, 1}. Newman: coefficients in {0, 1} with constant
/// term one. Reciprocal: palindromic coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyClass {
    pub height: BigUint,
    pub is_borwein: bool,
    pub is_littlewood: bool,
    pub is_newman: bool,
    pub is_reciprocal: bool,
}

/// Classifies a nonzero integer polynomial.
///
/// Errors on the zero polynomial, which has no classification.
pub fn classify(p: &IntPolynomial) -> Result<PolyClass, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("classification"));
    }
    let one = BigUint::from(1u8);
    let height = p.height();
    let c0 = &p.coeffs[0];
    let is_borwein = height <= one && !c0.is_zero();
    let is_littlewood = p.coeffs.iter().all(|c| c.magnitude() == &one);
    let is_newman = c0 == &BigInt::from(1) && p.coeffs.iter().all(|c| !c.is_negative() && c.magnitude() <= &one);
    let is_reciprocal = p.coeffs.iter().eq(p.coeffs.iter().rev());
    Ok(PolyClass {
        height,
        is_borwein,
        is_littlewood,
        is_newman,
        is_reciprocal,
    })
}

/// Reciprocal polynomial `z^deg(p) * p(1/z)`: the coefficient-reversed
/// polynomial, with the monomial factor stripped so the constant term is
/// nonzero. Errors on the zero polynomial.
pub fn reciprocal_of(p: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("reciprocal"));
    }
    let mut rev: Vec<BigInt> = p.coeffs.iter().rev().cloned().collect();
    let lead = rev.iter().rposition(|c| !c.is_zero()).unwrap();
    rev.truncate(lead + 1);
    Ok(IntPolynomial::new(rev))
}

/// Coefficient convolution. Multiplying by the zero polynomial yields zero.
pub fn poly_mul(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() || q.is_zero() {
        return IntPolynomial::zero();
    }
    let mut out = vec![BigInt::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    IntPolynomial::new(out)
}

impl fmt::Display for IntPolynomial {
    /// Emits the comma-separated ascending coefficient form, e.g. `1,1,0,-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;

    /// Accepts the comma form `1,1,0,-1` and the human form `1+z-z^3`.
    /// The variable may be any single ASCII letter, used consistently.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if s.contains(',') || !s.bytes().any(|b| b.is_ascii_alphabetic()) {
            let coeffs = s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| PolyError::Parse(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(IntPolynomial::new(coeffs));
        }
        parse_human(s)
    }
}

/// Parses sums of monomial terms such as `1+z-z^3-2z^4` or `-z^2+3`.
fn parse_human(s: &str) -> Result<IntPolynomial, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut var: Option<char> = None;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes: Vec<char> = compact.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::from(1);
        while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(PolyError::Parse("dangling sign".into()));
        }
        let digit_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if digit_start == i {
            BigInt::from(1)
        } else {
            compact[digit_start..i]
                .parse::<BigInt>()
                .map_err(|_| PolyError::Parse("bad coefficient".into()))?
        };
        coeff *= sign;
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            let v = bytes[i];
            match var {
                None => var = Some(v),
                Some(prev) if prev != v => {
                    return Err(PolyError::Parse(format!(
                        "mixed variables {prev:?} and {v:?}"
                    )))
                }
                _ => {}
            }
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let e_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if e_start == i {
                    return Err(PolyError::Parse("missing exponent after ^".into()));
                }
                exp = compact[e_start..i]
                    .parse::<usize>()
                    .map_err(|_| PolyError::Parse("bad exponent".into()))?;
            }
        } else if digit_start == i {
            return Err(PolyError::Parse(format!(
                "unexpected character {:?}",
                bytes[i]
            )));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coeff;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Univariate polynomial with complex floating-point coefficients,
/// ascending by exponent. Used for the inner fibers of iterated
/// multivariate Mahler integrals and as root-finder input.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Strips trailing coefficients that are exactly zero.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> ComplexPolynomial {
        if self.coeffs.len() <= 1 {
            return ComplexPolynomial::new(Vec::new());
        }
        ComplexPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| c * m as f64)
                .collect(),
        )
    }

    /// Largest coefficient magnitude (sup norm of the coefficient vector).
    pub fn coeff_sup(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPolynomial {
        IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn classify_lehmer() {
        let c = classify(&lehmer()).unwrap();
        assert_eq!(c.height, BigUint::from(1u8));
        assert!(c.is_borwein);
        assert!(!c.is_littlewood);
        assert!(c.is_reciprocal);
        assert!(!c.is_newman);
    }

    #[test]
    fn classify_constant_one() {
        let c = classify(&IntPolynomial::from_i64(&[1])).unwrap();
        assert_eq!(c.height, BigUint::from(1u8));
        assert!(c.is_newman);
        assert!(c.is_reciprocal);
    }

    #[test]
    fn classify_littlewood() {
        let c = classify(&IntPolynomial::from_i64(&[-1, -1, 1, -1, 1])).unwrap();
        assert!(c.is_littlewood);
        assert!(c.is_borwein);
        assert!(!c.is_reciprocal);
    }

    #[test]
    fn classify_zero_is_error() {
        assert_eq!(
            classify(&IntPolynomial::zero()),
            Err(PolyError::ZeroPolynomial("classification"))
        );
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_of(&lehmer()).unwrap(), lehmer());
        assert_eq!(
            reciprocal_of(&IntPolynomial::from_i64(&[1, 2, 3])).unwrap(),
            IntPolynomial::from_i64(&[3, 2, 1])
        );
        assert_eq!(
            reciprocal_of(&IntPolynomial::from_i64(&[0, 0, 5])).unwrap(),
            IntPolynomial::from_i64(&[5])
        );
        assert!(reciprocal_of(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = IntPolynomial::from_i64(&[1, 1]);
        let b = IntPolynomial::from_i64(&[1, -1]);
        assert_eq!(poly_mul(&a, &b), IntPolynomial::from_i64(&[1, 0, -1]));
        let c = IntPolynomial::from_i64(&[1, 1, 1]);
        assert_eq!(poly_mul(&c, &b), IntPolynomial::from_i64(&[1, 0, 0, -1]));
        let one = IntPolynomial::from_i64(&[1]);
        assert_eq!(poly_mul(&lehmer(), &one), lehmer());
        assert_eq!(poly_mul(&a, &IntPolynomial::zero()), IntPolynomial::zero());
    }

    #[test]
    fn parse_comma_and_human() {
        let p: IntPolynomial = "1,1,0,-1,-1,-1,-1,-1,0,1,1".parse().unwrap();
        assert_eq!(p, lehmer());
        let q: IntPolynomial = "1+z-z^3-z^4-z^5-z^6-z^7+z^9+z^10".parse().unwrap();
        assert_eq!(q, lehmer());
        let r: IntPolynomial = "-1-z+z^2-z^3+z^4".parse().unwrap();
        assert_eq!(r, IntPolynomial::from_i64(&[-1, -1, 1, -1, 1]));
        assert!("1+z+y".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn display_is_comma_form() {
        assert_eq!(lehmer().to_string(), "1,1,0,-1,-1,-1,-1,-1,0,1,1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn gcd_and_exact_div() {
        // (1+z)^2 (1-z) and (1+z)(1+z^2) share exactly (1+z)
        let a = poly_mul(
            &poly_mul(
                &IntPolynomial::from_i64(&[1, 1]),
                &IntPolynomial::from_i64(&[1, 1]),
            ),
            &IntPolynomial::from_i64(&[1, -1]),
        );
        let b = poly_mul(
            &IntPolynomial::from_i64(&[1, 1]),
            &IntPolynomial::from_i64(&[1, 0, 1]),
        );
        let g = a.gcd(&b);
        assert_eq!(g, IntPolynomial::from_i64(&[1, 1]));
        let q = a.exact_div(&g).unwrap();
        assert_eq!(poly_mul(&q, &g), a);
        assert!(a.exact_div(&IntPolynomial::from_i64(&[1, 0, 1])).is_none());
    }

    #[test]
    fn derivative_and_valuation() {
        let p = IntPolynomial::from_i64(&[0, 0, 5, 1]);
        assert_eq!(p.derivative(), IntPolynomial::from_i64(&[0, 10, 3]));
        let (v, q) = p.strip_valuation();
        assert_eq!(v, 2);
        assert_eq!(q, IntPolynomial::from_i64(&[5, 1]));
    }
}
