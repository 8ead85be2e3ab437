//! From height-one polynomials to substitutions, and the exhaustive
//! Borwein search.
//!
//! A height-one polynomial dictates the bijective columns of a
//! substitution: coefficient `+1` gives column (0,1), `-1` gives (1,0),
//! and each zero coefficient leaves a free choice between the two
//! coincidence columns. A polynomial with `n` zeros therefore yields `2^n`
//! substitutions, all sharing the same maximal exponent, plus the same
//! family again with the words exchanged (the `-p` companion).

use crate::mahler::{mahler_jensen, MahlerError};
use crate::poly::IntPolynomial;
use crate::subst::BinarySubstitution;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("polynomial must have height 1 (coefficients in -1,0,1)")]
    HeightTooLarge,
    #[error("polynomial must have a nonzero constant term")]
    ZeroConstantTerm,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("zero-coefficient choices have length {got}, but the polynomial has {expected} zero coefficients")]
    ChoiceLengthMismatch { got: usize, expected: usize },
    #[error("search degree must be between 2 and 16, got {0}")]
    DegreeOutOfRange(usize),
    #[error(transparent)]
    Mahler(#[from] MahlerError),
}

/// Column chosen for a zero coefficient: the coincidence on letter 0 or
/// on letter 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coincidence {
    /// Column (0,0).
    Zeros,
    /// Column (1,1).
    Ones,
}

/// One coincidence choice per zero coefficient of the source polynomial,
/// in ascending exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroChoice(pub Vec<Coincidence>);

impl ZeroChoice {
    pub fn empty() -> Self {
        Self(Vec::new())
    }
}

fn signs_of(p: &IntPolynomial) -> Result<Vec<i8>, ConstructError> {
    let one = BigInt::from(1);
    p.coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                Ok(0)
            } else if c == &one {
                Ok(1)
            } else if c.magnitude() == one.magnitude() {
                Ok(-1)
            } else {
                Err(ConstructError::HeightTooLarge)
            }
        })
        .collect()
}

/// Builds the substitution whose bijective columns spell out `p`:
/// column `m` is (0,1) when `c_m = 1`, (1,0) when `c_m = -1`, and the
/// chosen coincidence when `c_m = 0`. The result satisfies
/// `qr_polynomial = p` exactly.
pub fn substitution_from_signs(
    p: &IntPolynomial,
    zc: &ZeroChoice,
) -> Result<BinarySubstitution, ConstructError> {
    let signs = signs_of(p)?;
    if signs.len() < 2 {
        return Err(ConstructError::DegreeTooSmall);
    }
    if signs[0] == 0 {
        return Err(ConstructError::ZeroConstantTerm);
    }
    let zero_count = signs.iter().filter(|&&s| s == 0).count();
    if zc.0.len() != zero_count {
        return Err(ConstructError::ChoiceLengthMismatch {
            got: zc.0.len(),
            expected: zero_count,
        });
    }
    let mut w0 = Vec::with_capacity(signs.len());
    let mut w1 = Vec::with_capacity(signs.len());
    let mut choices = zc.0.iter();
    for &s in &signs {
        let (a, b) = match s {
            1 => (0, 1),
            -1 => (1, 0),
            _ => match choices.next().unwrap() {
                Coincidence::Zeros => (0, 0),
                Coincidence::Ones => (1, 1),
            },
        };
        w0.push(a);
        w1.push(b);
    }
    Ok(BinarySubstitution::from_bits(w0, w1).expect("words validated by construction"))
}

/// Enumerates every substitution associated with `p`: all `2^z`
/// coincidence choices, each together with its word-exchanged companion
/// (the family of `-p`), so `qr_polynomial` is `p` or `-p` throughout.
/// With `require_primitive` set, non-primitive variants are dropped.
pub fn enumerate_substitutions(
    p: &IntPolynomial,
    require_primitive: bool,
) -> Result<Vec<BinarySubstitution>, ConstructError> {
    let signs = signs_of(p)?;
    let zero_count = signs.iter().filter(|&&s| s == 0).count();
    let mut out = Vec::with_capacity(1 << (zero_count + 1));
    for mask in 0u64..(1u64 << zero_count) {
        let choices: Vec<Coincidence> = (0..zero_count)
            .map(|bit| {
                if mask >> bit & 1 == 0 {
                    Coincidence::Zeros
                } else {
                    Coincidence::Ones
                }
            })
            .collect();
        let s = substitution_from_signs(p, &ZeroChoice(choices))?;
        let swapped = s.swapped();
        out.push(s);
        out.push(swapped);
    }
    if require_primitive {
        out.retain(|s| s.is_primitive());
    }
    Ok(out)
}

/// One hit of the Borwein search: a canonical polynomial, its measure,
/// and its degree.
#[derive(Clone, Debug)]
pub struct SearchRecord {
    pub poly: IntPolynomial,
    pub measure: f64,
    pub degree: usize,
}

/// Canonical representative of the orbit of a coefficient vector under
/// the measure-preserving symmetries: negation, reversal, and sign
/// alternation `p(z) -> p(-z)`. The representative is the
/// lexicographically least of the eight images.
fn canonical(coeffs: &[i8]) -> Vec<i8> {
    let mut best: Option<Vec<i8>> = None;
    for rev in [false, true] {
        for neg in [false, true] {
            for alt in [false, true] {
                let mut v: Vec<i8> = if rev {
                    coeffs.iter().rev().cloned().collect()
                } else {
                    coeffs.to_vec()
                };
                if alt {
                    for (m, c) in v.iter_mut().enumerate() {
                        if m % 2 == 1 {
                            *c = -*c;
                        }
                    }
                }
                if neg {
                    for c in v.iter_mut() {
                        *c = -*c;
                    }
                }
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best.unwrap()
}

fn search_degree(degree: usize, positive_floor: f64) -> Result<Vec<SearchRecord>, ConstructError> {
    let mut records = Vec::new();
    let interior = degree - 1;
    let total: u64 = 4 * 3u64.pow(interior as u32);
    let mut coeffs = vec![0i8; degree + 1];
    for idx in 0..total {
        let mut rest = idx;
        coeffs[0] = if rest % 2 == 0 { 1 } else { -1 };
        rest /= 2;
        coeffs[degree] = if rest % 2 == 0 { 1 } else { -1 };
        rest /= 2;
        for m in 1..degree {
            coeffs[m] = (rest % 3) as i8 - 1;
            rest /= 3;
        }
        if canonical(&coeffs) != coeffs {
            continue;
        }
        let poly = IntPolynomial::from_i64(&coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>());
        let measure = mahler_jensen(&poly)?.value;
        if measure > positive_floor {
            records.push(SearchRecord {
                poly,
                measure,
                degree,
            });
        }
    }
    Ok(records)
}

fn sort_records(records: &mut [SearchRecord]) {
    records.sort_by(|a, b| {
        a.measure
            .partial_cmp(&b.measure)
            .unwrap()
            .then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
}

/// Exhaustive search over Borwein polynomials up to `max_degree`:
/// constant and leading coefficients in {-1, 1}, interior coefficients in
/// {-1, 0, 1}, deduplicated under the symmetry orbit, keeping every
/// measure above `positive_floor`, sorted ascending by measure.
pub fn borwein_search(
    max_degree: usize,
    positive_floor: f64,
) -> Result<Vec<SearchRecord>, ConstructError> {
    if !(2..=16).contains(&max_degree) {
        return Err(ConstructError::DegreeOutOfRange(max_degree));
    }
    let mut records = Vec::new();
    for degree in 1..=max_degree {
        records.extend(search_degree(degree, positive_floor)?);
    }
    sort_records(&mut records);
    Ok(records)
}

/// Parallel variant of [`borwein_search`] fanning degrees out across a
/// thread pool; the merged output is identical to the serial route.
pub fn borwein_search_parallel(
    max_degree: usize,
    positive_floor: f64,
    workers: usize,
) -> Result<Vec<SearchRecord>, ConstructError> {
    if !(2..=16).contains(&max_degree) {
        return Err(ConstructError::DegreeOutOfRange(max_degree));
    }
    if workers <= 1 {
        return borwein_search(max_degree, positive_floor);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");
    let chunks: Result<Vec<Vec<SearchRecord>>, ConstructError> = pool.install(|| {
        (1..=max_degree)
            .into_par_iter()
            .map(|d| search_degree(d, positive_floor))
            .collect()
    });
    let mut records: Vec<SearchRecord> = chunks?.into_iter().flatten().collect();
    sort_records(&mut records);
    Ok(records)
}

/// Measure-sorted minimum of a search result, if any.
pub fn minimum_positive_measure(records: &[SearchRecord]) -> Option<f64> {
    records.first().map(|r| r.measure)
}

impl SearchRecord {
    /// Coefficients as machine integers (they are all in {-1, 0, 1}).
    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.poly
            .coeffs()
            .iter()
            .map(|c| c.to_i64().expect("search coefficients are small"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPolynomial {
        IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn littlewood_example_construction() {
        let p = IntPolynomial::from_i64(&[-1, -1, 1, -1, 1]);
        let s = substitution_from_signs(&p, &ZeroChoice::empty()).unwrap();
        assert_eq!(s.to_string(), "11010,00101");
        assert_eq!(s.qr_polynomial(), p);
    }

    #[test]
    fn lehmer_example_construction() {
        let zc = ZeroChoice(vec![Coincidence::Ones, Coincidence::Zeros]);
        let s = substitution_from_signs(&lehmer(), &zc).unwrap();
        assert_eq!(s.to_string(), "00111111000,11100000011");
        assert_eq!(s.qr_polynomial(), lehmer());
    }

    #[test]
    fn newman_negated_construction() {
        let p = IntPolynomial::from_i64(&[-1, 0, -1]);
        let s = substitution_from_signs(&p, &ZeroChoice(vec![Coincidence::Ones])).unwrap();
        assert_eq!(s.to_string(), "111,010");
    }

    #[test]
    fn construction_rejects_bad_input() {
        let too_tall = IntPolynomial::from_i64(&[2, 1]);
        assert!(matches!(
            substitution_from_signs(&too_tall, &ZeroChoice::empty()),
            Err(ConstructError::HeightTooLarge)
        ));
        let no_constant = IntPolynomial::from_i64(&[0, 1]);
        assert!(matches!(
            substitution_from_signs(&no_constant, &ZeroChoice::empty()),
            Err(ConstructError::ZeroConstantTerm)
        ));
        let wrong_len = substitution_from_signs(&lehmer(), &ZeroChoice::empty());
        assert!(matches!(
            wrong_len,
            Err(ConstructError::ChoiceLengthMismatch { got: 0, expected: 2 })
        ));
    }

    #[test]
    fn enumerate_lehmer_gives_eight() {
        let all = enumerate_substitutions(&lehmer(), false).unwrap();
        assert_eq!(all.len(), 8);
        for s in &all {
            let qr = s.qr_polynomial();
            assert!(qr == lehmer() || qr == lehmer().negated());
        }
        // how many of the eight are primitive is a computed fact: all
        let primitive = enumerate_substitutions(&lehmer(), true).unwrap();
        assert_eq!(primitive.len(), 8);
    }

    #[test]
    fn enumerate_newman_square_matches_known_split() {
        let p = IntPolynomial::from_i64(&[1, 0, 1]);
        let prim = enumerate_substitutions(&p, true).unwrap();
        let words: Vec<String> = prim.iter().map(|s| s.to_string()).collect();
        assert!(words.contains(&"101,000".to_string()));
        assert!(words.contains(&"111,010".to_string()));
        assert!(!words.contains(&"000,101".to_string()));
        assert!(!words.contains(&"010,111".to_string()));
    }

    #[test]
    fn enumerate_littlewood_gives_two() {
        let p = IntPolynomial::from_i64(&[-1, -1, 1, -1, 1]);
        let all = enumerate_substitutions(&p, false).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn search_guard_range() {
        assert!(borwein_search(1, 1e-6).is_err());
        assert!(borwein_search(17, 1e-6).is_err());
    }

    #[test]
    fn degree_two_minimum_is_golden() {
        let records = borwein_search(2, 1e-6).unwrap();
        let tau: f64 = (1.0 + 5.0f64.sqrt()) / 2.0;
        let min = minimum_positive_measure(&records).unwrap();
        assert!((min - tau.ln()).abs() < 1e-12, "got {min}");
    }

    #[test]
    fn degree_four_contains_littlewood_example() {
        let records = borwein_search(4, 1e-6).unwrap();
        let target = canonical(&[-1, -1, 1, -1, 1]);
        let target_poly =
            IntPolynomial::from_i64(&target.iter().map(|&c| c as i64).collect::<Vec<_>>());
        let hit = records.iter().find(|r| r.poly == target_poly).unwrap();
        assert!((hit.measure - 0.656255979236976).abs() < 1e-9);
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = borwein_search(6, 1e-6).unwrap();
        let parallel = borwein_search_parallel(6, 1e-6, 4).unwrap();
        assert_eq!(serial.len(), parallel.len());
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a.poly, b.poly);
            assert_eq!(a.measure.to_bits(), b.measure.to_bits());
        }
    }
}
