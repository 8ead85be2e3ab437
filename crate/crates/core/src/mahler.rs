//! Logarithmic Mahler measures.
//!
//! The measure of a polynomial is the mean of `log|p|` over the unit
//! circle. Jensen's formula turns that integral into
//! `log|lead| + sum_j log max(|root_j|, 1)`, which is the exact route used
//! here: roots come from a simultaneous Aberth–Ehrlich iteration with a
//! Newton polish. A direct grid quadrature of the defining integral serves
//! as an independent oracle, and an iterated scheme extends the measure to
//! two and three torus variables with the innermost variable integrated
//! exactly via the root route.

use crate::laurent::LaurentPoly;
use crate::poly::{ComplexPolynomial, IntPolynomial};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rustfft::FftPlanner;
use std::f64::consts::PI;
use thiserror::Error;

/// Root-finding tolerance used by the Jensen route.
pub const ROOT_TOL: f64 = 1e-12;
/// Iteration cap for the simultaneous root iteration.
pub const ROOT_MAX_ITER: usize = 200;
/// Roots whose modulus is within this band of the unit circle contribute
/// zero to Jensen's sum, so cyclotomic factors do not inject noise.
pub const UNIT_CIRCLE_BAND: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum MahlerError {
    #[error("Mahler measure of 0 undefined")]
    ZeroPolynomial,
    #[error("root finding did not converge within {iterations} iterations (best residual {best_residual:.3e})")]
    NonConvergence { iterations: usize, best_residual: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("persistent underflow of |p| on the quadrature grid near t = {0}")]
    Underflow(f64),
    #[error("{degenerate} of {total} fibers were identically zero (more than 1%)")]
    DegenerateFibers { degenerate: usize, total: usize },
}

/// Which route produced a [`MahlerResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MahlerMethod {
    Jensen,
    Quadrature,
    Iterated,
}

/// Supporting data for a computed measure.
#[derive(Clone, Debug)]
pub enum MahlerDetail {
    /// Roots found by the Jensen route (with multiplicity).
    Roots(Vec<Complex64>),
    /// Grid size used by a quadrature or iterated route.
    Grid { points: usize },
}

/// A computed logarithmic Mahler measure in natural-log units.
#[derive(Clone, Debug)]
pub struct MahlerResult {
    pub value: f64,
    pub method: MahlerMethod,
    pub est_error: f64,
    pub detail: MahlerDetail,
}

/// Finds all `deg p` roots (with multiplicity) of a complex polynomial by
/// the Aberth–Ehrlich simultaneous iteration from perturbed circular
/// starting points, followed by a Newton polish.
///
/// Every returned root satisfies `|p(a)| <= tol * (1+|a|)^deg * max|c|`;
/// otherwise a non-convergence error carries the best residual seen.
pub fn find_roots(p: &ComplexPolynomial, tol: f64) -> Result<Vec<Complex64>, MahlerError> {
    let deg = p
        .degree()
        .ok_or_else(|| MahlerError::InvalidInput("zero polynomial has no roots".into()))?;
    if deg < 1 {
        return Err(MahlerError::InvalidInput(
            "root finding needs degree at least 1".into(),
        ));
    }

    // Exact zeros at the origin deflate for free.
    let mut coeffs = p.coeffs().to_vec();
    let mut roots: Vec<Complex64> = Vec::with_capacity(deg);
    while coeffs.len() > 1 && coeffs[0].norm_sqr() == 0.0 {
        coeffs.remove(0);
        roots.push(Complex64::new(0.0, 0.0));
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let poly = ComplexPolynomial::new(coeffs);
    let deriv = poly.derivative();
    let lead = *poly.coeffs().last().unwrap();
    let c0 = poly.coeffs()[0];

    // Start on a circle of radius (|c0/cn|)^(1/n), clamped away from zero,
    // with an angular offset that breaks conjugate symmetry.
    let radius = (c0.norm() / lead.norm()).powf(1.0 / n as f64).clamp(0.5, 4.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * PI * (j as f64 + 0.35) / n as f64 + 0.42;
            radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    let mut best_residual = f64::INFINITY;
    let mut converged = false;
    for _ in 0..ROOT_MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = poly.eval(z[i]);
            let dv = deriv.eval(z[i]);
            if dv.norm_sqr() == 0.0 {
                let nudge = 1e-6 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 1e-6);
                max_step = f64::INFINITY;
                continue;
            }
            let newton = pv / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm_sqr() < 1e-60 {
                        repulsion += Complex64::new(1e30, 0.0);
                    } else {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm_sqr() < 1e-60 {
                newton
            } else {
                newton / denom
            };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= tol {
            converged = true;
            break;
        }
    }

    // Newton polish sharpens simple roots to machine precision.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let pv = poly.eval(*zi);
            let dv = deriv.eval(*zi);
            if dv.norm_sqr() == 0.0 {
                break;
            }
            let step = pv / dv;
            if step.norm() <= 1e-17 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }

    let sup = poly.coeff_sup();
    let mut worst = 0.0f64;
    for zi in &z {
        let residual = poly.eval(*zi).norm();
        let bound = tol * (1.0 + zi.norm()).powi(n as i32) * sup;
        worst = worst.max(residual / bound.max(f64::MIN_POSITIVE));
        best_residual = best_residual.min(residual);
    }
    if !converged && worst > 1.0 {
        return Err(MahlerError::NonConvergence {
            iterations: ROOT_MAX_ITER,
            best_residual,
        });
    }

    roots.extend(z);
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(roots)
}

/// Jensen contribution of one root: `log max(|a|, 1)`, snapped to zero
/// inside the unit-circle band.
fn jensen_term(root: Complex64) -> f64 {
    let m = root.norm();
    if (m - 1.0).abs() < UNIT_CIRCLE_BAND {
        0.0
    } else if m > 1.0 {
        m.ln()
    } else {
        0.0
    }
}

/// Measure of a square-free integer polynomial via its roots.
fn jensen_squarefree(p: &IntPolynomial, roots_out: &mut Vec<Complex64>) -> Result<f64, MahlerError> {
    let lead = p.leading().unwrap().to_f64().unwrap_or(f64::INFINITY).abs();
    if p.degree() == Some(0) {
        return Ok(lead.ln());
    }
    let roots = find_roots(&p.to_complex(), ROOT_TOL)?;
    let value = lead.ln() + roots.iter().map(|&r| jensen_term(r)).sum::<f64>();
    roots_out.extend(roots);
    Ok(value)
}

/// Recursive measure: splits off `gcd(p, p')` so every root-finding call
/// sees simple roots only. Exact in Z[z]; keeps repeated cyclotomic
/// factors from degrading the computed measure.
fn jensen_value(p: &IntPolynomial, roots_out: &mut Vec<Complex64>) -> Result<f64, MahlerError> {
    let (v, q) = p.strip_valuation();
    for _ in 0..v {
        roots_out.push(Complex64::new(0.0, 0.0));
    }
    let content = q.content().to_f64().unwrap_or(f64::INFINITY);
    let prim = q.primitive_part();
    if prim.degree() == Some(0) {
        return Ok(content.ln());
    }
    let g = prim.gcd(&prim.derivative());
    if g.degree() == Some(0) {
        return Ok(content.ln() + jensen_squarefree(&prim, roots_out)?);
    }
    let h = prim
        .exact_div(&g)
        .expect("gcd(p, p') divides p exactly in Z[z]");
    Ok(content.ln() + jensen_value(&h, roots_out)? + jensen_value(&g, roots_out)?)
}

/// Logarithmic Mahler measure of an integer polynomial by Jensen's
/// formula: `log|lead| + sum log max(|root|, 1)`.
///
/// Constants return `log|c0|`; the zero polynomial is an error.
pub fn mahler_jensen(p: &IntPolynomial) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let value = jensen_value(p, &mut roots)?;
    let est_error = (p.degree().unwrap_or(0) as f64 + 1.0) * ROOT_TOL;
    Ok(MahlerResult {
        value,
        method: MahlerMethod::Jensen,
        est_error,
        detail: MahlerDetail::Roots(roots),
    })
}

/// Values of `p` on the offset grid `t_j = (j+1/2)/n`, via one FFT when
/// the grid is large enough to pay for it.
fn circle_values(p: &ComplexPolynomial, n: usize) -> Vec<Complex64> {
    let deg = p.coeffs().len().saturating_sub(1);
    if n > deg && n >= 64 {
        let mut buf = vec![Complex64::zero(); n];
        for (m, c) in p.coeffs().iter().enumerate() {
            let phase = PI * m as f64 / n as f64;
            buf[m] = c * Complex64::new(phase.cos(), phase.sin());
        }
        FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        buf
    } else {
        (0..n)
            .map(|j| {
                let t = (j as f64 + 0.5) / n as f64;
                p.eval(Complex64::from_polar(1.0, 2.0 * PI * t))
            })
            .collect()
    }
}

fn quadrature_average(p: &ComplexPolynomial, n: usize) -> Result<f64, MahlerError> {
    let values = circle_values(p, n);
    let mut acc = 0.0;
    for (j, v) in values.iter().enumerate() {
        let mut mag = v.norm();
        if mag < 1e-280 {
            // Grid point essentially on a root: nudge it sideways.
            let mut fixed = false;
            for attempt in 1..=4 {
                let t = (j as f64 + 0.5 + 1e-5 * attempt as f64) / n as f64;
                let m = p.eval(Complex64::from_polar(1.0, 2.0 * PI * t)).norm();
                if m >= 1e-280 {
                    mag = m;
                    fixed = true;
                    break;
                }
            }
            if !fixed {
                return Err(MahlerError::Underflow((j as f64 + 0.5) / n as f64));
            }
        }
        acc += mag.ln();
    }
    Ok(acc / n as f64)
}

/// Direct discretization of the defining integral on the offset grid
/// `t_j = (j+1/2)/n_points`; independent of the root-finding route.
/// The error estimate compares the `n` and `2n` grids.
pub fn mahler_quadrature(p: &IntPolynomial, n_points: usize) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if n_points < 16 {
        return Err(MahlerError::InvalidInput(format!(
            "quadrature needs at least 16 points, got {n_points}"
        )));
    }
    let cp = p.to_complex();
    let value = quadrature_average(&cp, n_points)?;
    let refined = quadrature_average(&cp, 2 * n_points)?;
    Ok(MahlerResult {
        value,
        method: MahlerMethod::Quadrature,
        est_error: (value - refined).abs(),
        detail: MahlerDetail::Grid { points: n_points },
    })
}

/// Exact measure of a complex-coefficient polynomial in one variable:
/// `log|lead| + sum log max(|root|, 1)`, with closed forms below degree 3.
pub fn mahler_jensen_complex(p: &ComplexPolynomial) -> Result<f64, MahlerError> {
    let coeffs = p.coeffs();
    match coeffs.len() {
        0 => Err(MahlerError::ZeroPolynomial),
        1 => Ok(coeffs[0].norm().ln()),
        2 => {
            let root = -(coeffs[0] / coeffs[1]);
            Ok(coeffs[1].norm().ln() + jensen_term(root))
        }
        3 => {
            let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
            let disc = (b * b - 4.0 * a * c).sqrt();
            let q = if (b + disc).norm() >= (b - disc).norm() {
                -(b + disc) / 2.0
            } else {
                -(b - disc) / 2.0
            };
            let (r1, r2) = if q.norm_sqr() == 0.0 {
                let r = (-(c / a)).sqrt();
                (r, -r)
            } else {
                (q / a, c / q)
            };
            Ok(a.norm().ln() + jensen_term(r1) + jensen_term(r2))
        }
        _ => {
            let lead = coeffs.last().unwrap().norm();
            let roots = find_roots(p, ROOT_TOL)?;
            Ok(lead.ln() + roots.iter().map(|&r| jensen_term(r)).sum::<f64>())
        }
    }
}

/// A two-variable Laurent polynomial arranged as a polynomial in the
/// inner variable whose coefficients are integer polynomials in the
/// outer one, with the common factor that depends on the outer variable
/// alone split off exactly.
///
/// The split matters for accuracy: a common outer factor makes whole
/// fibers vanish, which puts logarithmic singularities into the iterated
/// integrand; its measure is computed by the exact Jensen route instead.
struct SplitBivariate {
    base_value: f64,
    coeff_polys: Vec<ComplexPolynomial>,
}

impl SplitBivariate {
    fn build(p: &LaurentPoly) -> Result<Self, MahlerError> {
        let mut min_x = i64::MAX;
        let mut max_x = i64::MIN;
        let mut min_y = i64::MAX;
        let mut max_y = i64::MIN;
        for (e, _) in p.terms() {
            min_x = min_x.min(e[0]);
            max_x = max_x.max(e[0]);
            min_y = min_y.min(e[1]);
            max_y = max_y.max(e[1]);
        }
        let width = (max_x - min_x + 1) as usize;
        let mut rows: Vec<Vec<BigInt>> =
            vec![vec![BigInt::zero(); width]; (max_y - min_y + 1) as usize];
        for (e, c) in p.terms() {
            rows[(e[1] - min_y) as usize][(e[0] - min_x) as usize] = BigInt::from(c);
        }
        let mut coeffs: Vec<IntPolynomial> = rows.into_iter().map(IntPolynomial::new).collect();

        let mut common = IntPolynomial::zero();
        for c in &coeffs {
            common = common.gcd(c);
        }
        let int_content = coeffs
            .iter()
            .fold(num_bigint::BigUint::zero(), |acc, c| acc.gcd(&c.content()));
        let mut base_value = int_content.to_f64().unwrap_or(f64::INFINITY).ln();
        if common.degree().unwrap_or(0) >= 1 {
            base_value += mahler_jensen(&common)?.value;
        }
        let content = BigInt::from(int_content);
        for c in coeffs.iter_mut() {
            let reduced = IntPolynomial::new(c.coeffs().iter().map(|v| v / &content).collect());
            *c = reduced
                .exact_div(&common)
                .expect("outer content divides every inner coefficient");
        }
        Ok(Self {
            base_value,
            coeff_polys: coeffs.iter().map(|c| c.to_complex()).collect(),
        })
    }

    fn fiber(&self, x: Complex64) -> ComplexPolynomial {
        let coeffs: Vec<Complex64> = self.coeff_polys.iter().map(|c| c.eval(x)).collect();
        trim_fiber(coeffs)
    }
}

/// Trims numerically dead leading and trailing coefficients so near
/// degenerate fibers keep their exact lower degree.
fn trim_fiber(coeffs: Vec<Complex64>) -> ComplexPolynomial {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut v = coeffs;
    while v.len() > 1 && v.last().unwrap().norm() <= 1e-13 * scale {
        v.pop();
    }
    while v.len() > 1 && v[0].norm() <= 1e-13 * scale {
        v.remove(0);
    }
    ComplexPolynomial::new(v)
}

fn average_2d(split: &SplitBivariate, scale: f64, grid: usize) -> Result<(f64, usize), MahlerError> {
    let mut acc = 0.0f64;
    let mut degenerate = 0usize;
    for j in 0..grid {
        let t = (j as f64 + 0.5) / grid as f64;
        let fiber = split.fiber(Complex64::from_polar(1.0, 2.0 * PI * t));
        if fiber.coeff_sup() <= 1e-14 * scale {
            degenerate += 1;
            continue;
        }
        acc += mahler_jensen_complex(&fiber)?;
    }
    let used = grid - degenerate;
    if used == 0 {
        return Err(MahlerError::DegenerateFibers {
            degenerate,
            total: grid,
        });
    }
    Ok((acc / used as f64, degenerate))
}

/// Inner fiber of a three-variable polynomial: fixes `x, y` and collects
/// the coefficients of `z`.
fn fiber_3d(p: &LaurentPoly, x: Complex64, y: Complex64, min_z: i64, max_z: i64) -> ComplexPolynomial {
    let mut coeffs = vec![Complex64::zero(); (max_z - min_z + 1) as usize];
    for (e, c) in p.terms() {
        let factor = Complex64::new(c as f64, 0.0) * x.powi(e[0] as i32) * y.powi(e[1] as i32);
        coeffs[(e[2] - min_z) as usize] += factor;
    }
    trim_fiber(coeffs)
}

fn average_3d(p: &LaurentPoly, grid: usize) -> Result<(f64, usize, usize), MahlerError> {
    let scale: f64 = p.terms().map(|(_, c)| c.abs() as f64).sum();
    let (min_z, max_z) = p
        .terms()
        .fold((i64::MAX, i64::MIN), |(lo, hi), (e, _)| (lo.min(e[2]), hi.max(e[2])));
    let mut acc = 0.0f64;
    let mut degenerate = 0usize;
    let total = grid * grid;
    for jx in 0..grid {
        let x = Complex64::from_polar(1.0, 2.0 * PI * (jx as f64 + 0.5) / grid as f64);
        for jy in 0..grid {
            let y = Complex64::from_polar(1.0, 2.0 * PI * (jy as f64 + 0.5) / grid as f64);
            let fiber = fiber_3d(p, x, y, min_z, max_z);
            if fiber.coeff_sup() <= 1e-14 * scale {
                degenerate += 1;
                continue;
            }
            acc += mahler_jensen_complex(&fiber)?;
        }
    }
    let used = total - degenerate;
    if used == 0 {
        return Err(MahlerError::DegenerateFibers { degenerate, total });
    }
    Ok((acc / used as f64, degenerate, total))
}

/// Iterated multivariate Mahler measure for two or three variables.
///
/// The outer variables run over offset uniform grids of `outer_grid`
/// points per axis (so three variables use `outer_grid^2` fibers); at
/// each outer point the innermost variable is integrated exactly via the
/// complex Jensen route. In two variables a common factor depending only
/// on the outer variable is split off first and measured exactly. Fibers
/// that vanish identically are skipped and counted; more than 1% of them
/// is an error. The error estimate compares full and half grids.
pub fn mahler_multivariate(p: &LaurentPoly, outer_grid: usize) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if outer_grid < 4 {
        return Err(MahlerError::InvalidInput(
            "outer grid must have at least 4 points per axis".into(),
        ));
    }
    let (value, coarse, degenerate, total) = match p.dim() {
        2 => {
            let split = SplitBivariate::build(p)?;
            let scale: f64 = p.terms().map(|(_, c)| c.abs() as f64).sum();
            let (fine, degenerate) = average_2d(&split, scale, outer_grid)?;
            let (coarse, _) = average_2d(&split, scale, outer_grid / 2)?;
            (
                split.base_value + fine,
                split.base_value + coarse,
                degenerate,
                outer_grid,
            )
        }
        3 => {
            let (fine, degenerate, total) = average_3d(p, outer_grid)?;
            let (coarse, _, _) = average_3d(p, outer_grid / 2)?;
            (fine, coarse, degenerate, total)
        }
        d => {
            return Err(MahlerError::InvalidInput(format!(
                "iterated measure needs 2 or 3 variables, got {d}"
            )))
        }
    };
    if degenerate * 100 > total {
        return Err(MahlerError::DegenerateFibers { degenerate, total });
    }
    Ok(MahlerResult {
        value,
        method: MahlerMethod::Iterated,
        est_error: (value - coarse).abs(),
        detail: MahlerDetail::Grid { points: outer_grid },
    })
}
