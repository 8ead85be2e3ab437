//! Lyapunov exponents of Fourier-matrix cocycles.
//!
//! The cocycle over the expanding torus map `k -> L k mod 1` (componentwise
//! in 2D) is the ordered product `B(k) B(Lk) ... B(L^{n-1} k)`. Its two
//! exponents are estimated by Birkhoff sampling: the maximal one from the
//! growth of a generic row vector, the sum of both from the average of
//! `log|det B|` along orbits, and the minimal one from their difference.
//!
//! Orbits are generated backwards through the contracting inverse branches
//! (one uniform base-`L` digit per step), which yields an exact orbit of a
//! uniformly distributed starting point. Iterating `k -> frac(L k)` in
//! floating point instead would collapse onto the fixed point 0 after at
//! most 52 steps whenever `L` is even, which silently biases every deep
//! Birkhoff average.

use crate::fourier::{col_mul, mat_det, mat_mul, mat_sup_norm, row_mul, EvalScratch, FourierMatrix, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default sampling seed used by the CLI and the estimator defaults.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("orbit determinant stayed below the singular floor after {attempts} resamples of sample {sample}")]
    PersistentSingular { sample: usize, attempts: usize },
}

/// Sampling parameters for the Lyapunov estimators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CocycleParams {
    /// Birkhoff depth per sample (at least 100).
    pub n_iter: usize,
    /// Number of independent starting points (at least 1).
    pub n_samples: usize,
    /// Base seed; sample `i` uses stream `i` of a ChaCha generator.
    pub seed: u64,
    /// Orbit points with `|det B|` below this are treated as singular.
    pub singular_floor: f64,
}

impl Default for CocycleParams {
    fn default() -> Self {
        Self {
            n_iter: 10_000,
            n_samples: 100,
            seed: DEFAULT_SEED,
            singular_floor: 1e-12,
        }
    }
}

impl CocycleParams {
    /// Same parameters with a different sampling budget.
    pub fn with_budget(n_iter: usize, n_samples: usize) -> Self {
        Self {
            n_iter,
            n_samples,
            ..Self::default()
        }
    }

    fn validate(&self) {
        assert!(self.n_iter >= 100, "n_iter must be at least 100");
        assert!(self.n_samples >= 1, "n_samples must be at least 1");
        assert!(self.singular_floor > 0.0, "singular floor must be positive");
    }
}

/// A sampled Lyapunov exponent: mean over samples, standard error
/// (sample standard deviation over the square root of the sample count),
/// the per-sample values, and the parameters that produced them.
#[derive(Clone, Debug)]
pub struct LyapunovEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub per_sample: Vec<f64>,
    pub params: CocycleParams,
}

impl LyapunovEstimate {
    fn from_samples(per_sample: Vec<f64>, params: CocycleParams) -> Self {
        let n = per_sample.len();
        let mean = per_sample.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = per_sample.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (n as f64 - 1.0);
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            stderr,
            per_sample,
            params,
        }
    }
}

/// One orbit of the expanding map per sample, stored forward in time.
struct Orbit {
    points: Vec<[f64; 2]>,
    dim: usize,
}

impl Orbit {
    fn new() -> Self {
        Self {
            points: Vec::new(),
            dim: 1,
        }
    }

    /// Fills `n` orbit points of `k -> (L_a k_a mod 1)_a` for a uniform
    /// random start, built backwards so the recursion only ever divides.
    fn fill(&mut self, rng: &mut ChaCha8Rng, expansion: &[u32], n: usize) {
        self.dim = expansion.len();
        self.points.clear();
        self.points.resize(n, [0.0; 2]);
        for (axis, &base) in expansion.iter().enumerate() {
            let b = base as f64;
            let mut t: f64 = rng.gen();
            for idx in (0..n).rev() {
                let digit = rng.gen_range(0..base) as f64;
                t = (t + digit) / b;
                self.points[idx][axis] = t;
            }
        }
    }

    fn point(&self, idx: usize) -> &[f64] {
        &self.points[idx][..self.dim]
    }
}

fn sample_rng(seed: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample as u64);
    rng
}

/// Draws a real unit row vector bounded away from the span of `(1, 1)`,
/// the direction of the zero exponent.
fn generic_start_vector(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    loop {
        let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let v = [theta.cos(), theta.sin()];
        // distance from span(1,1) is |v0 - v1| / sqrt(2)
        if (v[0] - v[1]).abs() / std::f64::consts::SQRT_2 >= 1e-3 {
            return [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0)];
        }
    }
}

/// Ordered cocycle product `B(k) B(Lk) ... B(L^{n-1} k)` with per-step
/// sup-norm renormalization. The true product is `matrix * e^{log_scale}`.
///
/// This follows the literal floating-point orbit of `k`, which is exact
/// for the short products the algebraic identities need; the statistical
/// estimators below use the digit-generated orbits instead.
pub fn cocycle_product(f: &FourierMatrix, k: &[f64], n: usize) -> (Matrix2, f64) {
    assert!(n >= 1, "cocycle product needs at least one factor");
    assert_eq!(k.len(), f.dim(), "point dimension must match the matrix");
    let mut scratch = EvalScratch::new();
    let mut point = [0.0f64; 2];
    point[..k.len()].copy_from_slice(k);
    let mut mat = scratch.evaluate(f, &point[..k.len()]);
    let mut log_scale = 0.0f64;
    let s = mat_sup_norm(&mat);
    if s > 0.0 {
        for e in mat.iter_mut().flatten() {
            *e /= s;
        }
        log_scale += s.ln();
    }
    for _ in 1..n {
        for (axis, &base) in f.expansion().iter().enumerate() {
            point[axis] = (point[axis] * base as f64).fract();
        }
        let next = scratch.evaluate(f, &point[..k.len()]);
        mat = mat_mul(&mat, &next);
        let s = mat_sup_norm(&mat);
        if s > 0.0 {
            for e in mat.iter_mut().flatten() {
                *e /= s;
            }
            log_scale += s.ln();
        }
    }
    (mat, log_scale)
}

/// Maximal Lyapunov exponent: average log-growth of a generic random row
/// vector driven through the cocycle, per sample, with per-step
/// renormalization.
///
/// The iteration runs in the coordinates `v = a (1,1) + b (1,-1)`. The
/// constant-length structure makes both column sums of `B(k)` equal, so
/// the row `(1,1)` is invariant and the transverse coordinate evolves by
/// pure scalar factors:
///
/// ```text
/// a' = a * pl(z) + b * cross(z),    b' = b * qr(z),
/// ```
///
/// with no coupling from `a` back into `b`. Multiplying by the raw matrix
/// instead would re-seed `b` with rounding noise of relative size 1e-16
/// each step, which inflates the measured exponent whenever the true
/// transverse growth passes through deep cancellation valleys (signed
/// column polynomials with repeated zeros at periodic orbit points).
pub fn lyapunov_max(f: &FourierMatrix, params: &CocycleParams) -> LyapunovEstimate {
    params.validate();
    let mut scratch = EvalScratch::new();
    let mut orbit = Orbit::new();
    let mut per_sample = Vec::with_capacity(params.n_samples);
    for s in 0..params.n_samples {
        let mut rng = sample_rng(params.seed, s);
        orbit.fill(&mut rng, f.expansion(), params.n_iter);
        let v = generic_start_vector(&mut rng);
        let mut along = (v[0] + v[1]) * 0.5;
        let mut transverse = (v[0] - v[1]) * 0.5;
        let mut acc = 0.0f64;
        for idx in 0..params.n_iter {
            let b = scratch.evaluate(f, orbit.point(idx));
            let pl = b[0][0] + b[1][0];
            let cross = (b[0][0] - b[1][0] + b[0][1] - b[1][1]) * 0.5;
            let qr = (b[0][0] - b[1][0] - b[0][1] + b[1][1]) * 0.5;
            along = along * pl + transverse * cross;
            transverse *= qr;
            let norm = (along.norm_sqr() + transverse.norm_sqr()).sqrt();
            if norm < 1e-300 {
                // Degenerate draw: the vector fell into a kernel. Restart
                // the direction and keep going; the event has measure zero.
                let v = generic_start_vector(&mut rng);
                along = (v[0] + v[1]) * 0.5;
                transverse = (v[0] - v[1]) * 0.5;
                continue;
            }
            acc += norm.ln();
            along /= norm;
            transverse /= norm;
        }
        per_sample.push(acc / params.n_iter as f64);
    }
    LyapunovEstimate::from_samples(per_sample, *params)
}

/// Birkhoff average of `log|det B|` along orbits: estimates the sum of
/// the two exponents. Orbits that hit the singular floor are resampled
/// whole; persistently singular families are an error.
pub fn birkhoff_logdet(
    f: &FourierMatrix,
    params: &CocycleParams,
) -> Result<LyapunovEstimate, CocycleError> {
    params.validate();
    let mut scratch = EvalScratch::new();
    let mut orbit = Orbit::new();
    let mut per_sample = Vec::with_capacity(params.n_samples);
    const MAX_ATTEMPTS: usize = 32;
    for s in 0..params.n_samples {
        let mut rng = sample_rng(params.seed, s);
        let mut value = None;
        for _ in 0..MAX_ATTEMPTS {
            orbit.fill(&mut rng, f.expansion(), params.n_iter);
            let mut acc = 0.0f64;
            let mut ok = true;
            for idx in 0..params.n_iter {
                let b = scratch.evaluate(f, orbit.point(idx));
                let d = mat_det(&b).norm();
                if d < params.singular_floor {
                    ok = false;
                    break;
                }
                acc += d.ln();
            }
            if ok {
                value = Some(acc / params.n_iter as f64);
                break;
            }
        }
        match value {
            Some(v) => per_sample.push(v),
            None => {
                return Err(CocycleError::PersistentSingular {
                    sample: s,
                    attempts: MAX_ATTEMPTS,
                })
            }
        }
    }
    Ok(LyapunovEstimate::from_samples(per_sample, *params))
}

/// Growth rate of a fixed direction that is invariant under every `B(k)`,
/// such as the row `(1, 1)` or the column `(1, -1)` of a substitution
/// cocycle. The direction is held fixed and only the per-step scalar
/// growth is accumulated, so the transverse exponent cannot leak in.
pub fn invariant_direction_exponent(
    f: &FourierMatrix,
    params: &CocycleParams,
    direction: [Complex64; 2],
    as_row: bool,
) -> LyapunovEstimate {
    params.validate();
    let dir_norm = (direction[0].norm_sqr() + direction[1].norm_sqr()).sqrt();
    let mut scratch = EvalScratch::new();
    let mut orbit = Orbit::new();
    let mut per_sample = Vec::with_capacity(params.n_samples);
    for s in 0..params.n_samples {
        let mut rng = sample_rng(params.seed, s);
        orbit.fill(&mut rng, f.expansion(), params.n_iter);
        let mut acc = 0.0f64;
        for idx in 0..params.n_iter {
            let b = scratch.evaluate(f, orbit.point(idx));
            let w = if as_row {
                row_mul(&direction, &b)
            } else {
                col_mul(&b, &direction)
            };
            let norm = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            acc += (norm / dir_norm).max(1e-300).ln();
        }
        per_sample.push(acc / params.n_iter as f64);
    }
    LyapunovEstimate::from_samples(per_sample, *params)
}

/// Probes whether the determinant vanishes identically (up to roundoff),
/// which happens exactly when the substitution has equal words.
fn det_identically_zero(f: &FourierMatrix) -> bool {
    let mut scratch = EvalScratch::new();
    let golden = 0.618_033_988_749_894_9_f64;
    let mut worst = 0.0f64;
    for j in 1..=64u32 {
        let t = (j as f64 * golden).fract();
        let point = [t, (j as f64 * golden * golden).fract()];
        let b = scratch.evaluate(f, &point[..f.dim()]);
        worst = worst.max(mat_det(&b).norm());
    }
    worst < 1e-9
}

/// Both extremal exponents from one pass: the maximal one by vector
/// iteration and the minimal one through the sum rule
/// `chi_min = <log|det|> - chi_max`. Rank-one cocycles (equal image
/// words) have an identically zero determinant, where the sum rule does
/// not apply; there the invariant row `(1, 1)` carries the only exponent
/// and both extremes equal its growth rate.
pub fn extremal_exponents(
    f: &FourierMatrix,
    params: &CocycleParams,
) -> Result<(LyapunovEstimate, LyapunovEstimate), CocycleError> {
    params.validate();
    let max_est = lyapunov_max(f, params);
    if det_identically_zero(f) {
        let one = Complex64::new(1.0, 0.0);
        let min_est = invariant_direction_exponent(f, params, [one, one], true);
        return Ok((max_est, min_est));
    }
    let logdet = birkhoff_logdet(f, params)?;
    let per_sample: Vec<f64> = logdet
        .per_sample
        .iter()
        .zip(&max_est.per_sample)
        .map(|(d, m)| d - m)
        .collect();
    let min_est = LyapunovEstimate::from_samples(per_sample, *params);
    Ok((max_est, min_est))
}

/// Minimal Lyapunov exponent via the sum rule (see
/// [`extremal_exponents`] for the rank-one special case).
pub fn lyapunov_min(
    f: &FourierMatrix,
    params: &CocycleParams,
) -> Result<LyapunovEstimate, CocycleError> {
    Ok(extremal_exponents(f, params)?.1)
}

/// Cross-check route: both exponents from a QR (Gram–Schmidt) iteration
/// of an orthonormal row frame. Returns `(max, min)` estimates. Only
/// meaningful when the cocycle is invertible almost everywhere.
pub fn extremal_exponents_qr(
    f: &FourierMatrix,
    params: &CocycleParams,
) -> (LyapunovEstimate, LyapunovEstimate) {
    params.validate();
    let mut scratch = EvalScratch::new();
    let mut orbit = Orbit::new();
    let mut top = Vec::with_capacity(params.n_samples);
    let mut bottom = Vec::with_capacity(params.n_samples);
    for s in 0..params.n_samples {
        let mut rng = sample_rng(params.seed, s);
        orbit.fill(&mut rng, f.expansion(), params.n_iter);
        let mut q1 = generic_start_vector(&mut rng);
        let mut q2 = [-q1[1].conj(), q1[0].conj()];
        let mut acc1 = 0.0f64;
        let mut acc2 = 0.0f64;
        for idx in 0..params.n_iter {
            let b = scratch.evaluate(f, orbit.point(idx));
            let w1 = row_mul(&q1, &b);
            let w2 = row_mul(&q2, &b);
            let r11 = (w1[0].norm_sqr() + w1[1].norm_sqr()).sqrt();
            q1 = [w1[0] / r11, w1[1] / r11];
            let proj = w2[0] * q1[0].conj() + w2[1] * q1[1].conj();
            let o = [w2[0] - proj * q1[0], w2[1] - proj * q1[1]];
            let r22 = (o[0].norm_sqr() + o[1].norm_sqr()).sqrt();
            acc1 += r11.max(1e-300).ln();
            acc2 += r22.max(1e-300).ln();
            if r22 > 1e-300 {
                q2 = [o[0] / r22, o[1] / r22];
            }
        }
        top.push(acc1 / params.n_iter as f64);
        bottom.push(acc2 / params.n_iter as f64);
    }
    (
        LyapunovEstimate::from_samples(top, *params),
        LyapunovEstimate::from_samples(bottom, *params),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subst::{period_doubling, thue_morse, BinarySubstitution};

    fn quick() -> CocycleParams {
        CocycleParams::with_budget(4000, 12)
    }

    #[test]
    fn cocycle_product_matches_matrix_power_at_zero() {
        let f = thue_morse().fourier_matrix();
        let (mat, log_scale) = cocycle_product(&f, &[0.0], 3);
        let scale = log_scale.exp();
        for row in mat {
            for e in row {
                assert!((e * scale - Complex64::new(4.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cocycle_law_holds() {
        let f = BinarySubstitution::new("11010", "00101")
            .unwrap()
            .fourier_matrix();
        let k = [0.2137];
        let base = f.expansion()[0] as f64;
        let (mn, ls) = cocycle_product(&f, &k, 7);
        let (a, lsa) = cocycle_product(&f, &k, 3);
        let mut shifted = k[0];
        for _ in 0..3 {
            shifted = (shifted * base).fract();
        }
        let (b, lsb) = cocycle_product(&f, &[shifted], 4);
        let prod = mat_mul(&a, &b);
        let scale = (lsa + lsb - ls).exp();
        let mut err = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                err = err.max((mn[r][c] - prod[r][c] * scale).norm());
            }
        }
        assert!(err < 1e-10, "cocycle law violated by {err}");
    }

    #[test]
    fn thue_morse_exponents_vanish() {
        let f = thue_morse().fourier_matrix();
        let est = lyapunov_max(&f, &quick());
        assert!(est.mean.abs() < 0.03, "got {}", est.mean);
        let (_, min_est) = extremal_exponents(&f, &quick()).unwrap();
        assert!(min_est.mean.abs() < 0.03, "got {}", min_est.mean);
    }

    #[test]
    fn littlewood_example_exponents() {
        let f = BinarySubstitution::new("11010", "00101")
            .unwrap()
            .fourier_matrix();
        let (max_est, min_est) = extremal_exponents(&f, &quick()).unwrap();
        assert!((max_est.mean - 0.656256).abs() < 0.02, "got {}", max_est.mean);
        assert!(min_est.mean.abs() < 0.03, "got {}", min_est.mean);
        let ld = birkhoff_logdet(&f, &quick()).unwrap();
        assert!((ld.mean - 0.656256).abs() < 0.02, "got {}", ld.mean);
    }

    #[test]
    fn period_doubling_exponents_vanish() {
        let f = period_doubling().fourier_matrix();
        let (max_est, min_est) = extremal_exponents(&f, &quick()).unwrap();
        assert!(max_est.mean.abs() < 0.02, "got {}", max_est.mean);
        assert!(min_est.mean.abs() < 0.03, "got {}", min_est.mean);
    }

    #[test]
    fn equal_words_route_is_finite() {
        let f = BinarySubstitution::new("01", "01").unwrap().fourier_matrix();
        assert!(birkhoff_logdet(&f, &quick()).is_err());
        let (max_est, min_est) = extremal_exponents(&f, &quick()).unwrap();
        assert!(max_est.mean.abs() < 0.02);
        assert!(min_est.mean.abs() < 0.02);
    }

    #[test]
    fn determinism_is_bitwise() {
        let f = BinarySubstitution::new("11010", "00101")
            .unwrap()
            .fourier_matrix();
        let p = CocycleParams::with_budget(500, 5);
        let a = lyapunov_max(&f, &p);
        let b = lyapunov_max(&f, &p);
        assert_eq!(a.per_sample, b.per_sample);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    }

    #[test]
    fn qr_route_agrees() {
        let f = BinarySubstitution::new("11010", "00101")
            .unwrap()
            .fourier_matrix();
        let (max_est, min_est) = extremal_exponents_qr(&f, &quick());
        assert!((max_est.mean - 0.656256).abs() < 0.02);
        assert!(min_est.mean.abs() < 0.03);
    }

    #[test]
    #[should_panic(expected = "n_iter")]
    fn params_are_validated() {
        let f = thue_morse().fourier_matrix();
        let p = CocycleParams {
            n_iter: 10,
            ..CocycleParams::default()
        };
        lyapunov_max(&f, &p);
    }
}
