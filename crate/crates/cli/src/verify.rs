//! Built-in verification table: recomputes every reference value the
//! library promises and reports one pass/fail row per criterion.

use mahler_subst::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const TAU: f64 = 1.618033988749895;
const ZETA3: f64 = 1.202056903159594;
const LEHMER_MEASURE: f64 = 0.1623576;
const LITTLEWOOD_MEASURE: f64 = 0.656256;
const SQUIRAL_MEASURE: f64 = 0.723909;
const TRIANGULAR_MEASURE: f64 = 0.323066;

pub struct Row {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn lehmer() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

fn push(rows: &mut Vec<Row>, name: &'static str, pass: bool, detail: String) {
    let index = rows.len() + 1;
    eprintln!(
        "{} {:2}. {:<48} {}",
        if pass { "ok  " } else { "FAIL" },
        index,
        name,
        detail
    );
    rows.push(Row {
        index,
        name,
        pass,
        detail,
    });
}

pub fn run_table(seed: u64) -> Vec<Row> {
    let mut rows = Vec::new();

    // 1: Lehmer's measure
    {
        let t = Instant::now();
        let m = mahler_jensen(&lehmer()).unwrap();
        let err = (m.value - LEHMER_MEASURE).abs();
        let elapsed = t.elapsed();
        push(
            &mut rows,
            "Lehmer measure log(1.176281)",
            err < 1e-6 && elapsed.as_secs_f64() < 0.1,
            format!("value {:.9}, err {err:.1e}, {elapsed:?}", m.value),
        );
    }

    // 2: golden ratio and unit columns
    {
        let golden = mahler_jensen(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        let ge = (golden.value - TAU.ln()).abs();
        let mut worst = 0.0f64;
        for l in 2..=20 {
            let m = mahler_jensen(&IntPolynomial::from_i64(&vec![1i64; l])).unwrap();
            worst = worst.max(m.value.abs());
        }
        push(
            &mut rows,
            "golden-ratio measure and cyclotomic columns",
            ge < 1e-9 && worst < 1e-9,
            format!("log-tau err {ge:.1e}, worst column {worst:.1e}"),
        );
    }

    // 3: Littlewood example, both routes
    {
        let s: BinarySubstitution = "11010,00101".parse().unwrap();
        let t = Instant::now();
        let est = lyapunov_max(
            &s.fourier_matrix(),
            &CocycleParams {
                seed,
                ..CocycleParams::default()
            },
        );
        let elapsed = t.elapsed();
        let ce = (est.mean - LITTLEWOOD_MEASURE).abs();
        let m = mahler_jensen(&IntPolynomial::from_i64(&[-1, -1, 1, -1, 1])).unwrap();
        let je = (m.value - LITTLEWOOD_MEASURE).abs();
        push(
            &mut rows,
            "Littlewood example: cocycle vs Jensen",
            ce < 0.01 && je < 1e-6 && elapsed.as_secs_f64() < 5.0,
            format!("cocycle err {ce:.1e} ({elapsed:?}), jensen err {je:.1e}"),
        );
    }

    // 4: Newman reciprocal degree 14
    {
        let q = IntPolynomial::from_i64(&[1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1]);
        let m = mahler_jensen(&q).unwrap();
        let err = (m.value - 1.265122f64.ln()).abs();
        let below = m.value < 1.324718f64.ln();
        push(
            &mut rows,
            "Newman degree-14 measure log(1.265122)",
            err < 1e-6 && below,
            format!("value {:.9}, err {err:.1e}, below plastic bound: {below}", m.value),
        );
    }

    // 5: exhaustive equality sweep, lengths 2..=6
    {
        let t = Instant::now();
        let base = CocycleParams::with_budget(10_000, 20);
        let mut worst_gap = 0.0f64;
        let mut worst_min = 0.0f64;
        let mut count = 0usize;
        for len in 2..=6usize {
            for a in 0..(1u32 << len) {
                for b in 0..(1u32 << len) {
                    let w0: Vec<u8> = (0..len).map(|i| ((a >> i) & 1) as u8).collect();
                    let w1: Vec<u8> = (0..len).map(|i| ((b >> i) & 1) as u8).collect();
                    let s = BinarySubstitution::from_bits(w0, w1).unwrap();
                    if !s.is_primitive() {
                        continue;
                    }
                    count += 1;
                    let qr = s.qr_polynomial();
                    let expected = if qr.is_zero() {
                        0.0
                    } else {
                        mahler_jensen(&qr).unwrap().value
                    };
                    let p = CocycleParams {
                        seed: seed + count as u64,
                        ..base
                    };
                    let (mx, mn) = extremal_exponents(&s.fourier_matrix(), &p).unwrap();
                    worst_gap = worst_gap.max((mx.mean - expected).abs());
                    worst_min = worst_min.max(mn.mean.abs());
                }
            }
        }
        let elapsed = t.elapsed();
        push(
            &mut rows,
            "exhaustive exponent equality (length <= 6)",
            worst_gap < 0.02 && worst_min < 0.02 && elapsed.as_secs_f64() < 600.0,
            format!(
                "{count} substitutions, worst gap {worst_gap:.4}, worst |min| {worst_min:.4}, {elapsed:?}"
            ),
        );
    }

    // 6: periodic hulls
    {
        let t = Instant::now();
        let base = CocycleParams::with_budget(15_000, 25);
        let mut worst = 0.0f64;
        let mut relation = true;
        let mut count = 0usize;
        let mut run_case = |s: &BinarySubstitution, count: &mut usize| {
            *count += 1;
            let p = CocycleParams {
                seed: seed + *count as u64,
                ..base
            };
            let (mx, mn) = extremal_exponents(&s.fourier_matrix(), &p).unwrap();
            let qr = s.qr_polynomial();
            let flipped = s.qr_sum_polynomial().alternated();
            relation &= qr == flipped || qr == flipped.negated();
            mx.mean.abs().max(mn.mean.abs())
        };
        for len in 2..=9usize {
            for w in 0..(1u32 << len) {
                let word: Vec<u8> = (0..len).map(|i| ((w >> i) & 1) as u8).collect();
                if word.iter().any(|&c| c == 0) && word.iter().any(|&c| c == 1) {
                    let s = BinarySubstitution::from_bits(word.clone(), word).unwrap();
                    worst = worst.max(run_case(&s, &mut count));
                }
            }
        }
        for len in [3usize, 5, 7, 9] {
            for first in [0u8, 1] {
                let w0: Vec<u8> = (0..len).map(|i| first ^ (i as u8 & 1)).collect();
                let w1: Vec<u8> = w0.iter().map(|&c| 1 - c).collect();
                let s = BinarySubstitution::from_bits(w0, w1).unwrap();
                worst = worst.max(run_case(&s, &mut count));
            }
        }
        let elapsed = t.elapsed();
        push(
            &mut rows,
            "periodic hulls have zero exponents (length <= 9)",
            worst < 0.02 && relation,
            format!("{count} substitutions, worst |exponent| {worst:.4}, alternation identity: {relation}, {elapsed:?}"),
        );
    }

    // 7: determinant factorization
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let len = rng.gen_range(2..=12usize);
            let w0: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2u8)).collect();
            let w1: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2u8)).collect();
            let s = BinarySubstitution::from_bits(w0, w1).unwrap();
            let f = s.fourier_matrix();
            let qr = s.qr_polynomial().to_complex();
            let column = IntPolynomial::from_i64(&vec![1i64; len]).to_complex();
            for _ in 0..100 {
                let k: f64 = rng.gen();
                let b = f.evaluate(&[k]);
                let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
                let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k);
                worst = worst.max((det - column.eval(z) * qr.eval(z)).norm());
            }
        }
        push(
            &mut rows,
            "determinant factorization det B = column * (Q-R)",
            worst < 1e-10,
            format!("500 x 100 points, worst gap {worst:.1e}"),
        );
    }

    // 8: search reaches Lehmer's polynomial
    {
        let t = Instant::now();
        let records = borwein_search(10, 1e-6).unwrap();
        let elapsed = t.elapsed();
        let mut orbit = Vec::new();
        for rev in [false, true] {
            for neg in [false, true] {
                for alt in [false, true] {
                    let mut p = lehmer();
                    if rev {
                        p = reciprocal_of(&p).unwrap();
                    }
                    if alt {
                        p = p.alternated();
                    }
                    if neg {
                        p = p.negated();
                    }
                    orbit.push(p);
                }
            }
        }
        let reference = mahler_jensen(&lehmer()).unwrap().value;
        let hit = records.iter().find(|r| orbit.contains(&r.poly));
        let ok = match hit {
            Some(r) => {
                (r.measure - reference).abs() < 1e-9 && (r.measure - LEHMER_MEASURE).abs() < 1e-6
            }
            None => false,
        };
        push(
            &mut rows,
            "degree-10 search returns Lehmer's polynomial",
            ok && elapsed.as_secs_f64() < 60.0,
            format!("{} records in {elapsed:?}, found: {}", records.len(), hit.is_some()),
        );
    }

    // 9: two-dimensional suite
    {
        let squiral = BlockSubstitution2D::squiral();
        let sq_c = lyapunov_max(
            &squiral.fourier_matrix_2d(),
            &CocycleParams {
                seed,
                ..CocycleParams::with_budget(10_000, 64)
            },
        );
        let sq_ce = (sq_c.mean - SQUIRAL_MEASURE).abs();
        let sq_m = mahler_multivariate(&squiral.qr_polynomial_2d(), 4096).unwrap();
        let sq_me = (sq_m.value - SQUIRAL_MEASURE).abs();
        let wn = lyapunov_max(
            &BlockSubstitution2D::wannier().fourier_matrix_2d(),
            &CocycleParams {
                seed,
                ..CocycleParams::with_budget(10_000, 64)
            },
        );
        let wn_e = (wn.mean - TRIANGULAR_MEASURE).abs();
        let three: LaurentPoly = "1+x+y+z".parse().unwrap();
        let m3 = mahler_multivariate(&three, 256).unwrap();
        let m3_ref = 7.0 * ZETA3 / (2.0 * std::f64::consts::PI * std::f64::consts::PI);
        let m3_e = (m3.value - m3_ref).abs();
        let wid: LaurentPoly = "1+y^2-x*y".parse().unwrap();
        let tri: LaurentPoly = "1+x+y".parse().unwrap();
        let gap = (mahler_multivariate(&wid, 4096).unwrap().value
            - mahler_multivariate(&tri, 4096).unwrap().value)
            .abs();
        push(
            &mut rows,
            "2D blocks and multivariate measures",
            sq_ce < 0.01 && sq_me < 5e-3 && wn_e < 0.01 && m3_e < 5e-3 && gap < 2e-3,
            format!(
                "squiral {sq_ce:.1e}/{sq_me:.1e}, coincidence block {wn_e:.1e}, zeta(3) {m3_e:.1e}, identity {gap:.1e}"
            ),
        );
    }

    // 10: randomized property suites
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
        let draw = |max_degree: usize, borwein: bool, rng: &mut ChaCha8Rng| loop {
            let deg = rng.gen_range(1..=max_degree);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-1..=1i64)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = if rng.gen() { 1 } else { -1 };
            }
            if borwein && coeffs[0] == 0 {
                coeffs[0] = if rng.gen() { 1 } else { -1 };
            }
            let p = IntPolynomial::from_i64(&coeffs);
            if !p.is_zero() {
                return p;
            }
        };
        let mut worst_mult = 0.0f64;
        for _ in 0..1000 {
            let p = draw(12, false, &mut rng);
            let q = draw(12, false, &mut rng);
            let lhs = mahler_jensen(&poly_mul(&p, &q)).unwrap().value;
            let rhs = mahler_jensen(&p).unwrap().value + mahler_jensen(&q).unwrap().value;
            worst_mult = worst_mult.max((lhs - rhs).abs());
        }
        let mut worst_sym = 0.0f64;
        for _ in 0..1000 {
            let p = draw(12, false, &mut rng);
            let m = mahler_jensen(&p).unwrap().value;
            let neg = mahler_jensen(&p.negated()).unwrap().value;
            let rec = mahler_jensen(&reciprocal_of(&p).unwrap()).unwrap().value;
            worst_sym = worst_sym.max((m - neg).abs()).max((m - rec).abs());
        }
        let mut worst_oracle = 0.0f64;
        for _ in 0..1000 {
            let p = draw(20, true, &mut rng);
            let jensen = mahler_jensen(&p).unwrap().value;
            let quad = mahler_quadrature(&p, 1 << 16).unwrap().value;
            worst_oracle = worst_oracle.max((jensen - quad).abs());
        }
        let mut roundtrip = true;
        for _ in 0..1000 {
            let p = draw(12, true, &mut rng);
            let zeros = p.coeffs().iter().filter(|c| c == &&0.into()).count();
            let choices: Vec<Coincidence> = (0..zeros)
                .map(|_| {
                    if rng.gen() {
                        Coincidence::Zeros
                    } else {
                        Coincidence::Ones
                    }
                })
                .collect();
            let s = substitution_from_signs(&p, &ZeroChoice(choices)).unwrap();
            roundtrip &= s.qr_polynomial() == p;
        }
        push(
            &mut rows,
            "randomized property suites (1000 cases each)",
            worst_mult < 1e-9 && worst_sym < 1e-9 && worst_oracle < 1e-2 && roundtrip,
            format!(
                "multiplicativity {worst_mult:.1e}, symmetry {worst_sym:.1e}, oracle {worst_oracle:.1e}, round-trip {roundtrip}"
            ),
        );
    }

    rows
}
