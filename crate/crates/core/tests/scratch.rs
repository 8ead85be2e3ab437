use mahler_subst::*;
use std::time::Instant;

#[test]
#[ignore]
fn probe_heavy_case() {
    let s: BinarySubstitution = "100110,101001".parse().unwrap();
    let f = s.fourier_matrix();
    let qr = s.qr_polynomial();
    println!("qr = {qr}, m = {}", mahler_jensen(&qr).unwrap().value);
    for (n_iter, n_samples) in [(10_000, 20), (10_000, 60), (10_000, 180), (40_000, 45)] {
        let p = CocycleParams {
            n_iter,
            n_samples,
            seed: 43,
            ..CocycleParams::default()
        };
        let t0 = Instant::now();
        let (mx, mn) = extremal_exponents(&f, &p).unwrap();
        println!(
            "({n_iter},{n_samples}): max {:+.5} +- {:.5}, min {:+.5} +- {:.5}  [{:?}]",
            mx.mean, mx.stderr, mn.mean, mn.stderr, t0.elapsed()
        );
        let sample_sd = mx.stderr * (n_samples as f64).sqrt();
        println!("   per-sample sd {:.4} -> sigma_f ~ {:.2}", sample_sd, sample_sd * (n_iter as f64).sqrt());
    }
}
