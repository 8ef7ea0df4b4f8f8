use ballspec::hankel::{boundary_residual, hankel_closed_form, hankel_recurrence};
use ballspec::{MpFloat, Real};
use num_complex::Complex;

/// Second-kind spherical Hankel function written out from its own series,
/// `h2_n(z) = i^{n+1} e^{-iz}/z sum_m (n+m)!/(m!(n-m)!) (-i/(2z))^m`.
fn h2(n: usize, z: Complex<f64>) -> Complex<f64> {
    let u = Complex::new(0.0, -1.0) / (2.0 * z);
    let mut a = 1.0f64;
    let mut sum = Complex::new(0.0, 0.0);
    let mut pow = Complex::new(1.0, 0.0);
    for m in 0..=n {
        sum += pow * a;
        pow *= u;
        a = a * ((n + m + 1) * (n - m)) as f64 / (m + 1) as f64;
    }
    Complex::new(0.0, 1.0).powu(n as u32 + 1) * (Complex::new(0.0, -1.0) * z).exp() / z * sum
}

fn grid_points() -> Vec<Complex<f64>> {
    (0..100)
        .map(|k| {
            let r = 0.2 * 100f64.powf((k % 10) as f64 / 9.0);
            let theta = std::f64::consts::PI * (k / 10) as f64 / 9.0;
            Complex::from_polar(r, theta)
        })
        .collect()
}

#[test]
fn recurrence_agrees_with_closed_form_on_upper_half_plane_grid() {
    for z in grid_points() {
        for n in 0..=30 {
            let rec = hankel_recurrence(n, &z).unwrap();
            let cf = hankel_closed_form(n, &z).unwrap();
            let rel = (rec.h - cf).norm() / cf.norm();
            assert!(rel <= 1e-10, "n={n} z={z} rel={rel:e}");
        }
    }
}

#[test]
fn cross_wronskian_with_second_kind() {
    // h1_n h2_{n+1} - h1_{n+1} h2_n = 2i/z^2 for all n
    for z in [Complex::new(0.7, 0.2), Complex::new(3.0, 1.0), Complex::new(-1.5, 0.5), Complex::new(0.0, 2.0)] {
        let want = Complex::new(0.0, 2.0) / (z * z);
        for n in 0..12 {
            let a = hankel_recurrence(n, &z).unwrap().h;
            let b = hankel_recurrence(n + 1, &z).unwrap().h;
            let w = a * h2(n + 1, z) - b * h2(n, z);
            let scale = (a * h2(n + 1, z)).norm() + (b * h2(n, z)).norm();
            assert!((w - want).norm() <= 1e-12 * scale.max(want.norm()), "n={n} z={z} w={w} want={want}");
        }
    }
}

#[test]
fn high_precision_recurrence_matches_f64() {
    let z = Complex::new(MpFloat::new(1.25, 256), MpFloat::new(0.5, 256));
    let zf = Complex::new(1.25, 0.5);
    for n in [1, 7, 20] {
        let hp = hankel_recurrence(n, &z).unwrap().h;
        let lo = hankel_recurrence(n, &zf).unwrap().h;
        let hpf = Complex::new(hp.re.to_f64(), hp.im.to_f64());
        assert!((hpf - lo).norm() <= 1e-12 * lo.norm());
    }
}

#[test]
fn residual_rejects_lower_half_plane_mu() {
    assert!(boundary_residual(2, &2.0, &Complex::new(1.0, -0.1)).is_err());
}
