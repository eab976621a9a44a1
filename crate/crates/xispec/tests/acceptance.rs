//! Acceptance suite: every release-gating property in one place, one
//! pass/fail line per criterion (run with `--nocapture` to see them).
//!
//! Expected values marked "reference" come from independent 30-digit
//! computations (theta sums, completed-zeta values, published zeta zeros),
//! never from the code under test.
#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use xispec::numerics::integrate_decaying;
use xispec::spectral::{
    locate_zeros, riemann_spectral_density, spectral_density_of, strip_scan, WaveSource,
    WaveVector,
};
use xispec::stochastic::{
    autocorrelation, autocorrelation_spectrum, spectrum_sign_changes, CorrelationParams,
};
use xispec::theta::{theta, theta_prime};
use xispec::wavefunction::{
    norm_squared, riemann_wave, riemann_wave_deriv, schrodinger_residual, DerivOrder,
};
use xispec::well::{well_forbidden_states, well_spectral_closed, WellState};
use xispec::xi::{xi_direct, xi_fourier, xi_omega_form, CriticalPoint};
use xispec::Tolerances;

const GAMMA: [f64; 5] = [
    14.134_725_141_734_693_79,
    21.022_039_638_771_554_993,
    25.010_857_580_145_688_763,
    30.424_876_125_859_513_210,
    32.935_061_587_739_189_691,
];

fn tol() -> Tolerances {
    Tolerances::default()
}

fn pass(n: u32, what: &str, detail: String) {
    println!("[PASS] criterion {n} - {what}: {detail}");
}

#[test]
fn criterion_1_zero_reproduction() {
    let start = Instant::now();
    let t = tol();

    let zeros = locate_zeros(10.0, 30.0, 0.05, &t).unwrap();
    assert_eq!(zeros.len(), 3, "expected exactly three zeros, got {zeros:?}");
    let mut worst: f64 = 0.0;
    for (z, g) in zeros.iter().zip(&GAMMA[..3]) {
        let dev = (z - g).abs();
        assert!(dev <= 1e-6, "zero {z} deviates {dev:e} from {g}");
        worst = worst.max(dev);
    }

    let extended = locate_zeros(10.0, 35.0, 0.05, &t).unwrap();
    assert_eq!(extended.len(), 5, "expected five zeros up to t = 35, got {extended:?}");
    for (z, g) in extended[3..].iter().zip(&GAMMA[3..]) {
        let dev = (z - g).abs();
        assert!(dev <= 1e-4, "extended zero {z} deviates {dev:e} from {g}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 2 minutes");
    pass(
        1,
        "zero reproduction",
        format!(
            "3 zeros in [10,30] within {worst:.1e} of reference, 5 in [10,35], {:.2?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_2_triple_representation_agreement() {
    let start = Instant::now();
    let t = tol();
    let mut worst_omega: f64 = 0.0;
    let mut worst_fourier: f64 = 0.0;
    for i in 0..=15 {
        let height = 2.0 * i as f64;
        for delta in [0.0, 0.2, -0.2, 0.4, -0.4] {
            let p = CriticalPoint::new(height, delta);
            let direct = xi_direct(&p, &t).unwrap();
            let omega = xi_omega_form(&p, &t).unwrap();
            let fourier = xi_fourier(&p, &t).unwrap();
            let dev_o = (direct - omega).norm();
            let dev_f = (direct - fourier).norm();
            assert!(dev_o <= 1e-9, "omega route off by {dev_o:e} at ({height}, {delta})");
            assert!(dev_f <= 1e-9, "fourier route off by {dev_f:e} at ({height}, {delta})");
            worst_omega = worst_omega.max(dev_o);
            worst_fourier = worst_fourier.max(dev_f);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 1 minute");
    pass(
        2,
        "triple-representation agreement",
        format!(
            "80 grid points, max |direct-omega| = {worst_omega:.2e}, \
             max |direct-fourier| = {worst_fourier:.2e}, {:.2?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_3_fourier_wavefunction_identity() {
    // (1/sqrt(2 pi)) int R(x) e^{-iKx} dx  ==  -Xi(k/2, lambda/2) / (2 sqrt(2 pi))
    // assembled here from the raw quadrature engine, independent of the
    // spectral module's own wiring.
    let t = tol();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let k = if i == 0 { 4.0 } else { rng.gen_range(0.0..56.0) };
        let lambda = if i == 0 { 0.6 } else { rng.gen_range(-0.9..0.9) };
        let kk = Complex64::new(k, -lambda);
        let minus_ik = Complex64::new(0.0, -1.0) * kk;
        let right = integrate_decaying(
            |x: f64| Ok(Complex64::new(riemann_wave(x, &t), 0.0) * (minus_ik * x).exp()),
            0.0,
            1.0 + lambda,
            &t,
        )
        .unwrap();
        let left = integrate_decaying(
            |u: f64| Ok(Complex64::new(riemann_wave(-u, &t), 0.0) * (-minus_ik * u).exp()),
            0.0,
            1.0 - lambda,
            &t,
        )
        .unwrap();
        let transform_amp = (right.value + left.value) / (2.0 * PI).sqrt();

        let xi = xi_direct(&CriticalPoint::new(0.5 * k, 0.5 * lambda), &t).unwrap();
        let xi_amp = -xi / (2.0 * (2.0 * PI).sqrt());

        let dev = (transform_amp - xi_amp).norm();
        assert!(dev <= 1e-9, "identity off by {dev:e} at K = ({k}, {lambda})");
        worst = worst.max(dev);
    }
    pass(
        3,
        "Fourier-wavefunction identity",
        format!("20 strip points, max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_4_wave_function_regularity_suite() {
    let t = tol();

    let identity = 4.0 * theta_prime(1.0, &t).unwrap() + theta(1.0, &t).unwrap();
    assert!((identity + 0.5).abs() <= 1e-12, "theta identity off: {identity}");

    // Independent direct sum for R(0) = 1 - 2 sum exp(-pi n^2).
    let r0_reference = 1.0 - 2.0 * (1..40).map(|n| (-PI * (n * n) as f64).exp()).sum::<f64>();
    let r0 = riemann_wave(0.0, &t);
    assert!((r0 - r0_reference).abs() <= 1e-14, "R(0) = {r0} vs {r0_reference}");

    assert_eq!(riemann_wave_deriv(0.0, DerivOrder::First, &t).unwrap(), 0.0);

    let norm = norm_squared(&t).unwrap();
    assert!(norm.value < 1.0, "norm^2 = {}", norm.value);

    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let x = 0.01 + (4.0 - 0.01) * i as f64 / 99.0;
        for sign in [1.0, -1.0] {
            let r = schrodinger_residual(sign * x, &t).unwrap().abs();
            assert!(r <= 1e-10, "residual {r:e} at x = {}", sign * x);
            worst = worst.max(r);
        }
    }
    pass(
        4,
        "wave-function regularity suite",
        format!(
            "theta identity, R(0), R'(0), norm^2 = {:.6} < 1, max residual {worst:.2e} \
             on 200 points",
            norm.value
        ),
    );
}

#[test]
fn criterion_5_well_suite() {
    let t = tol();

    // Closed form vs generic transform over the full grid.
    let mut worst: f64 = 0.0;
    for n in [1u32, 2, 3] {
        for a in [1.0, 2.0] {
            let s = WellState::new(n, a).unwrap();
            let mut k = -20.0;
            while k <= 20.0 {
                for lambda in [0.0, 0.3, -0.3, 0.9, -0.9] {
                    let kv = WaveVector::new(k, lambda);
                    let closed = well_spectral_closed(&s, &kv);
                    let quad = spectral_density_of(WaveSource::Analytic(&s), &kv, &t).unwrap();
                    let dev = (closed - quad).abs();
                    assert!(
                        dev <= 1e-10,
                        "closed vs quadrature off by {dev:e} at n={n} a={a} K=({k}, {lambda})"
                    );
                    worst = worst.max(dev);
                    if lambda != 0.0 {
                        assert!(closed > 0.0, "off-axis density not positive at n={n} a={a} K=({k},{lambda})");
                    }
                }
                k += 0.5;
            }
        }
    }

    // The removable point carries a/(4 pi).
    let s = WellState::new(1, 1.0).unwrap();
    let rho_pi = well_spectral_closed(&s, &WaveVector::new(PI, 0.0));
    assert!((rho_pi - 1.0 / (4.0 * PI)).abs() <= 1e-15);
    for side in [-1.0, 1.0] {
        let rho = well_spectral_closed(&s, &WaveVector::new(PI * (1.0 + side * 1e-9), 0.0));
        assert!((rho - 1.0 / (4.0 * PI)).abs() <= 1e-6);
    }

    // Parity-restricted zeros are exact.
    for n in [1u32, 2, 3] {
        let s = WellState::new(n, 1.0).unwrap();
        for k in well_forbidden_states(&s, 8) {
            assert_eq!(well_spectral_closed(&s, &WaveVector::new(k, 0.0)), 0.0);
        }
    }

    pass(
        5,
        "infinite-well suite",
        format!("closed form vs quadrature max deviation {worst:.2e} over 2430-point grid"),
    );
}

#[test]
fn criterion_6_strip_positivity_scan() {
    let start = Instant::now();
    let report = strip_scan(0.0, 60.0, 0.1, &[0.2, -0.2, 0.5, -0.5, 0.8, -0.8], &tol()).unwrap();
    assert!(
        report.min_value > 0.0,
        "minimum {} not strictly positive at {:?}",
        report.min_value,
        report.argmin
    );
    assert!(
        report.counterexamples.is_empty(),
        "counterexample flag fired: {:?}",
        report.counterexamples
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget 10 minutes");
    pass(
        6,
        "strip positivity scan",
        format!(
            "{} evaluations, min rho = {:.3e} at (k, lambda) = ({:.1}, {:.1}), {:.2?}",
            report.evaluations, report.min_value, report.argmin.0, report.argmin.1, elapsed
        ),
    );
}

#[test]
fn criterion_7_symmetry_suite() {
    let t = tol();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let k = rng.gen_range(0.0..60.0);
        let lambda = rng.gen_range(-0.95..0.95);
        let base = riemann_spectral_density(&WaveVector::new(k, lambda), &t).unwrap();
        let mirror_k = riemann_spectral_density(&WaveVector::new(-k, lambda), &t).unwrap();
        let mirror_l = riemann_spectral_density(&WaveVector::new(k, -lambda), &t).unwrap();
        let dev = (base - mirror_k).abs().max((base - mirror_l).abs());
        assert!(dev <= 1e-10, "symmetry broken by {dev:e} at ({k}, {lambda})");
        worst = worst.max(dev);
    }

    let mut worst_im: f64 = 0.0;
    for i in 0..=35 {
        let p = CriticalPoint::new(i as f64, 0.0);
        let v = xi_direct(&p, &t).unwrap();
        let rel = v.im.abs() / (1.0 + v.norm());
        assert!(rel <= 1e-12, "Xi({i}, 0) has imaginary part {}", v.im);
        worst_im = worst_im.max(rel);
    }
    pass(
        7,
        "symmetry suite",
        format!(
            "50 random strip points, max symmetry deviation {worst:.2e}; \
             critical-line imaginary part <= {worst_im:.2e}"
        ),
    );
}

#[test]
fn criterion_8_autocorrelation_suite() {
    let t = tol();
    let t0 = 1.0;
    let p = CorrelationParams::new(t0).unwrap();

    // tau(t) = R(t/t0) / R(0) pointwise.
    let r0 = riemann_wave(0.0, &t);
    let mut worst_tau: f64 = 0.0;
    for i in 0..100 {
        let u = -5.0 + 10.0 * i as f64 / 99.0;
        let tau = autocorrelation(u * t0, &p, &t);
        let ratio = riemann_wave(u, &t) / r0;
        let dev = (tau - ratio).abs();
        assert!(dev <= 1e-14, "tau mismatch {dev:e} at t = {u}");
        worst_tau = worst_tau.max(dev);
    }

    // Spectrum route agreement for omega t0 in [0, 60].
    let omegas: Vec<f64> = (0..=20).map(|i| 3.0 * i as f64 / t0).collect();
    let points = autocorrelation_spectrum(&omegas, &p, &t).unwrap();
    let mut worst_s: f64 = 0.0;
    for pt in &points {
        let dev = (pt.s_quadrature - pt.s_closed).abs();
        assert!(dev <= 1e-8, "spectrum routes differ by {dev:e} at omega = {}", pt.omega);
        worst_s = worst_s.max(dev);
    }

    // S(0) = 2.1766187428771946 t0 (reference -Xi(0,0) / (2 R(0))).
    assert!((points[0].s_quadrature - 2.176_618_742_877_194_6 * t0).abs() <= 1e-6);

    // First sign flip at omega t0 = 2 gamma_1.
    let flips = spectrum_sign_changes(27.0 / t0, 29.0 / t0, 0.25 / t0, &p, &t).unwrap();
    assert_eq!(flips.len(), 1, "expected one flip, got {flips:?}");
    let dev = (flips[0] * t0 - 2.0 * GAMMA[0]).abs();
    assert!(dev <= 1e-4, "first flip at omega t0 = {}, off by {dev:e}", flips[0] * t0);

    pass(
        8,
        "autocorrelation suite",
        format!(
            "tau identity max {worst_tau:.2e}, spectrum routes max {worst_s:.2e}, \
             first sign flip within {dev:.2e} of 2 gamma_1"
        ),
    );
}
