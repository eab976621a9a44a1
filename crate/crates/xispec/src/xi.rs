//! The completed Riemann zeta function Xi(s) = pi^(-s/2) Gamma(s/2) zeta(s),
//! evaluated three independent ways.
//!
//! Points are parameterized as s = 1/2 + delta + i t, so delta is the
//! horizontal offset from the critical line and t the height along it.
//! Writing w = t - i delta, the three routes are
//!
//! ```text
//! direct:   Xi = 1/(s(s-1)) + int_1^oo (x^{s/2-1} + x^{(1-s)/2-1}) theta(x) dx
//! omega:    Xi = 2 int_0^oo cos(w y / 2) Omega(y) dy - 1/(w^2 + 1/4)
//! fourier:  Xi = 2 int_0^oo cos(w y / 2) Phi(y) dy
//! ```
//!
//! All three agree wherever they are defined; the third converges only for
//! |delta| < 1/2 because the integrand envelope is exp((|delta|/2 - 1/4) y).
//! Xi is real on the critical line and exponentially small in t there
//! (roughly exp(-pi t / 4)), which puts a practical wall near t = 35 where
//! binary64 quadrature noise overtakes the value.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_decaying, log_gamma_complex, Tolerances};
use crate::theta::{omega, phi, theta};

/// A point s = 1/2 + delta + i t of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Height along the critical line.
    pub t: f64,
    /// Horizontal offset from the critical line, delta = sigma - 1/2.
    pub delta: f64,
}

impl CriticalPoint {
    pub fn new(t: f64, delta: f64) -> Self {
        CriticalPoint { t, delta }
    }

    /// The complex argument s = 1/2 + delta + i t.
    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5 + self.delta, self.t)
    }

    /// Real part sigma = 1/2 + delta.
    pub fn sigma(&self) -> f64 {
        0.5 + self.delta
    }

    /// The combination w = t - i delta that every kernel depends on.
    fn w(&self) -> Complex64 {
        Complex64::new(self.t, -self.delta)
    }
}

/// Half-width of the critical strip in delta.
pub const STRIP_HALF_WIDTH: f64 = 0.5;

/// The Fourier-form evaluator refuses |delta| at or beyond this value,
/// where its truncation point explodes as the envelope exponent vanishes.
pub const FOURIER_DELTA_LIMIT: f64 = 0.49;

fn ensure_finite(p: &CriticalPoint) -> Result<()> {
    if !p.t.is_finite() || !p.delta.is_finite() {
        return Err(Error::domain(format!(
            "point must be finite, got t = {}, delta = {}",
            p.t, p.delta
        )));
    }
    Ok(())
}

fn ensure_off_poles(p: &CriticalPoint) -> Result<()> {
    if p.t == 0.0 && (p.delta == 0.5 || p.delta == -0.5) {
        return Err(Error::domain(
            "s = 0 and s = 1 are the poles of the completed zeta function".to_string(),
        ));
    }
    Ok(())
}

/// Xi(s) by quadrature of the classical integral representation.
///
/// Valid for every s except the poles s = 0 and s = 1; this is the
/// reference route the other evaluators are checked against. The two
/// power terms combine into `2 x^{-3/4} cos(w ln(x) / 2) theta(x)`, a form
/// that is exactly real on the critical line.
pub fn xi_direct(p: &CriticalPoint, tol: &Tolerances) -> Result<Complex64> {
    ensure_finite(p)?;
    ensure_off_poles(p)?;
    let s = p.s();
    let kernel = (s * (s - 1.0)).inv();
    let w = p.w();
    let integrand = |x: f64| -> Result<Complex64> {
        let th = theta(x, tol)?;
        let z = w * (0.5 * x.ln());
        Ok(z.cos() * (2.0 * x.powf(-0.75) * th))
    };
    let integral = integrate_decaying(integrand, 1.0, PI, tol)?;
    Ok(kernel + integral.value)
}

/// Xi(1/2 + i t) through a purely real evaluation path.
///
/// On the critical line the integrand of the direct route collapses to
/// `2 x^{-3/4} cos(t ln(x) / 2) theta(x)` and the pole term to
/// `-1/(t^2 + 1/4)`, so no complex arithmetic is needed. This is the
/// evaluator behind zero location.
pub fn xi_on_critical_line(t: f64, tol: &Tolerances) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {t}")));
    }
    let kernel = -1.0 / (t * t + 0.25);
    let integrand = |x: f64| -> Result<f64> {
        let th = theta(x, tol)?;
        Ok(2.0 * x.powf(-0.75) * (0.5 * t * x.ln()).cos() * th)
    };
    let integral = integrate_decaying(integrand, 1.0, PI, tol)?;
    Ok(kernel + integral.value)
}

/// Xi via the cosine transform of Omega plus the closed-form Cauchy term.
///
/// Omega decays super-exponentially, so the integral converges for every
/// delta; the only failure mode is the kernel-term pole at t = 0,
/// |delta| = 1/2.
pub fn xi_omega_form(p: &CriticalPoint, tol: &Tolerances) -> Result<Complex64> {
    ensure_finite(p)?;
    let kernel = cauchy_kernel(p)?;
    let half_w = p.w() * 0.5;
    let integrand = |y: f64| -> Result<Complex64> {
        Ok((half_w * y).cos() * omega(y, tol)?)
    };
    let integral = integrate_decaying(integrand, 0.0, 3.0, tol)?;
    Ok(integral.value * 2.0 - kernel)
}

/// Xi as the plain cosine transform of Phi.
///
/// The integrand envelope is exp((|delta|/2 - 1/4) y), so the evaluator
/// refuses |delta| >= [`FOURIER_DELTA_LIMIT`], where the truncation point
/// explodes; use [`xi_direct`] in that neighborhood.
pub fn xi_fourier(p: &CriticalPoint, tol: &Tolerances) -> Result<Complex64> {
    ensure_finite(p)?;
    if p.delta.abs() >= FOURIER_DELTA_LIMIT {
        return Err(Error::UnsupportedRegion(format!(
            "|delta| = {} >= {FOURIER_DELTA_LIMIT}: the Fourier form truncates too late; \
             use xi_direct instead",
            p.delta.abs()
        )));
    }
    let rate = 0.25 - 0.5 * p.delta.abs();
    let half_w = p.w() * 0.5;
    let integrand = |y: f64| -> Result<Complex64> {
        Ok((half_w * y).cos() * phi(y, tol)?)
    };
    let integral = integrate_decaying(integrand, 0.0, rate, tol)?;
    Ok(integral.value * 2.0)
}

/// Sign convention of the exponential kernel in [`xi_fourier_exp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSign {
    /// exp(+ i w y / 2)
    Plus,
    /// exp(- i w y / 2), the convention used elsewhere in this crate.
    Minus,
}

/// Xi as a two-sided exponential-kernel transform of the even extension
/// Phi(|y|), integrating the two half-lines separately.
///
/// Either [`KernelSign`] gives the same value (the even extension makes
/// the sign choice immaterial); both are exposed so the invariance is
/// testable rather than assumed.
pub fn xi_fourier_exp(p: &CriticalPoint, sign: KernelSign, tol: &Tolerances) -> Result<Complex64> {
    ensure_finite(p)?;
    if p.delta.abs() >= FOURIER_DELTA_LIMIT {
        return Err(Error::UnsupportedRegion(format!(
            "|delta| = {} >= {FOURIER_DELTA_LIMIT}: the Fourier form truncates too late; \
             use xi_direct instead",
            p.delta.abs()
        )));
    }
    let sgn = match sign {
        KernelSign::Plus => 1.0,
        KernelSign::Minus => -1.0,
    };
    let ia = Complex64::i() * p.w() * 0.5;
    // |exp(s i a y)| = exp(s delta y / 2), so each half-line keeps its own
    // positive envelope rate as long as |delta| < 1/2.
    let rate_fwd = 0.25 - sgn * 0.5 * p.delta;
    let rate_bwd = 0.25 + sgn * 0.5 * p.delta;
    let fwd = integrate_decaying(
        |y: f64| Ok((ia * (sgn * y)).exp() * phi(y, tol)?),
        0.0,
        rate_fwd,
        tol,
    )?;
    let bwd = integrate_decaying(
        |y: f64| Ok((ia * (-sgn * y)).exp() * phi(y, tol)?),
        0.0,
        rate_bwd,
        tol,
    )?;
    Ok(fwd.value + bwd.value)
}

/// Closed form of the half-line cosine transform of exp(-y/4):
///
/// ```text
/// int_0^oo cos(w y / 2) exp(-y/4) dy = 1/((w - i/2)(w + i/2)) = 1/(w^2 + 1/4)
/// ```
///
/// valid throughout the strip |delta| < 1/2, with a pole at t = 0,
/// |delta| = 1/2.
pub fn cauchy_kernel(p: &CriticalPoint) -> Result<Complex64> {
    ensure_finite(p)?;
    let w = p.w();
    let denom = w * w + 0.25;
    if denom.norm() == 0.0 {
        return Err(Error::domain(
            "kernel pole at t = 0, |delta| = 1/2".to_string(),
        ));
    }
    Ok(denom.inv())
}

/// Recover zeta(s) = pi^{s/2} Xi(s) / Gamma(s/2) from the direct evaluator.
///
/// Division by the exponentially small gamma factor amplifies the
/// absolute quadrature error of Xi into relative error of zeta, roughly
/// by 1/|Xi(s)| ~ exp(pi |t| / 4): expect ~1e-12 relative near the real
/// axis, degrading to ~1e-9 by t ~ 25.
pub fn zeta_from_xi(p: &CriticalPoint, tol: &Tolerances) -> Result<Complex64> {
    let s = p.s();
    let xi = xi_direct(p, tol)?;
    let log_gamma = log_gamma_complex(0.5 * s)?;
    Ok(xi * (0.5 * s * PI.ln() - log_gamma).exp())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference values keep their 30-digit tails
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    // 30-digit reference values computed independently of everything in
    // this crate (completed zeta at selected points; first zeta zeros).
    pub(crate) const XI_AT_ORIGIN: f64 = -3.976_966_225_506_512_879_3;
    const XI_3_02: (f64, f64) = (-0.085_821_243_011_564_068, -0.013_647_625_584_044_528);
    const XI_10_03: (f64, f64) = (-7.391_371_482_934_678_1e-4, -1.785_974_801_754_716_3e-4);
    const XI_1_0: f64 = -0.777_211_887_473_573_586_8;
    const GAMMA_1: f64 = 14.134_725_141_734_693_79;
    const ZETA_HALF: f64 = -1.460_354_508_809_586_812_9;
    const ZETA_3: f64 = 1.202_056_903_159_594_285_4;

    #[test]
    fn direct_at_origin() {
        let v = xi_direct(&CriticalPoint::new(0.0, 0.0), &tol()).unwrap();
        assert!((v.re - XI_AT_ORIGIN).abs() <= 1e-11, "got {v}");
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn direct_off_line_reference_values() {
        let v = xi_direct(&CriticalPoint::new(3.0, 0.2), &tol()).unwrap();
        assert!((v.re - XI_3_02.0).abs() <= 1e-12);
        assert!((v.im - XI_3_02.1).abs() <= 1e-12);

        let v = xi_direct(&CriticalPoint::new(10.0, 0.3), &tol()).unwrap();
        assert!((v.re - XI_10_03.0).abs() <= 1e-12);
        assert!((v.im - XI_10_03.1).abs() <= 1e-12);
    }

    #[test]
    fn direct_vanishes_at_first_zero() {
        let v = xi_direct(&CriticalPoint::new(GAMMA_1, 0.0), &tol()).unwrap();
        assert!(v.norm() <= 1e-9, "|Xi| = {}", v.norm());
    }

    #[test]
    fn direct_functional_equation_pair() {
        let t = tol();
        let a = xi_direct(&CriticalPoint::new(3.0, 0.2), &t).unwrap();
        let b = xi_direct(&CriticalPoint::new(-3.0, -0.2), &t).unwrap();
        assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn direct_rejects_poles() {
        assert!(matches!(
            xi_direct(&CriticalPoint::new(0.0, 0.5), &tol()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            xi_direct(&CriticalPoint::new(0.0, -0.5), &tol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn critical_line_path_matches_direct() {
        let t = tol();
        for height in [0.0, 1.0, 14.0, 25.5] {
            let real = xi_on_critical_line(height, &t).unwrap();
            let complex = xi_direct(&CriticalPoint::new(height, 0.0), &t).unwrap();
            assert!((real - complex.re).abs() <= 1e-12);
        }
        let v = xi_on_critical_line(1.0, &t).unwrap();
        assert!((v - XI_1_0).abs() <= 1e-12);
    }

    #[test]
    fn omega_form_matches_direct() {
        let t = tol();
        for (height, d) in [(0.0, 0.0), (10.0, 0.3), (3.0, -0.2)] {
            let p = CriticalPoint::new(height, d);
            let a = xi_direct(&p, &t).unwrap();
            let b = xi_omega_form(&p, &t).unwrap();
            assert!((a - b).norm() <= 1e-10, "disagree at ({height}, {d}): {}", (a - b).norm());
        }
    }

    #[test]
    fn omega_form_integral_term_arithmetic() {
        // At the origin the kernel term is 4, so the integral term must be
        // Xi(0,0) + 4.
        let t = tol();
        let p = CriticalPoint::new(0.0, 0.0);
        let xi = xi_omega_form(&p, &t).unwrap();
        let kernel = cauchy_kernel(&p).unwrap();
        assert!((kernel.re - 4.0).abs() <= 1e-15 && kernel.im.abs() <= 1e-15);
        let integral_term = xi + kernel;
        assert!((integral_term.re - (XI_AT_ORIGIN + 4.0)).abs() <= 1e-10);
    }

    #[test]
    fn fourier_matches_direct_and_vanishes_at_second_zero() {
        let t = tol();
        let a = xi_fourier(&CriticalPoint::new(0.0, 0.0), &t).unwrap();
        assert!((a.re - XI_AT_ORIGIN).abs() <= 1e-10);

        let gamma_2 = 21.022_039_638_771_555;
        let v = xi_fourier(&CriticalPoint::new(gamma_2, 0.0), &t).unwrap();
        assert!(v.norm() <= 1e-9, "|Xi| = {}", v.norm());
    }

    #[test]
    fn fourier_refuses_near_strip_boundary() {
        let e = xi_fourier(&CriticalPoint::new(1.0, 0.49), &tol()).unwrap_err();
        assert!(matches!(e, Error::UnsupportedRegion(_)));
        let msg = e.to_string();
        assert!(msg.contains("xi_direct"), "error should direct callers: {msg}");
    }

    #[test]
    fn exp_kernel_sign_invariance() {
        let t = tol();
        let p = CriticalPoint::new(5.0, 0.1);
        let lower = xi_fourier_exp(&p, KernelSign::Minus, &t).unwrap();
        let upper = xi_fourier_exp(&p, KernelSign::Plus, &t).unwrap();
        let cosine = xi_fourier(&p, &t).unwrap();
        assert!((lower - cosine).norm() <= 1e-12);
        assert!((upper - cosine).norm() <= 1e-12);
    }

    #[test]
    fn cauchy_kernel_closed_values() {
        let v = cauchy_kernel(&CriticalPoint::new(0.0, 0.0)).unwrap();
        assert!((v.re - 4.0).abs() <= 1e-15 && v.im == 0.0);
        let v = cauchy_kernel(&CriticalPoint::new(1.0, 0.0)).unwrap();
        assert!((v.re - 0.8).abs() <= 1e-15 && v.im.abs() <= 1e-16);
        assert!(matches!(
            cauchy_kernel(&CriticalPoint::new(0.0, 0.5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cauchy_kernel_matches_quadrature() {
        let t = tol();
        let p = CriticalPoint::new(2.0, 0.25);
        let closed = cauchy_kernel(&p).unwrap();
        let half_w = Complex64::new(p.t, -p.delta) * 0.5;
        let quad = integrate_decaying(
            |y: f64| Ok((half_w * y).cos() * (-0.25 * y).exp()),
            0.0,
            0.25 - 0.5 * p.delta.abs(),
            &t,
        )
        .unwrap();
        assert!((quad.value - closed).norm() <= 1e-10);
    }

    #[test]
    fn zeta_recovery() {
        let t = tol();
        // s = 2 via t = 0, delta = 3/2: zeta(2) = pi^2 / 6.
        let v = zeta_from_xi(&CriticalPoint::new(0.0, 1.5), &t).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() <= 1e-10, "got {v}");
        assert!(v.im.abs() <= 1e-12);

        // s = 1/2.
        let v = zeta_from_xi(&CriticalPoint::new(0.0, 0.0), &t).unwrap();
        assert!((v.re - ZETA_HALF).abs() <= 1e-11);

        // s = 3 (Apery's constant).
        let v = zeta_from_xi(&CriticalPoint::new(0.0, 2.5), &t).unwrap();
        assert!((v.re - ZETA_3).abs() <= 1e-11);
    }

    #[test]
    fn reality_on_critical_line() {
        let t = tol();
        for i in 0..=30 {
            let p = CriticalPoint::new(i as f64, 0.0);
            let v = xi_direct(&p, &t).unwrap();
            assert!(
                v.im.abs() <= 1e-12 * (1.0 + v.norm()),
                "Im Xi({i}, 0) = {}",
                v.im
            );
        }
    }

    #[test]
    fn schwarz_reflection_and_functional_equation_sampled() {
        let t = tol();
        // Deterministic pseudo-random strip sample.
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let height = 30.0 * next();
            let d = 0.98 * (next() - 0.5);
            let a = xi_direct(&CriticalPoint::new(height, d), &t).unwrap();
            let refl = xi_direct(&CriticalPoint::new(-height, d), &t).unwrap();
            let func = xi_direct(&CriticalPoint::new(-height, -d), &t).unwrap();
            assert!((refl - a.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
            assert!((func - a).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}
