//! The autocorrelation function built from the bound-state wave function,
//! and a positivity probe of its Fourier spectrum.
//!
//! ```text
//!          1 - 2 sum exp(2|t|/t0 - pi n^2 exp(4|t|/t0))
//! tau(t) = --------------------------------------------- exp(-|t|/t0)
//!                   1 - 2 sum exp(-pi n^2)
//! ```
//!
//! Algebraically tau(t) = R(t/t0) / R(0), so tau(0) = 1, tau is even, and
//! its Fourier transform has the closed form
//!
//! ```text
//! S(omega) = -t0 Xi(omega t0 / 2, 0) / (2 R(0)).
//! ```
//!
//! Since Xi changes sign at every critical-line zero, S is *not*
//! nonnegative: tau fails Bochner positivity and therefore cannot be the
//! autocorrelation of an ordinary wide-sense-stationary process. The
//! spectrum routine reports the sign rather than asserting positivity;
//! documenting this property is the point of the probe.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{bisect, find_sign_changes, integrate_decaying, Tolerances};
use crate::spectral::CRITICAL_LINE_WALL;
use crate::xi::xi_on_critical_line;

const MAX_TERMS: usize = 16;
const UNDERFLOW_EXP: f64 = -745.0;

/// Correlation time scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationParams {
    t0: f64,
}

impl CorrelationParams {
    pub fn new(t0: f64) -> Result<Self> {
        if !(t0 > 0.0) || !t0.is_finite() {
            return Err(Error::invalid(format!(
                "correlation time t0 must be strictly positive, got {t0}"
            )));
        }
        Ok(CorrelationParams { t0 })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }
}

fn series_sum(x: f64, tol: &Tolerances, exponent: impl Fn(f64, f64) -> f64) -> f64 {
    // sum over n of exp(exponent(n, w)) with w = pi n^2 exp(4x)
    let e4 = (4.0 * x).exp();
    let mut sum = 0.0;
    for n in 1..=MAX_TERMS {
        let w = PI * (n * n) as f64 * e4;
        let arg = exponent(x, w);
        if arg < UNDERFLOW_EXP {
            break;
        }
        let term = arg.exp();
        sum += term;
        if term < tol.series_tol * sum.max(tol.series_tol) {
            break;
        }
    }
    sum
}

/// Denominator of tau: 1 - 2 sum exp(-pi n^2). Equals R(0).
fn stationary_normalizer(tol: &Tolerances) -> f64 {
    1.0 - 2.0 * series_sum(0.0, tol, |_, w| -w)
}

/// tau(t; t0): equals R(|t|/t0) / R(0), with tau(0) = 1 exactly.
pub fn autocorrelation(t: f64, p: &CorrelationParams, tol: &Tolerances) -> f64 {
    let x = (t / p.t0).abs();
    let numerator = 1.0 - 2.0 * series_sum(x, tol, |x, w| 2.0 * x - w);
    numerator / stationary_normalizer(tol) * (-x).exp()
}

/// One evaluated point of the spectrum probe.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumPoint {
    pub omega: f64,
    /// Direct route: 2 int_0^oo tau(t) cos(omega t) dt by quadrature.
    pub s_quadrature: f64,
    /// Closed route: -t0 Xi(omega t0 / 2, 0) / (2 R(0)).
    pub s_closed: f64,
    /// True where the spectrum is negative (the Bochner violation marker).
    pub negative: bool,
}

/// S(omega) on a grid, computed two ways and returned side by side.
///
/// The two routes agree to quadrature accuracy; each point carries a flag
/// marking negative spectrum values.
pub fn autocorrelation_spectrum(
    omega_grid: &[f64],
    p: &CorrelationParams,
    tol: &Tolerances,
) -> Result<Vec<SpectrumPoint>> {
    omega_grid
        .iter()
        .map(|&omega| {
            if !omega.is_finite() {
                return Err(Error::domain(format!("omega must be finite, got {omega}")));
            }
            let s_quadrature = spectrum_by_quadrature(omega, p, tol)?;
            let s_closed =
                -p.t0 * xi_on_critical_line(0.5 * omega * p.t0, tol)?
                    / (2.0 * stationary_normalizer(tol));
            Ok(SpectrumPoint {
                omega,
                s_quadrature,
                s_closed,
                negative: s_quadrature < 0.0,
            })
        })
        .collect()
}

fn spectrum_by_quadrature(omega: f64, p: &CorrelationParams, tol: &Tolerances) -> Result<f64> {
    let r = integrate_decaying(
        |u: f64| Ok(autocorrelation(u, p, tol) * (omega * u).cos()),
        0.0,
        1.0 / p.t0,
        tol,
    )?;
    Ok(2.0 * r.value)
}

/// Frequencies in [omega_lo, omega_hi] where the quadrature-route spectrum
/// changes sign, refined by bisection. The first one sits at
/// omega t0 = 2 * 14.1347..., twice the first critical-line zero.
pub fn spectrum_sign_changes(
    omega_lo: f64,
    omega_hi: f64,
    step: f64,
    p: &CorrelationParams,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    if omega_hi * p.t0 > 2.0 * CRITICAL_LINE_WALL {
        return Err(Error::PrecisionWall(format!(
            "omega t0 = {} exceeds the supported range {}",
            omega_hi * p.t0,
            2.0 * CRITICAL_LINE_WALL
        )));
    }
    let f = |om: f64| spectrum_by_quadrature(om, p, tol);
    let brackets = find_sign_changes(f, omega_lo, omega_hi, step)?;
    brackets.into_iter().map(|b| bisect(f, b, tol)).collect()
}
