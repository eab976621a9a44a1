//! The infinite-well reference model: eigenfunctions and their closed-form
//! spectral density over complex wave vectors.
//!
//! The n-th state of a well of width a (centered at the origin) is
//! `sqrt(2/a) cos(n pi x / a)` for odd n, `sqrt(2/a) sin(n pi x / a)` for
//! even n, zero outside [-a/2, a/2]. Its spectral density evaluates in
//! closed form, with distinct branches for lambda = 0 and lambda != 0 and
//! a removable 0/0 point at k = +-n pi / a on the real axis where the
//! limit value is a/(4 pi):
//!
//! ```text
//!                4 pi n^2 [ c^2 cosh^2(la/2) + s^2 sinh^2(la/2) ]
//! rho_n(k, l) = --------------------------------------------------
//!                a^3 [ (k^2 - l^2 - pi^2 n^2/a^2)^2 + 4 l^2 k^2 ]
//! ```
//!
//! with (c, s) = (cos(ka/2), sin(ka/2)) for odd n and swapped for even n.
//!
//! At lambda = 0 the density vanishes exactly at k = m pi / a for every m
//! of the same parity as n with m != n, and only for those m: for m of
//! the opposite parity the numerator is 4 pi n^2 / a^3 over a nonzero
//! denominator, so those lattice points are not zeros. The zero set of
//! this closed form is parity-restricted; [`well_forbidden_states`]
//! returns exactly that set.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{AnalyticState, Support, WaveVector};

/// Quantum number and width of an infinite well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellState {
    n: u32,
    a: f64,
}

/// Window (in units of k a - n pi) around the removable point inside which
/// the raw quotient is 0/0 garbage and a quadratic expansion is used.
const REMOVABLE_WINDOW: f64 = 1e-6;

/// Window (in units of k a / pi) for snapping onto the exact zero lattice.
const LATTICE_WINDOW: f64 = 1e-9;

/// |lambda a| beyond which cosh/sinh are evaluated in log scale.
const LOG_SCALE_THRESHOLD: f64 = 30.0;

impl WellState {
    pub fn new(n: u32, a: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("quantum number n must be >= 1".to_string()));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::invalid(format!("well width must be positive, got {a}")));
        }
        Ok(WellState { n, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    fn odd(&self) -> bool {
        self.n % 2 == 1
    }
}

/// The eigenfunction psi_n(x), exactly zero outside the well.
pub fn well_wavefunction(s: &WellState, x: f64) -> f64 {
    let half = 0.5 * s.a;
    if x < -half || x > half {
        return 0.0;
    }
    let amp = (2.0 / s.a).sqrt();
    let phase = s.n as f64 * PI * x / s.a;
    if s.odd() {
        amp * phase.cos()
    } else {
        amp * phase.sin()
    }
}

/// Quadratic expansion of the lambda = 0 branch around the removable point
/// k = n pi / a, in eps = |k| - n pi / a. The leading value is a/(4 pi).
fn removable_expansion(s: &WellState, eps: f64) -> f64 {
    let alpha = s.n as f64 * PI / s.a;
    let c2 = 0.75 / (alpha * alpha) - s.a * s.a / 12.0;
    (s.a / (4.0 * PI)) * (1.0 - eps / alpha + c2 * eps * eps)
}

/// The closed-form spectral density rho_n(k, lambda).
///
/// Branches: lambda = 0 with the removable point handled by a quadratic
/// expansion and the parity-restricted zero lattice snapped to exactly
/// zero; lambda != 0 with log-scaled hyperbolics once |lambda a| exceeds
/// 30 so the numerator cannot overflow while the quotient is still
/// representable.
pub fn well_spectral_closed(s: &WellState, kv: &WaveVector) -> f64 {
    let (k, lambda) = (kv.k, kv.lambda);
    let n = s.n as f64;
    let a = s.a;
    let alpha = n * PI / a;
    let alpha2 = alpha * alpha;

    if lambda == 0.0 {
        let ka = k.abs() * a;
        if (ka - n * PI).abs() < REMOVABLE_WINDOW {
            return removable_expansion(s, k.abs() - alpha);
        }
        // Exact zeros of the closed form sit on the lattice k = m pi / a
        // with m of the same parity as n (and m != n, which the removable
        // window has already captured).
        let m = (ka / PI).round();
        if (ka / PI - m).abs() < LATTICE_WINDOW && (m as i64 - s.n as i64) % 2 == 0 {
            return 0.0;
        }
        let half_phase = 0.5 * k * a;
        let c = if s.odd() {
            half_phase.cos()
        } else {
            half_phase.sin()
        };
        let d = k * k - alpha2;
        return 4.0 * PI * n * n * c * c / (a * a * a * d * d);
    }

    let den = {
        let d = k * k - lambda * lambda - alpha2;
        a * a * a * (d * d + 4.0 * lambda * lambda * k * k)
    };

    if (lambda * a).abs() > LOG_SCALE_THRESHOLD {
        // cosh^2 and sinh^2 coincide to ~exp(-|lambda a|) here and the
        // trig weights sum to one, so the numerator is pi n^2 exp(|lambda a|).
        let ln_num = (PI * n * n).ln() + (lambda * a).abs();
        return (ln_num - den.ln()).exp();
    }

    let half_phase = 0.5 * k * a;
    let (c2, s2) = {
        let c = half_phase.cos();
        let sn = half_phase.sin();
        (c * c, sn * sn)
    };
    let v = 0.5 * lambda * a;
    let ch2 = v.cosh().powi(2);
    let sh2 = v.sinh().powi(2);
    let trig = if s.odd() {
        c2 * ch2 + s2 * sh2
    } else {
        s2 * ch2 + c2 * sh2
    };
    4.0 * PI * n * n * trig / den
}

/// The real wave vectors k = m pi / a (m <= m_max) at which the closed
/// form vanishes exactly on the real axis: m of the same parity as n,
/// m != n, ascending.
pub fn well_forbidden_states(s: &WellState, m_max: u32) -> Vec<f64> {
    (1..=m_max)
        .filter(|&m| m != s.n && m % 2 == s.n % 2)
        .map(|m| m as f64 * PI / s.a)
        .collect()
}

impl AnalyticState for WellState {
    fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(well_wavefunction(self, x), 0.0)
    }

    fn support(&self) -> Support {
        Support::Compact {
            lo: -0.5 * self.a,
            hi: 0.5 * self.a,
        }
    }
}
