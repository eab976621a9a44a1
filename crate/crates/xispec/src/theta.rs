//! The theta series and the two integral kernels derived from it.
//!
//! ```text
//! theta(x) = sum_{n>=1} exp(-pi n^2 x)                        x > 0
//! Omega(y) = exp(y/4) theta(exp(y))                           y >= 0
//! Phi(y)   = -(1/2) [exp(-y/4) - 2 sum exp(y/4 - pi n^2 e^y)]
//!          = Omega(y) - (1/2) exp(-y/4)                       y >= 0
//! ```
//!
//! Convergence is super-exponential: at x >= 1 three terms reach binary64
//! precision. Truncation is adaptive against the geometric tail bound
//! `t_{N+1} / (1 - exp(-pi (2N+3) x))` and capped at [`MAX_SERIES_TERMS`]
//! to guard pathological tolerance requests; below x ~ 0.01 the cap keeps
//! the sum from reaching `series_tol` (all internal call sites have x >= 1).
//! Exponent arguments below the binary64 underflow threshold evaluate to
//! exactly zero rather than raising.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::Tolerances;

/// Hard cap on the truncation index of every series in this module.
pub const MAX_SERIES_TERMS: usize = 64;

const UNDERFLOW_EXP: f64 = -745.0;

fn ensure_positive(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("theta argument must be positive, got {x}")));
    }
    Ok(())
}

fn ensure_nonnegative(y: f64, what: &str) -> Result<()> {
    if !(y >= 0.0) {
        return Err(Error::domain(format!("{what} argument must be >= 0, got {y}")));
    }
    Ok(())
}

/// theta(x) = sum exp(-pi n^2 x), strictly decreasing and positive.
pub fn theta(x: f64, tol: &Tolerances) -> Result<f64> {
    ensure_positive(x)?;
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let term = (-PI * (n * n) as f64 * x).exp();
        sum += term;
        if term == 0.0 {
            break;
        }
        let np = n + 1;
        let next = (-PI * (np * np) as f64 * x).exp();
        let ratio = (-PI * (2 * np + 1) as f64 * x).exp();
        // Stop at half the requested bound so the one-more-term change
        // stays under series_tol even at the rounding edge.
        if ratio < 1.0 && next / (1.0 - ratio) < 0.5 * tol.series_tol * sum.max(tol.series_tol) {
            break;
        }
    }
    Ok(sum)
}

/// theta'(x) = -pi sum n^2 exp(-pi n^2 x), always negative.
pub fn theta_prime(x: f64, tol: &Tolerances) -> Result<f64> {
    ensure_positive(x)?;
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let nf = n as f64;
        let term = nf * nf * (-PI * nf * nf * x).exp();
        sum += term;
        if term == 0.0 {
            break;
        }
        let np = (n + 1) as f64;
        let next = np * np * (-PI * np * np * x).exp();
        let ratio = ((np + 1.0) / np).powi(2) * (-PI * (2.0 * np + 1.0) * x).exp();
        if ratio < 1.0 && next / (1.0 - ratio) < 0.5 * tol.series_tol * sum.max(tol.series_tol) {
            break;
        }
    }
    Ok(-PI * sum)
}

/// Omega(y) = exp(y/4) theta(exp(y)), the kernel of the cosine-transform
/// form of the completed zeta function before the Cauchy term is folded in.
///
/// Summed term-wise as exp(y/4 - pi n^2 e^y) so that deep underflow gives
/// exactly zero instead of an inf * 0 intermediate.
pub fn omega(y: f64, tol: &Tolerances) -> Result<f64> {
    ensure_nonnegative(y, "Omega")?;
    let ey = y.exp();
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let arg = 0.25 * y - PI * (n * n) as f64 * ey;
        if arg < UNDERFLOW_EXP {
            break;
        }
        let term = arg.exp();
        sum += term;
        let np = n + 1;
        let next_arg = 0.25 * y - PI * (np * np) as f64 * ey;
        let next = if next_arg < UNDERFLOW_EXP { 0.0 } else { next_arg.exp() };
        let ratio = (-PI * (2 * np + 1) as f64 * ey).exp();
        if ratio < 1.0 && next / (1.0 - ratio) < 0.5 * tol.series_tol * sum.max(tol.series_tol) {
            break;
        }
    }
    Ok(sum)
}

/// Phi(y) = Omega(y) - (1/2) exp(-y/4).
///
/// Strictly negative on [0, oo) with |Phi(y)| <= (1/2) exp(-y/4); this is
/// the kernel whose cosine transform is the completed zeta function itself.
pub fn phi(y: f64, tol: &Tolerances) -> Result<f64> {
    ensure_nonnegative(y, "Phi")?;
    Ok(omega(y, tol)? - 0.5 * (-0.25 * y).exp())
}
