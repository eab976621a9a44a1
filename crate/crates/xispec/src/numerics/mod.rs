//! Shared numerical engine: adaptive quadrature on decaying integrands,
//! sign-change bracketing with bisection refinement, and the complex
//! log-gamma function.
//!
//! Everything here is a pure function of its inputs and safe to call from
//! any number of threads.

mod gamma;
mod quadrature;
mod roots;

pub use gamma::log_gamma_complex;
pub use quadrature::{integrate_decaying, integrate_finite, QuadResult, QuadValue};
pub use roots::{bisect, find_sign_changes, Bracket};

use crate::error::{Error, Result};

/// Numerical tolerances governing series truncation, quadrature and
/// root refinement.
///
/// All fields must be strictly positive. The defaults are tight enough for
/// every evaluation this crate performs at binary64 precision; loosening
/// them trades accuracy for speed, tightening them much further runs into
/// the rounding floor of `f64` arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative bound on the truncated tail of a series.
    pub series_tol: f64,
    /// Absolute quadrature error target.
    pub quad_abs_tol: f64,
    /// Relative quadrature error target.
    pub quad_rel_tol: f64,
    /// Bisection half-width target.
    pub root_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            series_tol: 1e-15,
            quad_abs_tol: 1e-13,
            quad_rel_tol: 1e-12,
            root_tol: 1e-9,
        }
    }
}

impl Tolerances {
    /// Check the positivity invariant, returning `self` on success.
    pub fn validated(self) -> Result<Self> {
        let fields = [
            ("series_tol", self.series_tol),
            ("quad_abs_tol", self.quad_abs_tol),
            ("quad_rel_tol", self.quad_rel_tol),
            ("root_tol", self.root_tol),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(self)
    }
}
