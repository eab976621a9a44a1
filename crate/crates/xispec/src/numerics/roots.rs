//! Sign-change bracketing and bisection refinement.

use super::Tolerances;
use crate::error::{Error, Result};

/// An interval `[lo, hi]` whose endpoint values have opposite signs.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// True when `lo < hi`, the endpoint values are finite and the sign
    /// change invariant `f_lo * f_hi < 0` holds.
    pub fn is_valid(&self) -> bool {
        self.lo < self.hi
            && self.lo.is_finite()
            && self.hi.is_finite()
            && self.f_lo.is_finite()
            && self.f_hi.is_finite()
            && self.f_lo * self.f_hi < 0.0
    }
}

/// Scan `[lo, hi]` with the given step and return every consecutive sample
/// pair with opposite signs, in ascending order.
///
/// Pairs of roots closer together than `step` are missed. A sample that
/// lands exactly on a root is handled by probing half a step to either
/// side; if the function merely touches zero there without crossing, no
/// bracket is reported.
pub fn find_sign_changes<F>(mut f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(Error::domain(format!(
            "scan range must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::domain(format!("step must be strictly positive, got {step}")));
    }

    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { abscissa: x });
        }
        Ok(v)
    };

    let mut xs = Vec::new();
    let mut x = lo;
    while x < hi - 0.5 * step * f64::EPSILON {
        xs.push(x);
        x += step;
    }
    xs.push(hi);

    let values: Vec<f64> = {
        let mut vs = Vec::with_capacity(xs.len());
        for &x in &xs {
            vs.push(eval(x)?);
        }
        vs
    };

    let mut brackets = Vec::new();
    for i in 0..xs.len() {
        if values[i] == 0.0 && i > 0 && i + 1 < xs.len() {
            // Exact zero at an interior sample: bracket it between
            // half-step probes.
            let a = (xs[i] - 0.5 * step).max(lo);
            let b = (xs[i] + 0.5 * step).min(hi);
            let fa = eval(a)?;
            let fb = eval(b)?;
            if fa * fb < 0.0 {
                brackets.push(Bracket {
                    lo: a,
                    hi: b,
                    f_lo: fa,
                    f_hi: fb,
                });
            }
        }
        if i + 1 < xs.len() && values[i] * values[i + 1] < 0.0 {
            brackets.push(Bracket {
                lo: xs[i],
                hi: xs[i + 1],
                f_lo: values[i],
                f_hi: values[i + 1],
            });
        }
    }
    Ok(brackets)
}

/// Refine a bracket by bisection until its width is at most `2 * root_tol`,
/// returning the midpoint of the final interval.
pub fn bisect<F>(mut f: F, bracket: Bracket, tol: &Tolerances) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !bracket.is_valid() {
        return Err(Error::domain(format!(
            "invalid bracket [{}, {}] with f = ({}, {})",
            bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
        )));
    }
    let mut lo = bracket.lo;
    let mut hi = bracket.hi;
    let mut f_lo = bracket.f_lo;

    for _ in 0..200 {
        if hi - lo <= 2.0 * tol.root_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let fm = f(mid)?;
        if !fm.is_finite() {
            return Err(Error::NonFinite { abscissa: mid });
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if f_lo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn brackets_around_unit_roots() {
        // x^2 - 1 on [-2, 2] with step 0.5; the sample at x = -1 and x = 1
        // hits the roots exactly.
        let b = find_sign_changes(|x| Ok(x * x - 1.0), -2.0, 2.0, 0.5).unwrap();
        assert_eq!(b.len(), 2, "expected two brackets, got {b:?}");
        assert!(b[0].lo <= -1.0 && -1.0 <= b[0].hi);
        assert!(b[1].lo <= 1.0 && 1.0 <= b[1].hi);
    }

    #[test]
    fn no_brackets_for_positive_function() {
        let b = find_sign_changes(|x| Ok(1.0 + x * x), 0.0, 5.0, 0.25).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn touching_zero_without_crossing_is_skipped() {
        // x^2 touches zero at a sample point but never changes sign.
        let b = find_sign_changes(|x| Ok(x * x), -1.0, 1.0, 0.5).unwrap();
        assert!(b.is_empty(), "got {b:?}");
    }

    #[test]
    fn non_finite_sample_reports_abscissa() {
        let e = find_sign_changes(|x| Ok(if x == 1.0 { f64::INFINITY } else { x }), 0.0, 2.0, 1.0)
            .unwrap_err();
        match e {
            Error::NonFinite { abscissa } => assert_eq!(abscissa, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bisect_linear() {
        let b = Bracket {
            lo: 0.0,
            hi: 4.0,
            f_lo: -2.0,
            f_hi: 2.0,
        };
        let r = bisect(|x| Ok(x - 2.0), b, &tol()).unwrap();
        assert!((r - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn bisect_cosine_half_pi() {
        let b = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: 1.0f64.cos(),
            f_hi: 2.0f64.cos(),
        };
        let r = bisect(|x| Ok(x.cos()), b, &tol()).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() <= 1e-9);
    }

    #[test]
    fn bisect_rejects_invalid_bracket() {
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert!(matches!(bisect(Ok, b, &tol()), Err(Error::Domain(_))));
    }

    #[test]
    fn bisect_result_stays_in_bracket_and_descends() {
        let b = Bracket {
            lo: 0.5,
            hi: 1.5,
            f_lo: (0.5f64).sin() - 0.9,
            f_hi: (1.5f64).sin() - 0.9,
        };
        let f = |x: f64| Ok(x.sin() - 0.9);
        let r = bisect(f, b, &tol()).unwrap();
        assert!(r >= b.lo && r <= b.hi);
        let fr = (r.sin() - 0.9).abs();
        assert!(fr <= b.f_lo.abs() && fr <= b.f_hi.abs());
    }
}
