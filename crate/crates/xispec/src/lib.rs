//! Numerical toolkit for the completed Riemann zeta function
//! `Xi(s) = pi^(-s/2) Gamma(s/2) zeta(s)` and its reading as the Fourier
//! transform of a bound-state wave function.
//!
//! The chain of objects, each with its own module:
//!
//! * [`theta`]: the theta series `sum exp(-pi n^2 x)` and the kernels
//!   `Omega` and `Phi` built from it.
//! * [`xi`]: `Xi` evaluated three independent ways (classical integral,
//!   `Omega`-kernel transform, `Phi`-kernel transform), plus recovery of
//!   `zeta` itself.
//! * [`wavefunction`]: the even, positive, normalizable function `R(x)`
//!   whose Fourier transform is `-Xi/2` after rescaling; ground state of
//!   an explicit potential well with eigenvalue -1.
//! * [`spectral`]: spectral densities `rho(K) >= 0` over complex wave
//!   vectors `K = k - i lambda`, zero location on the real axis, and
//!   strip positivity scans (the zeros of `rho_R` off the real axis, if
//!   any existed, would be nontrivial zeta zeros off the critical line).
//! * [`well`]: the infinite-well reference model with its closed-form
//!   density and parity-restricted forbidden states.
//! * [`stochastic`]: the autocorrelation `tau(t) = R(t/t0)/R(0)` and a
//!   Bochner-positivity probe of its spectrum.
//! * [`numerics`]: the shared engine: adaptive Gauss–Kronrod quadrature,
//!   sign-change bracketing, bisection, complex log-gamma.
//!
//! Everything is plain binary64; the practical ceiling for critical-line
//! work is `t <~ 35`, where `|Xi(t, 0)| ~ exp(-pi t/4)` sinks below
//! quadrature noise.
//!
//! ```
//! use xispec::{Tolerances, xi::{xi_direct, CriticalPoint}};
//!
//! let tol = Tolerances::default();
//! let xi = xi_direct(&CriticalPoint::new(0.0, 0.0), &tol).unwrap();
//! assert!((xi.re + 3.976966225506513).abs() < 1e-10);
//! ```

// Negated float comparisons like `!(x > 0.0)` are deliberate throughout:
// they reject NaN along with the out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod numerics;
pub mod spectral;
pub mod stochastic;
pub mod theta;
pub mod wavefunction;
pub mod well;
pub mod xi;

mod error;

pub use error::{Error, Result};
pub use numerics::Tolerances;

// The guide chapters double as doc-tests so their code stays honest.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(numerics, "../../../book/src/numerics.md");
    chapter!(theta_and_kernels, "../../../book/src/theta-and-kernels.md");
    chapter!(completed_zeta, "../../../book/src/completed-zeta.md");
    chapter!(wave_function, "../../../book/src/wave-function.md");
    chapter!(spectral_density, "../../../book/src/spectral-density.md");
    chapter!(infinite_well, "../../../book/src/infinite-well.md");
    chapter!(autocorrelation, "../../../book/src/autocorrelation.md");
    chapter!(cli, "../../../book/src/cli.md");
}
