//! Special functions appearing in the explicit barriers and the closed-form
//! solution catalog: Kummer M, Gauss 2F1, Bessel J/I/K and complete elliptic
//! integrals.
//!
//! Every evaluation returns a [`SpecialValue`] carrying an upper bound on the
//! truncation/roundoff error of the method used; the bounds are validated
//! against independent arbitrary-precision oracles in the test suite.

pub mod bessel;
pub(crate) mod dd;
pub mod gamma;
pub mod hyp;
pub mod integrals;

use num_complex::Complex64;

pub use bessel::{bessel, bessel_first_zero, BesselKind, BESSEL_Y_CAP};
pub use hyp::{hyp1f1, hyp1f1_deriv, hyp1f1_real, hyp2f1, HYP1F1_Z_CAP};
pub use integrals::{elliptic_e, elliptic_k, exp_integral_ei, misc_integrals, IntegralKind};

/// A real special-function value with a truncation-error bound.
#[derive(Debug, Clone, Copy)]
pub struct SpecialValue {
    pub value: f64,
    /// Upper bound on the absolute error of `value`.
    pub abs_err_est: f64,
}

/// A complex special-function value with a truncation-error bound.
#[derive(Debug, Clone, Copy)]
pub struct ComplexSpecialValue {
    pub value: Complex64,
    /// Upper bound on the absolute error of `value` (both components).
    pub abs_err_est: f64,
}
