//! Integral-defined special functions: complete elliptic integrals (parameter
//! convention, m <= 1) and the exponential integral Ei.

use std::f64::consts::FRAC_PI_2;

use super::SpecialValue;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;

/// Which integral to evaluate through [`misc_integrals`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralKind {
    /// Complete elliptic integral of the second kind, E(m).
    EllipticE,
    /// Exponential integral Ei(x).
    ExpIntegralEi,
}

/// E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt for m <= 1, by adaptive
/// quadrature of the defining integral.
pub fn elliptic_e(m: f64) -> Result<SpecialValue> {
    if !(m <= 1.0) {
        return Err(Error::Domain {
            op: "elliptic_e",
            msg: format!("E(m) needs m <= 1, got {m}"),
        });
    }
    let f = |t: f64| {
        let s = t.sin();
        (1.0 - m * s * s).sqrt()
    };
    let r = adaptive_simpson(&f, 0.0, FRAC_PI_2, 1e-12);
    Ok(SpecialValue {
        value: r.value,
        abs_err_est: (r.err_est + 1e-14 * r.value.abs()).max(1e-15),
    })
}

/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt for m < 1.
pub fn elliptic_k(m: f64) -> Result<SpecialValue> {
    if !(m < 1.0) {
        return Err(Error::Domain {
            op: "elliptic_k",
            msg: format!("K(m) needs m < 1, got {m}"),
        });
    }
    let f = |t: f64| {
        let s = t.sin();
        1.0 / (1.0 - m * s * s).sqrt()
    };
    let r = adaptive_simpson(&f, 0.0, FRAC_PI_2, 1e-12);
    Ok(SpecialValue {
        value: r.value,
        abs_err_est: (r.err_est + 1e-14 * r.value.abs()).max(1e-15),
    })
}

/// Ei(x) by the standard convergent series, |x| <= 50, x != 0.
pub fn exp_integral_ei(x: f64) -> Result<SpecialValue> {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if x == 0.0 || x.abs() > 50.0 {
        return Err(Error::Domain {
            op: "exp_integral_ei",
            msg: format!("Ei needs 0 < |x| <= 50, got {x}"),
        });
    }
    // Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k k!)
    let mut sum = 0.0f64;
    let mut term = 1.0f64;
    let mut peak = 0.0f64;
    for k in 1..400usize {
        term *= x / k as f64;
        let add = term / k as f64;
        sum += add;
        peak = peak.max(sum.abs());
        if add.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    let value = EULER_GAMMA + x.abs().ln() + sum;
    Ok(SpecialValue {
        value,
        abs_err_est: peak * 4e-16 + 1e-14 * value.abs(),
    })
}

/// Umbrella over the integral-defined functions, per kind.
pub fn misc_integrals(kind: IntegralKind, z: f64) -> Result<SpecialValue> {
    match kind {
        IntegralKind::EllipticE => elliptic_e(z),
        IntegralKind::ExpIntegralEi => exp_integral_ei(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn e_at_zero() {
        let r = elliptic_e(0.0).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn e_at_one() {
        // E(1) = 1 exactly
        let r = elliptic_e(1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn e_k_legendre_relation() {
        // Legendre: E(m) K(1-m) + E(1-m) K(m) - K(m) K(1-m) = pi/2
        let m = 0.3;
        let e1 = elliptic_e(m).unwrap().value;
        let e2 = elliptic_e(1.0 - m).unwrap().value;
        let k1 = elliptic_k(m).unwrap().value;
        let k2 = elliptic_k(1.0 - m).unwrap().value;
        assert!((e1 * k2 + e2 * k1 - k1 * k2 - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn ei_small_values() {
        // Ei(1) = 1.8951178163559368...
        let r = exp_integral_ei(1.0).unwrap();
        assert!((r.value - 1.8951178163559368).abs() < 1e-12);
        // Ei(-1) = -0.21938393439552026
        let r = exp_integral_ei(-1.0).unwrap();
        assert!((r.value + 0.21938393439552026).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(elliptic_e(1.5).is_err());
        assert!(exp_integral_ei(0.0).is_err());
    }
}
