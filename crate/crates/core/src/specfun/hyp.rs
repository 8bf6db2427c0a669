//! Confluent and Gauss hypergeometric functions.

use num_complex::Complex64;

use super::dd::{Cdd, Dd};
use super::gamma::gamma;
use super::{ComplexSpecialValue, SpecialValue};
use crate::error::{Error, Result};

/// Domain cap for the Kummer series. Inside this disc the double-double
/// series meets the 1e-10 budget; the barriers never need more.
pub const HYP1F1_Z_CAP: f64 = 50.0;

const MAX_TERMS: usize = 700;

fn is_nonpositive_int(b: Complex64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()
}

/// Kummer's function M(a; b; z) of complex arguments.
///
/// Taylor series in double-double arithmetic. The error estimate accounts for
/// the cancellation the alternating series suffers: roundoff scales with the
/// largest partial sum, which can be `e^{|z|}` times the result.
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<ComplexSpecialValue> {
    if is_nonpositive_int(b) {
        return Err(Error::Domain {
            op: "hyp1f1",
            msg: format!("b = {b} is a non-positive integer"),
        });
    }
    let za = z.norm();
    if za > HYP1F1_Z_CAP {
        return Err(Error::Domain {
            op: "hyp1f1",
            msg: format!("|z| = {za:.3} exceeds the supported cap {HYP1F1_Z_CAP}"),
        });
    }

    let ac = Cdd::new(a.re, a.im);
    let bc = Cdd::new(b.re, b.im);
    let zc = Cdd::new(z.re, z.im);

    let mut sum = Cdd::ONE;
    let mut term = Cdd::ONE;
    let mut peak = 1.0f64; // largest |partial sum| seen
    let mut converged = false;
    let mut last = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let num = ac.add(Cdd::new(nf, 0.0)).mul(zc);
        let den = bc.add(Cdd::new(nf, 0.0)).mul_f64(nf + 1.0);
        term = term.mul(num.div(den));
        sum = sum.add(term);
        peak = peak.max(sum.abs());
        let t = term.abs();
        // two consecutive tiny terms: safe to stop (terms decay monotonically
        // once n > |z| + |a|)
        if t < 1e-32 * sum.abs().max(1.0) && last < 1e-32 * sum.abs().max(1.0) {
            converged = true;
            break;
        }
        last = t;
    }
    let value = Complex64::new(sum.re.to_f64(), sum.im.to_f64());
    let mut err = peak * Dd::EPS * 8.0 + last.min(1.0);
    if !converged {
        err = err.max(last);
    }
    if err > 1e-10 * value.norm().max(1.0) {
        return Err(Error::Accuracy {
            op: "hyp1f1",
            est: err,
            want: 1e-10 * value.norm().max(1.0),
        });
    }
    Ok(ComplexSpecialValue {
        value,
        abs_err_est: err,
    })
}

/// M(a; b; z) restricted to real arguments.
pub fn hyp1f1_real(a: f64, b: f64, z: f64) -> Result<SpecialValue> {
    let r = hyp1f1(
        Complex64::new(a, 0.0),
        Complex64::new(b, 0.0),
        Complex64::new(z, 0.0),
    )?;
    Ok(SpecialValue {
        value: r.value.re,
        abs_err_est: r.abs_err_est,
    })
}

/// d/dz M(a; b; z) = (a/b) M(a+1; b+1; z).
pub fn hyp1f1_deriv(a: Complex64, b: Complex64, z: Complex64) -> Result<ComplexSpecialValue> {
    let m = hyp1f1(a + 1.0, b + 1.0, z)?;
    let f = a / b;
    Ok(ComplexSpecialValue {
        value: f * m.value,
        abs_err_est: m.abs_err_est * f.norm(),
    })
}

/// Plain series for 2F1 on |z| < 1; returns (value, error estimate).
fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    let mut sum = Dd::ONE;
    let mut term = Dd::ONE;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for n in 0..10_000usize {
        let nf = n as f64;
        let fac = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term = term.mul_f64(fac * z);
        sum = sum.add(term);
        let t = term.abs();
        if t < 1e-24 * sum.abs().max(1.0) && last < 1e-24 * sum.abs().max(1.0) {
            converged = true;
            break;
        }
        last = t;
    }
    if !converged {
        return Err(Error::Accuracy {
            op: "hyp2f1",
            est: last,
            want: 1e-10,
        });
    }
    Ok((sum.to_f64(), 1e-13 * sum.abs().max(1.0) + last))
}

/// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0.
///
/// Only the left half-line is supported (the catalog needs argument
/// `-x^2/y^2`). For z in [-8, 0] the Pfaff transformation
/// `2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))` maps onto a series
/// with ratio <= 8/9; for z < -8 the 1/z connection formula is used, which
/// requires a - b non-integer.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<SpecialValue> {
    if z > 0.0 {
        return Err(Error::Domain {
            op: "hyp2f1",
            msg: format!("z = {z} > 0 unsupported (need z <= 0)"),
        });
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::Domain {
            op: "hyp2f1",
            msg: format!("c = {c} is a non-positive integer"),
        });
    }
    if z >= -8.0 {
        let w = z / (z - 1.0); // in [0, 8/9]
        let (s, e) = hyp2f1_series(a, c - b, c, w)?;
        let p = (1.0 - z).powf(-a);
        return Ok(SpecialValue {
            value: p * s,
            abs_err_est: p * e + 1e-14 * (p * s).abs(),
        });
    }
    // 1/z connection (DLMF 15.8.2 specialised to z < 0, where all the
    // intermediate quantities are real)
    let amb = a - b;
    if (amb - amb.round()).abs() < 1e-8 {
        return Err(Error::Domain {
            op: "hyp2f1",
            msg: format!("a - b = {amb} too close to an integer for the 1/z path"),
        });
    }
    let zi = 1.0 / z; // in (-1/8, 0)
    let (s1, e1) = hyp2f1_series(a, a - c + 1.0, a - b + 1.0, zi)?;
    let (s2, e2) = hyp2f1_series(b, b - c + 1.0, b - a + 1.0, zi)?;
    let k1 = gamma(c) * gamma(b - a) / (gamma(b) * gamma(c - a)) * (-z).powf(-a);
    let k2 = gamma(c) * gamma(a - b) / (gamma(a) * gamma(c - b)) * (-z).powf(-b);
    let value = k1 * s1 + k2 * s2;
    Ok(SpecialValue {
        value,
        abs_err_est: k1.abs() * e1 + k2.abs() * e2 + 1e-13 * value.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn m_at_zero_is_one() {
        for a in [-3.0, 0.4, 17.0] {
            let r = hyp1f1_real(a, 1.0, 0.0).unwrap();
            assert_eq!(r.value, 1.0);
        }
    }

    #[test]
    fn m_exponential_special_case() {
        // M(a; a; z) = e^z
        let r = hyp1f1_real(2.5, 2.5, 3.0).unwrap();
        assert!((r.value - 3.0f64.exp()).abs() < 1e-11);
    }

    #[test]
    fn m_rejects_bad_b() {
        assert!(hyp1f1_real(1.0, 0.0, 1.0).is_err());
        assert!(hyp1f1_real(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn m_kummer_transformation() {
        // M(a;b;z) = e^z M(b-a; b; -z), a sharp cancellation test
        for &z in &[5.0, 20.0, 40.0] {
            let lhs = hyp1f1_real(0.3, 1.7, z).unwrap().value;
            let rhs = z.exp() * hyp1f1_real(1.4, 1.7, -z).unwrap().value;
            assert!(
                (lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0),
                "z = {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn contiguous_relation_complex() {
        // (b-a) M(a-1;b;z) + (2a-b+z) M(a;b;z) - a M(a+1;b;z) = 0
        let probes = [
            (Complex64::new(0.5, 1.5), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)),
            (Complex64::new(2.0, -3.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 10.0)),
            (Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 30.0)),
        ];
        for (a, b, z) in probes {
            let m0 = hyp1f1(a - 1.0, b, z).unwrap().value;
            let m1 = hyp1f1(a, b, z).unwrap().value;
            let m2 = hyp1f1(a + 1.0, b, z).unwrap().value;
            let r = (b - a) * m0 + (2.0 * a - b + z) * m1 - a * m2;
            let scale = m1.norm().max(1.0);
            assert!(r.norm() < 1e-8 * scale, "residual {} at a={a} z={z}", r.norm());
        }
    }

    #[test]
    fn f21_trivialities() {
        let r = hyp2f1(0.5, 1.0, 1.5, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(hyp2f1(0.5, 1.0, 1.5, 0.5).is_err());
    }

    #[test]
    fn f21_arctan_identity() {
        // z * 2F1(1/2, 1; 3/2; -z^2) = arctan(z)
        for &z in &[0.3, 1.0, 2.0, 7.0] {
            let f = hyp2f1(0.5, 1.0, 1.5, -z * z).unwrap();
            assert!(
                (z * f.value - z.atan()).abs() < 1e-10,
                "z = {z}: {} vs {}",
                z * f.value,
                z.atan()
            );
        }
        // and its limit pi/2 far out on the transformed branch
        let z = 2000.0;
        let f = hyp2f1(0.5, 1.0, 1.5, -z * z).unwrap();
        assert!((z * f.value - PI / 2.0).abs() < 1e-3);
    }

    #[test]
    fn f21_pfaff_vs_inverse_agree_at_seam() {
        // both paths are valid near z = -8; they must agree
        for &z in &[-7.9, -8.05] {
            let direct = {
                let w = z / (z - 1.0);
                let (s, _) = hyp2f1_series(0.5, 1.5 - 0.75, 1.5, w).unwrap();
                (1.0 - z).powf(-0.5) * s
            };
            let full = hyp2f1(0.5, 0.75, 1.5, z).unwrap().value;
            assert!((direct - full).abs() < 1e-11, "z = {z}");
        }
    }
}
