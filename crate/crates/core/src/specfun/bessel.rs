//! Bessel functions J, I, K of real non-negative order, and the first
//! positive zero of J.

use std::f64::consts::PI;

use super::dd::Dd;
use super::gamma::{digamma_int, gamma, sinpi};
use super::SpecialValue;
use crate::error::{Error, Result};

/// Which Bessel function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    I,
    K,
}

/// Argument cap; the catalog and barriers stay far inside it.
pub const BESSEL_Y_CAP: f64 = 100.0;

const SERIES_J_CAP: f64 = 40.0; // dd series below, Hankel asymptotics above
const SERIES_K_CAP: f64 = 6.0; // I-difference / log series below
const ASYMPT_K_FLOOR: f64 = 15.0; // asymptotic expansion above; integral between

/// J_nu(y) power series in double-double, for y <= SERIES_J_CAP.
fn bessel_j_series(nu: f64, y: f64) -> SpecialValue {
    if y == 0.0 {
        return SpecialValue {
            value: if nu == 0.0 { 1.0 } else { 0.0 },
            abs_err_est: 0.0,
        };
    }
    // q = y^2/4 exactly in dd; the term update must stay in dd arithmetic,
    // otherwise f64 rounding of the ratio poisons the large cancelling terms
    let qd = Dd::from_f64(y).mul(Dd::from_f64(y)).mul_f64(0.25);
    let nu_d = Dd::from_f64(nu);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut peak = 1.0f64;
    for k in 0..400usize {
        let kf = k as f64;
        let den = Dd::from_f64(kf + 1.0).mul(nu_d.add(Dd::from_f64(kf + 1.0)));
        term = term.mul(qd).div(den).neg();
        sum = sum.add(term);
        peak = peak.max(sum.abs());
        if term.abs() < 1e-31 * sum.abs().max(1.0) {
            break;
        }
    }
    let pref = (0.5 * y).powf(nu) / gamma(nu + 1.0);
    let value = pref * sum.to_f64();
    let err = pref * (peak * Dd::EPS * 4.0) + 3e-15 * value.abs() + 1e-300;
    SpecialValue {
        value,
        abs_err_est: err,
    }
}

/// I_mu(y) power series; all terms positive, so plain f64 suffices.
/// Valid for any mu > -1 or non-integer mu < -1 (gamma handles the poles of
/// the prefactor via reflection). Used both directly and inside K, and by
/// the barrier constructions which need orders in (-1, 0).
pub(crate) fn bessel_i_series(mu: f64, y: f64) -> SpecialValue {
    if y == 0.0 {
        return SpecialValue {
            value: if mu == 0.0 { 1.0 } else { 0.0 },
            abs_err_est: 0.0,
        };
    }
    let q = 0.25 * y * y;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..600usize {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (mu + kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    let pref = (0.5 * y).powf(mu) / gamma(mu + 1.0);
    let value = pref * sum;
    SpecialValue {
        value,
        abs_err_est: 1e-14 * value.abs() + 1e-300,
    }
}

/// Hankel asymptotic expansion of J_nu for large y.
fn bessel_j_asymptotic(nu: f64, y: f64) -> SpecialValue {
    let mu = 4.0 * nu * nu;
    let chi = y - (0.5 * nu + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut c = 1.0f64; // c_m = prod (mu - (2j-1)^2) / (m! (8y)^m)
    let mut m = 0usize;
    #[allow(unused_assignments)]
    let mut trunc = f64::INFINITY;
    loop {
        let mf = m as f64;
        let c_next = c * (mu - (2.0 * mf + 1.0) * (2.0 * mf + 1.0)) / ((mf + 1.0) * 8.0 * y);
        if c_next.abs() >= c.abs() && m > 2 {
            trunc = c_next.abs();
            break;
        }
        c = c_next;
        m += 1;
        match m % 4 {
            0 => p += c,
            1 => q += c,
            2 => p -= c,
            _ => q -= c,
        }
        if c.abs() < 1e-18 {
            trunc = c.abs();
            break;
        }
        if m > 60 {
            trunc = c.abs();
            break;
        }
    }
    let amp = (2.0 / (PI * y)).sqrt();
    let value = amp * (chi.cos() * p - chi.sin() * q);
    SpecialValue {
        value,
        abs_err_est: amp * trunc + 1e-14 * amp + y * 2e-16 * amp,
    }
}

/// Asymptotic expansion of K_nu for large y (all terms, no oscillation).
fn bessel_k_asymptotic(nu: f64, y: f64) -> SpecialValue {
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0f64;
    let mut c = 1.0f64;
    let mut trunc = f64::INFINITY;
    for m in 0..60usize {
        let mf = m as f64;
        let c_next = c * (mu - (2.0 * mf + 1.0) * (2.0 * mf + 1.0)) / ((mf + 1.0) * 8.0 * y);
        if c_next.abs() >= c.abs() && m > 2 {
            trunc = c_next.abs();
            break;
        }
        c = c_next;
        sum += c;
        if c.abs() < 1e-18 * sum.abs() {
            trunc = c.abs();
            break;
        }
    }
    let amp = (PI / (2.0 * y)).sqrt() * (-y).exp();
    SpecialValue {
        value: amp * sum,
        abs_err_est: amp * (trunc + 1e-15 * sum.abs()),
    }
}

/// K_n(y) for integer n >= 0 and moderate y, by the logarithmic series
/// (DLMF 10.31.2).
fn bessel_k_int_series(n: usize, y: f64) -> SpecialValue {
    let h = 0.5 * y;
    let q = h * h;
    // finite sum: (1/2) (y/2)^{-n} sum_{k=0}^{n-1} (n-k-1)!/k! (-q)^k
    let mut finite = 0.0f64;
    if n > 0 {
        let mut fact_nk = gamma(n as f64); // (n-1)!
        let mut kfact = 1.0;
        let mut qpow = 1.0;
        for k in 0..n {
            finite += fact_nk / kfact * qpow;
            qpow *= -q;
            if k + 1 < n {
                fact_nk /= (n - 1 - k) as f64; // (n-k-2)! next
            }
            kfact *= (k + 1) as f64;
        }
        finite *= 0.5 * h.powi(-(n as i32));
    }
    // log term
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let log_term = -sign * h.ln() * bessel_i_series(n as f64, y).value;
    // psi series
    let mut psi_sum = 0.0f64;
    let mut term = h.powi(n as i32) * 0.5 / gamma(n as f64 + 1.0); // k = 0 term base (y/2)^n /(0! n!) * 1/2
    for k in 0..200usize {
        let psi = digamma_int(k + 1) + digamma_int(n + k + 1);
        psi_sum += term * psi;
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (n as f64 + kf + 1.0));
        if term.abs() * 20.0 < 1e-17 * psi_sum.abs().max(1e-30) {
            break;
        }
    }
    let value = finite + log_term + sign * psi_sum;
    SpecialValue {
        value,
        abs_err_est: 1e-13 * (finite.abs() + log_term.abs() + psi_sum.abs()) + 1e-300,
    }
}

/// K_nu(y) for non-integer nu via the I-difference formula, computed in
/// double-double to survive the near-integer cancellation. The f64
/// prefactors limit this to small y, where e^{2y} amplification is mild.
fn bessel_k_noninteger(nu: f64, y: f64) -> SpecialValue {
    let qd = Dd::from_f64(y).mul(Dd::from_f64(y)).mul_f64(0.25);
    let sum_dd = |mu: f64| -> (Dd, f64) {
        let mu_d = Dd::from_f64(mu);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 0..400usize {
            let kf = k as f64;
            let den = Dd::from_f64(kf + 1.0).mul(mu_d.add(Dd::from_f64(kf + 1.0)));
            term = term.mul(qd).div(den);
            sum = sum.add(term);
            if term.abs() < 1e-31 * sum.abs().max(1.0) {
                break;
            }
        }
        let pref = (0.5 * y).powf(mu) / gamma(mu + 1.0);
        (sum.mul_f64(pref), pref.abs() * sum.abs() * 2e-15)
    };
    let (ineg, eneg) = sum_dd(-nu);
    let (ipos, epos) = sum_dd(nu);
    let s = sinpi(nu);
    let diff = ineg.sub(ipos);
    let value = 0.5 * PI * diff.to_f64() / s;
    let err = 0.5 * PI / s.abs() * (eneg + epos + diff.abs() * 1e-15);
    SpecialValue {
        value,
        abs_err_est: err,
    }
}

/// K_nu(y) on the middle range via the integral representation
/// `K_nu(y) = int_0^inf e^{-y cosh t} cosh(nu t) dt`, where neither the
/// series (cancellation) nor the asymptotic expansion (divergence) can
/// certify 1e-10.
fn bessel_k_integral(nu: f64, y: f64) -> SpecialValue {
    use crate::quad::adaptive_simpson;
    // e^{-y cosh T} * cosh(nu T) < 1e-22 cutoff
    let mut t_max: f64 = 2.0;
    while y * t_max.cosh() - nu * t_max < 50.0 {
        t_max += 0.5;
    }
    let f = |t: f64| (-y * t.cosh()).exp() * (nu * t).cosh();
    let r = adaptive_simpson(&f, 0.0, t_max, 1e-16);
    SpecialValue {
        value: r.value,
        abs_err_est: r.err_est + 1e-13 * r.value.abs() + 1e-22,
    }
}

/// Evaluate J, I or K of order `nu >= 0` at `y`.
///
/// J and I accept y = 0; K requires y > 0. Arguments beyond
/// [`BESSEL_Y_CAP`] are rejected rather than extrapolated.
pub fn bessel(kind: BesselKind, nu: f64, y: f64) -> Result<SpecialValue> {
    if !(nu >= 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            op: "bessel",
            msg: format!("need nu >= 0 and finite y (got nu = {nu}, y = {y})"),
        });
    }
    if y > BESSEL_Y_CAP {
        return Err(Error::Domain {
            op: "bessel",
            msg: format!("y = {y} exceeds the supported cap {BESSEL_Y_CAP}"),
        });
    }
    let y_le_zero = y <= 0.0;
    match kind {
        BesselKind::J => {
            if y < 0.0 {
                return Err(Error::Domain {
                    op: "bessel",
                    msg: "J needs y >= 0".into(),
                });
            }
            Ok(if y <= SERIES_J_CAP {
                bessel_j_series(nu, y)
            } else {
                bessel_j_asymptotic(nu, y)
            })
        }
        BesselKind::I => {
            if y < 0.0 {
                return Err(Error::Domain {
                    op: "bessel",
                    msg: "I needs y >= 0".into(),
                });
            }
            Ok(bessel_i_series(nu, y))
        }
        BesselKind::K => {
            if y_le_zero {
                return Err(Error::Domain {
                    op: "bessel",
                    msg: "K needs y > 0".into(),
                });
            }
            if y >= ASYMPT_K_FLOOR {
                return Ok(bessel_k_asymptotic(nu, y));
            }
            if y > SERIES_K_CAP {
                return Ok(bessel_k_integral(nu, y));
            }
            let n = nu.round();
            if (nu - n).abs() < 1e-9 && n >= 0.0 {
                Ok(bessel_k_int_series(n as usize, y))
            } else {
                Ok(bessel_k_noninteger(nu, y))
            }
        }
    }
}

/// First positive zero of J_nu, located by bracketing and bisection.
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::Domain {
            op: "bessel_first_zero",
            msg: format!("need nu >= 0, got {nu}"),
        });
    }
    let j = |y: f64| bessel(BesselKind::J, nu, y).map(|s| s.value);
    // J_nu > 0 on (0, j_{nu,1}) and j_{nu,1} > nu, so scan upward from nu.
    let mut a = (nu).max(1e-3);
    let mut fa = j(a)?;
    if fa <= 0.0 {
        // can only happen from rounding at a ~ nu; nudge right
        a = nu + 1e-6;
        fa = j(a)?;
    }
    let step = 0.1 * (1.0 + nu.powf(1.0 / 3.0));
    let mut b = a;
    let mut found = false;
    for _ in 0..2000 {
        b += step;
        if b > BESSEL_Y_CAP {
            break;
        }
        let fb = j(b)?;
        if fb <= 0.0 {
            found = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if !found {
        return Err(Error::RootFinding {
            op: "bessel_first_zero",
            msg: format!("no sign change located for nu = {nu}"),
        });
    }
    let mut lo = a;
    let mut hi = b;
    let mut flo = fa;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-13 * mid.max(1.0) {
            break;
        }
        let fm = j(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i0_at_zero() {
        let r = bessel(BesselKind::I, 0.0, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn j_half_closed_form() {
        // J_{1/2}(y) = sqrt(2/(pi y)) sin(y)
        for &y in &[0.3, 1.0, PI, 10.0, 35.0, 60.0] {
            let want = (2.0 / (PI * y)).sqrt() * y.sin();
            let got = bessel(BesselKind::J, 0.5, y).unwrap();
            assert!(
                (got.value - want).abs() < 2e-11,
                "y = {y}: {} vs {want}",
                got.value
            );
        }
        let at_pi = bessel(BesselKind::J, 0.5, PI).unwrap();
        assert!(at_pi.value.abs() < 1e-10);
    }

    #[test]
    fn i_half_closed_form() {
        // I_{1/2}(y) = sqrt(2/(pi y)) sinh(y)
        for &y in &[0.5, 2.0, 10.0, 80.0] {
            let want = (2.0 / (PI * y)).sqrt() * y.sinh();
            let got = bessel(BesselKind::I, 0.5, y).unwrap();
            assert!(
                (got.value - want).abs() < 1e-12 * want.abs(),
                "y = {y}: rel {}",
                (got.value - want).abs() / want
            );
        }
    }

    #[test]
    fn k_half_closed_form() {
        // K_{1/2}(y) = sqrt(pi/(2y)) e^{-y}
        for &y in &[0.2, 1.0, 5.0, 14.0, 30.0] {
            let want = (PI / (2.0 * y)).sqrt() * (-y).exp();
            let got = bessel(BesselKind::K, 0.5, y).unwrap();
            assert!(
                (got.value - want).abs() < 1e-11 * want.max(1.0),
                "y = {y}: {} vs {want}",
                got.value
            );
        }
    }

    #[test]
    fn k_integer_orders_match_wronskian() {
        // I_n(y) K_{n+1}(y) + I_{n+1}(y) K_n(y) = 1/y
        for n in 0..4usize {
            for &y in &[0.4, 1.0, 3.0, 9.0, 20.0] {
                let i0 = bessel(BesselKind::I, n as f64, y).unwrap().value;
                let i1 = bessel(BesselKind::I, n as f64 + 1.0, y).unwrap().value;
                let k0 = bessel(BesselKind::K, n as f64, y).unwrap().value;
                let k1 = bessel(BesselKind::K, n as f64 + 1.0, y).unwrap().value;
                let w = i0 * k1 + i1 * k0;
                assert!(
                    (w - 1.0 / y).abs() < 1e-10 / y,
                    "n = {n}, y = {y}: {w} vs {}",
                    1.0 / y
                );
            }
        }
    }

    #[test]
    fn k_noninteger_wronskian() {
        for &nu in &[0.125, 0.25, 0.875, 2.3] {
            for &y in &[0.5, 1.0, 4.0, 12.0] {
                let i0 = bessel(BesselKind::I, nu, y).unwrap().value;
                let i1 = bessel(BesselKind::I, nu + 1.0, y).unwrap().value;
                let k0 = bessel(BesselKind::K, nu, y).unwrap().value;
                let k1 = bessel(BesselKind::K, nu + 1.0, y).unwrap().value;
                let w = i0 * k1 + i1 * k0;
                assert!(
                    (w - 1.0 / y).abs() < 1e-9 / y,
                    "nu = {nu}, y = {y}: {w} vs {}",
                    1.0 / y
                );
            }
        }
    }

    #[test]
    fn j_recurrence_across_asymptotic_seam() {
        // J_{nu-1} + J_{nu+1} = (2 nu / y) J_nu on both sides of y = 40
        for &nu in &[1.0, 2.5] {
            for &y in &[39.0, 41.0, 70.0] {
                let jm = bessel(BesselKind::J, nu - 1.0, y).unwrap().value;
                let j0 = bessel(BesselKind::J, nu, y).unwrap().value;
                let jp = bessel(BesselKind::J, nu + 1.0, y).unwrap().value;
                assert!(
                    (jm + jp - 2.0 * nu / y * j0).abs() < 1e-10,
                    "nu = {nu}, y = {y}"
                );
            }
        }
    }

    #[test]
    fn first_zeros() {
        assert!((bessel_first_zero(0.5).unwrap() - PI).abs() < 1e-10);
        assert!((bessel_first_zero(0.0).unwrap() - 2.404825557695773).abs() < 1e-9);
        assert!((bessel_first_zero(1.0).unwrap() - 3.831705970207512).abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel(BesselKind::K, 0.5, 0.0).is_err());
        assert!(bessel(BesselKind::J, -1.0, 1.0).is_err());
        assert!(bessel(BesselKind::J, 1.0, 101.0).is_err());
    }
}
