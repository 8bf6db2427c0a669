//! Adaptive quadrature used by the impulse kernels, the solution catalog and
//! the integral-defined special functions.

/// Result of a quadrature: value and an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub evals: usize,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

struct AdaptState<'a> {
    f: &'a dyn Fn(f64) -> f64,
    tol: f64,
    evals: usize,
    err: f64,
    max_depth: u32,
}

fn adapt(st: &mut AdaptState, a: f64, fa: f64, m: f64, fm: f64, b: f64, fb: f64, whole: f64, depth: u32) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (st.f)(lm);
    let frm = (st.f)(rm);
    st.evals += 2;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth >= st.max_depth || delta.abs() <= 15.0 * st.tol {
        st.err += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    let half_tol = st.tol / 2.0;
    let saved = st.tol;
    st.tol = half_tol;
    let l = adapt(st, a, fa, lm, flm, m, fm, left, depth + 1);
    let r = adapt(st, m, fm, rm, frm, b, fb, right, depth + 1);
    st.tol = saved;
    l + r
}

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadResult {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    let mut st = AdaptState {
        f,
        tol,
        evals: 3,
        err: 0.0,
        max_depth: 48,
    };
    let value = adapt(&mut st, a, fa, m, fm, b, fb, whole, 0);
    QuadResult {
        value,
        err_est: st.err + 1e-15 * value.abs(),
        evals: st.evals,
    }
}

/// Adaptive Simpson over a union of panels; panel boundaries let the caller
/// pre-split around peaks or scale changes.
pub fn adaptive_simpson_panels(f: &dyn Fn(f64) -> f64, knots: &[f64], tol: f64) -> QuadResult {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for w in knots.windows(2) {
        let r = adaptive_simpson(f, w[0], w[1], tol / (knots.len() - 1) as f64);
        value += r.value;
        err += r.err_est;
        evals += r.evals;
    }
    QuadResult {
        value,
        err_est: err,
        evals,
    }
}

/// Fixed 8-point Gauss-Legendre rule on [a, b]; exact for degree 15, used
/// as the workhorse for composite far-field sums where adaptivity would
/// thrash on oscillatory factors.
pub fn gauss8(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: [f64; 4] = [
        0.183_434_642_495_649_8,
        0.525_532_409_916_328_99,
        0.796_666_477_413_626_74,
        0.960_289_856_497_536_23,
    ];
    const W: [f64; 4] = [
        0.362_683_783_378_361_98,
        0.313_706_645_877_887_29,
        0.222_381_034_453_374_47,
        0.101_228_536_290_376_26,
    ];
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for k in 0..4 {
        s += W[k] * (f(c + h * X[k]) + f(c - h * X[k]));
    }
    s * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_smooth() {
        let r = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((r.value - 2.0).abs() < 1e-11);
    }

    #[test]
    fn gauss8_is_sharp_on_smooth() {
        let v = gauss8(&|x: f64| x.cos(), 0.0, 0.5);
        assert!((v - 0.5f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn integrates_peaked_with_panels() {
        // a narrow Lorentzian: int 1/(1+(10x)^2) dx over [-50, 50] = arctan(500)/5
        let f = |x: f64| 1.0 / (1.0 + (10.0 * x) * (10.0 * x));
        let r = adaptive_simpson_panels(&f, &[-50.0, -1.0, 1.0, 50.0], 1e-12);
        let want = 2.0 * (500.0f64).atan() / 10.0;
        assert!((r.value - want).abs() < 1e-10, "{} vs {want}", r.value);
    }
}
