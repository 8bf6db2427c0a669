//! Comparison functions with certified differential-inequality sign: the
//! Harnack lower barrier, the x-decay barrier and its hypergeometric profile,
//! the cosh-profile upper barrier on strips, the blow-up supersolutions that
//! force unspecifiability, and the case-by-case barriers behind the `b2 < 1`
//! corollary.
//!
//! Every barrier carries an evaluable jet, the region it is valid on, the
//! operator it certifies against, and named parameters. Sign checks are
//! self-contained: `sign_check` samples the region and applies the stored
//! operator.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{Coefficients, Jet2};
use crate::specfun::bessel::bessel_i_series;
use crate::specfun::hyp1f1;

/// Which differential inequality the barrier certifies for its operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certifies {
    /// `L(psi) >= 0` wherever the barrier is non-negative.
    Subsolution,
    /// `L(psi) <= 0` wherever the barrier is non-negative.
    Supersolution,
}

/// An evaluable comparison function.
pub struct Barrier {
    pub name: String,
    pub certifies: Certifies,
    /// Operator the sign is certified against (the least favorable member
    /// of the coefficient class the construction covers).
    pub operator: Coefficients,
    /// Validity region.
    pub region: Arc<dyn Fn(f64, f64) -> bool + Send + Sync>,
    /// Bounded sampling window `(x_lo, x_hi, y_lo, y_hi)` inside the region.
    pub window: (f64, f64, f64, f64),
    jet: Arc<dyn Fn(f64, f64) -> Jet2 + Send + Sync>,
    /// Named construction parameters.
    pub meta: BTreeMap<String, f64>,
}

/// Outcome of sampling the certified sign over the region.
#[derive(Debug, Clone, Copy)]
pub struct SignCheck {
    pub ok: bool,
    /// Worst signed residual (negative = violation for subsolutions,
    /// positive = violation for supersolutions).
    pub worst: f64,
    pub checked: usize,
}

impl Barrier {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.jet)(x, y).f
    }

    pub fn jet(&self, x: f64, y: f64) -> Jet2 {
        (self.jet)(x, y)
    }

    /// Pointwise residual of the stored operator (y > 0).
    pub fn residual(&self, x: f64, y: f64) -> f64 {
        self.operator.apply_jet(x, y, &(self.jet)(x, y))
    }

    /// Sample `nx x ny` points of `window ∧ region ∧ {eval >= 0}` with
    /// `y > 0` and verify the certified sign up to `tol`.
    pub fn sign_check(&self, nx: usize, ny: usize, tol: f64) -> SignCheck {
        let (x_lo, x_hi, y_lo, y_hi) = self.window;
        let mut worst = 0.0f64;
        let mut checked = 0usize;
        for j in 0..ny {
            let y = y_lo + (y_hi - y_lo) * (j as f64 + 0.5) / ny as f64;
            if y <= 0.0 {
                continue;
            }
            for i in 0..nx {
                let x = x_lo + (x_hi - x_lo) * i as f64 / (nx - 1) as f64;
                if !(self.region)(x, y) {
                    continue;
                }
                let jet = (self.jet)(x, y);
                if jet.f < 0.0 {
                    continue;
                }
                checked += 1;
                let r = self.operator.apply_jet(x, y, &jet);
                match self.certifies {
                    Certifies::Subsolution => {
                        if -r > worst {
                            worst = -r;
                        }
                    }
                    Certifies::Supersolution => {
                        if r > worst {
                            worst = r;
                        }
                    }
                }
            }
        }
        SignCheck {
            ok: worst <= tol,
            worst: match self.certifies {
                Certifies::Subsolution => -worst,
                Certifies::Supersolution => worst,
            },
            checked,
        }
    }
}

// ---------------------------------------------------------------------------
// Harnack lower barrier
// ---------------------------------------------------------------------------

/// Edge profile `g(y) = e^{-q y} M((1+sqrt3 L)/2; 1; 2 q y)`, `q = pi/(8 y0 L)`,
/// which solves `y^2 g'' + y g' - (q^2 y^2 + sqrt3 pi y/(8 y0)) g = 0` and
/// increases from `g(0) = 1`.
fn harnack_g(y0: f64, lambda: f64, y: f64) -> (f64, f64) {
    let q = PI / (8.0 * y0 * lambda);
    let a = Complex64::new(0.5, 0.0) * (1.0 + 3.0f64.sqrt() * lambda);
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(2.0 * q * y, 0.0);
    let m = hyp1f1(a, one, z).expect("harnack profile series in range").value;
    let md = hyp1f1(a + 1.0, one + 1.0, z).expect("series in range").value * a;
    let e = (-q * y).exp();
    let g = e * m.re;
    let gp = e * (-q * m.re + 2.0 * q * md.re);
    (g, gp)
}

/// Value of the edge profile at the top edge, `g(y0)`; depends on Lambda
/// only. Decreases in Lambda with infimum ~= 1.8050.
pub fn harnack_edge_value(lambda: f64) -> f64 {
    harnack_g(1.0, lambda, 1.0).0
}

/// The Harnack lower barrier on the rectangle
/// `R_{y0} = [-4 L y0, 4 L y0] x [0, y0]`:
///
/// ```text
/// psi(x, y) = (10/9) e^{-q y} M((1+sqrt3 L)/2; 1; 2 q y) cos(q x) - 1,
/// ```
///
/// with `q = pi/(8 y0 L)`. Subsolution where `psi >= 0` for every operator
/// with `|b1| <= L`, `b2 >= 1`, `c >= 0` away from a thin sliver near
/// `psi = 0` (see `harnack_lemma_report`); the stored operator is the
/// least favorable axis case `b1 = 0, b2 = 1, c = 0`, for which the sign
/// holds on the whole region.
pub fn harnack_lower(y0: f64, lambda: f64) -> Barrier {
    assert!(y0 > 0.0 && lambda >= 1.0, "need y0 > 0, Lambda >= 1");
    let q = PI / (8.0 * y0 * lambda);
    let sq3l = 3.0f64.sqrt() * lambda;
    let jet = move |x: f64, y: f64| -> Jet2 {
        let (g, gp) = harnack_g(y0, lambda, y);
        // g'' from the profile ODE; series limit at y = 0
        let gpp = if y > 1e-12 {
            ((q * q * y * y + sq3l * q * y) * g - y * gp) / (y * y)
        } else {
            0.5 * (q * q + (sq3l * q) * (sq3l * q))
        };
        let h = (q * x).cos();
        let hp = -q * (q * x).sin();
        let hpp = -q * q * h;
        let k = 10.0 / 9.0;
        Jet2 {
            f: k * g * h - 1.0,
            fx: k * g * hp,
            fy: k * gp * h,
            fxx: k * g * hpp,
            fyy: k * gpp * h,
            fxy: k * gp * hp,
        }
    };
    let xw = 4.0 * lambda * y0;
    let mut meta = BTreeMap::new();
    meta.insert("y0".into(), y0);
    meta.insert("lambda".into(), lambda);
    meta.insert("edge_value".into(), harnack_edge_value(lambda));
    Barrier {
        name: "harnack_lower".into(),
        certifies: Certifies::Subsolution,
        operator: Coefficients::new(|_, _| 0.0, |_, _| 1.0, |_, _| 0.0, |_, _| 0.0, lambda),
        region: Arc::new(move |x, y| x.abs() <= xw && (0.0..=y0).contains(&y)),
        window: (-xw, xw, 0.0, y0),
        jet: Arc::new(jet),
        meta,
    }
}

/// One item of the lower-barrier property list.
#[derive(Debug, Clone)]
pub struct ItemOutcome {
    pub label: &'static str,
    pub pass: bool,
    /// Signed margin; >= 0 means the stated inequality held (with equality
    /// margin 0), < 0 by how much it failed.
    pub margin: f64,
}

/// Numeric verification of the five structural properties of the lower
/// barrier. Items (i), (iii), (iv), (v) hold; item (ii) — the claim that the
/// top-edge profile stays below `2 cos(q x) - 1` — is *false* as printed:
/// the true edge amplitude is `(10/9) g(y0)` which exceeds 2 by 0.3%-3.5%
/// for every Lambda >= 1 (the profile value decreases to ~1.805 > 1.8).
/// The report states the measured margins rather than papering over it.
pub fn harnack_lemma_report(y0: f64, lambda: f64) -> Vec<ItemOutcome> {
    let b = harnack_lower(y0, lambda);
    let q = PI / (8.0 * y0 * lambda);
    let xw = 4.0 * lambda * y0;
    let mut items = Vec::new();

    // (i) L(psi) >= 0 where psi >= 0, stored operator
    let sc = b.sign_check(40, 40, 1e-8);
    items.push(ItemOutcome {
        label: "i: subsolution sign on {psi >= 0}",
        pass: sc.ok,
        margin: sc.worst,
    });

    // (ii) psi(x, y0) <= 2 cos(q x) - 1, sampled so that x = 0 (the
    // extremal point) is included
    let mut worst = f64::INFINITY;
    for i in 0..=20 {
        let x = -xw + 2.0 * xw * i as f64 / 20.0;
        let bound = 2.0 * (q * x).cos() - 1.0;
        let margin = bound - b.eval(x, y0);
        worst = worst.min(margin);
    }
    items.push(ItemOutcome {
        label: "ii: top edge below 2cos-1",
        pass: worst >= -1e-8,
        margin: worst,
    });

    // (iii) psi(+-4 y0 L, y) <= 0
    let mut worst3 = f64::INFINITY;
    for j in 0..=20 {
        let y = y0 * j as f64 / 20.0;
        for x in [-xw, xw] {
            worst3 = worst3.min(-b.eval(x, y));
        }
    }
    items.push(ItemOutcome {
        label: "iii: side edges nonpositive",
        pass: worst3 >= -1e-10,
        margin: worst3,
    });

    // (iv) psi(x, 0) = (10/9) cos(q x) - 1 exactly
    let mut dev = 0.0f64;
    for i in 0..20 {
        let x = -xw + 2.0 * xw * i as f64 / 19.0;
        let want = 10.0 / 9.0 * (q * x).cos() - 1.0;
        dev = dev.max((b.eval(x, 0.0) - want).abs());
    }
    items.push(ItemOutcome {
        label: "iv: bottom trace identity",
        pass: dev <= 1e-12,
        margin: -dev,
    });

    // (v) psi(0,0) = 1/9
    let d5 = (b.eval(0.0, 0.0) - 1.0 / 9.0).abs();
    items.push(ItemOutcome {
        label: "v: value 1/9 at origin",
        pass: d5 <= 1e-10,
        margin: -d5,
    });

    items
}

// ---------------------------------------------------------------------------
// x-decay profile and barrier
// ---------------------------------------------------------------------------

/// The spliced profile `g` behind the x-decay barrier: on `[0, y_bar]` the
/// closed form `Re[e^{-i y} M((1 - i L)/2; 1; 2 i y)]` (solving
/// `y^2 g'' + y g' + (y^2 - L y) g = 0`), continued past its maximum
/// `y_bar` by the damped equation `y^2 g'' + L y g' + (y^2 - L y) g = 0`
/// down to its first zero `y_zero`.
///
/// The continuation uses the canonical fundamental pair at `y_bar`
/// (`u1(y_bar) = 1, u1' = 0`; `u2 = 0, u2' = 1`), so matching value and
/// one-sided derivative is the linear splice `g(y_bar) u1 + 0 u2` — the
/// same C^1 function the (M, U)-basis coefficients describe.
pub struct XDecayProfile {
    pub lambda: f64,
    pub y_bar: f64,
    pub y_zero: f64,
    g_max: f64,
    /// Hermite nodes (y, g, g') of the continued branch.
    branch2: Vec<(f64, f64, f64)>,
}

fn xdecay_g1(lambda: f64, y: f64) -> (f64, f64) {
    // Re[e^{-iy} M(a;1;2iy)], a = (1 - i L)/2, and its derivative
    let a = Complex64::new(0.5, -0.5 * lambda);
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 2.0 * y);
    let m = hyp1f1(a, one, z).expect("profile series in range").value;
    let md = hyp1f1(a + 1.0, one + 1.0, z).expect("series in range").value * a;
    let e = Complex64::new(0.0, -y).exp();
    let g = (e * m).re;
    let gp = (e * (m * Complex64::new(0.0, -1.0) + md * Complex64::new(0.0, 2.0))).re;
    (g, gp)
}

impl XDecayProfile {
    /// Build the profile for `lambda >= 1`. Errors if no zero is bracketed
    /// within `(y_bar, 1000 y_bar]`, which would indicate a special-function
    /// defect.
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda >= 1.0) {
            return Err(Error::Domain {
                op: "xdecay_profile",
                msg: format!("need Lambda >= 1, got {lambda}"),
            });
        }
        // locate y_bar: first zero of g' (bisection after a coarse scan)
        let mut lo = 0.0f64;
        let mut hi = f64::NAN;
        let mut y = 0.1 * lambda.max(1.0);
        let step = 0.05 * lambda.max(1.0);
        for _ in 0..10_000 {
            let (_, gp) = xdecay_g1(lambda, y);
            if gp <= 0.0 {
                hi = y;
                break;
            }
            lo = y;
            y += step;
        }
        if !hi.is_finite() {
            return Err(Error::RootFinding {
                op: "xdecay_profile",
                msg: "no stationary point of the first branch located".into(),
            });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo < 1e-13 * hi {
                break;
            }
            if xdecay_g1(lambda, mid).1 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y_bar = 0.5 * (lo + hi);
        let g_max = xdecay_g1(lambda, y_bar).0;

        // continue with RK4 on the damped branch until the sign change
        let f2 = |y: f64, g: f64, gp: f64| -> f64 {
            // g'' = [ (L y - y^2) g - L y g' ] / y^2
            ((lambda * y - y * y) * g - lambda * y * gp) / (y * y)
        };
        let h = (y_bar * 1e-4).min(1e-3);
        let mut nodes = vec![(y_bar, g_max, 0.0f64)];
        let mut yy = y_bar;
        let mut g = g_max;
        let mut gp = 0.0f64;
        let y_cap = 1000.0 * y_bar;
        let mut crossed = false;
        while yy < y_cap {
            let k1 = (gp, f2(yy, g, gp));
            let k2 = (gp + 0.5 * h * k1.1, f2(yy + 0.5 * h, g + 0.5 * h * k1.0, gp + 0.5 * h * k1.1));
            let k3 = (gp + 0.5 * h * k2.1, f2(yy + 0.5 * h, g + 0.5 * h * k2.0, gp + 0.5 * h * k2.1));
            let k4 = (gp + h * k3.1, f2(yy + h, g + h * k3.0, gp + h * k3.1));
            g += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            gp += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            yy += h;
            nodes.push((yy, g, gp));
            if g <= 0.0 {
                crossed = true;
                break;
            }
        }
        if !crossed {
            return Err(Error::RootFinding {
                op: "xdecay_profile",
                msg: format!("no zero of the profile in ({y_bar}, {y_cap}]"),
            });
        }
        // refine the zero by bisection on the Hermite interpolant
        let profile = XDecayProfile {
            lambda,
            y_bar,
            y_zero: yy, // provisional
            g_max,
            branch2: nodes,
        };
        let (mut lo, mut hi) = (yy - h, yy);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo < 1e-14 * hi {
                break;
            }
            if profile.eval(mid).0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(XDecayProfile {
            y_zero: 0.5 * (lo + hi),
            ..profile
        })
    }

    /// `(g, g')` anywhere in `[0, y_zero]` (and slightly beyond).
    pub fn eval(&self, y: f64) -> (f64, f64) {
        if y <= self.y_bar {
            return xdecay_g1(self.lambda, y);
        }
        // cubic Hermite between the stored RK4 nodes
        let nodes = &self.branch2;
        let idx = match nodes.binary_search_by(|probe| probe.0.partial_cmp(&y).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        let i = idx.min(nodes.len() - 2);
        let (y0, g0, d0) = nodes[i];
        let (y1, g1, d1) = nodes[i + 1];
        let h = y1 - y0;
        let t = (y - y0) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let g = h00 * g0 + h10 * h * d0 + h01 * g1 + h11 * h * d1;
        // derivative of the same interpolant
        let dh00 = 6.0 * t * (t - 1.0) / h;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = -6.0 * t * (t - 1.0) / h;
        let dh11 = 3.0 * t * t - 2.0 * t;
        let gp = dh00 * g0 + dh10 * d0 + dh01 * g1 + dh11 * d1;
        (g, gp)
    }

    /// Second derivative from whichever ODE branch governs at `y`.
    pub fn second_derivative(&self, y: f64) -> f64 {
        let (g, gp) = self.eval(y);
        let l = self.lambda;
        if y <= self.y_bar {
            ((l * y - y * y) * g - y * gp) / (y * y)
        } else {
            ((l * y - y * y) * g - l * y * gp) / (y * y)
        }
    }

    /// Largest profile value (at the break point).
    pub fn g_max(&self) -> f64 {
        self.g_max
    }
}

/// Convenience mirror of the profile constructor returning the tuple form.
pub fn xdecay_profile(lambda: f64) -> Result<XDecayProfile> {
    XDecayProfile::new(lambda)
}

/// The x-decay barrier `psi(x, y) = C1 g((y_zero/y_d) y) e^{-(y_zero/y_d) x}`
/// on the half-strip `{x >= 0, 0 <= y <= y_d}`; vanishes identically on
/// `y = y_d`, decays exponentially in x, and is a subsolution for every
/// operator with `|b1| <= Lambda`, `1 <= b2 <= Lambda`, `c >= 0`. The stored
/// operator is the worst case: `b1 = +Lambda`, `b2` switching from 1 to
/// Lambda at the profile break, `c = 0`.
pub fn xdecay_barrier(lambda: f64, y_d: f64, c1: f64) -> Result<Barrier> {
    if !(y_d > 0.0 && c1 > 0.0) {
        return Err(Error::Domain {
            op: "xdecay_barrier",
            msg: format!("need y_d > 0, C1 > 0 (got {y_d}, {c1})"),
        });
    }
    let profile = Arc::new(XDecayProfile::new(lambda)?);
    let s = profile.y_zero / y_d;
    let y_switch = profile.y_bar / s; // b2 switch location in barrier coords
    let p = profile.clone();
    let jet = move |x: f64, y: f64| -> Jet2 {
        let ys = s * y;
        let (g, gp) = p.eval(ys);
        let gpp = if ys > 1e-300 { p.second_derivative(ys) } else { 0.0 };
        let e = (-s * x).exp();
        Jet2 {
            f: c1 * g * e,
            fx: -s * c1 * g * e,
            fy: s * c1 * gp * e,
            fxx: s * s * c1 * g * e,
            fyy: s * s * c1 * gpp * e,
            fxy: -s * s * c1 * gp * e,
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("lambda".into(), lambda);
    meta.insert("y_d".into(), y_d);
    meta.insert("c1".into(), c1);
    meta.insert("y_bar".into(), profile.y_bar);
    meta.insert("y_zero".into(), profile.y_zero);
    Ok(Barrier {
        name: "xdecay".into(),
        certifies: Certifies::Subsolution,
        operator: Coefficients::new(
            move |_, _| lambda,
            move |_, y| if y <= y_switch { 1.0 } else { lambda },
            |_, _| 0.0,
            |_, _| 0.0,
            lambda,
        ),
        region: Arc::new(move |x, y| x >= 0.0 && (0.0..=y_d).contains(&y)),
        window: (0.0, 4.0 * y_d, 0.0, y_d),
        jet: Arc::new(jet),
        meta,
    })
}

// ---------------------------------------------------------------------------
// Liouville upper barrier
// ---------------------------------------------------------------------------

/// Attenuated profile `g(y) = Re[e^{-iy/L} M((1 + i L)/2; 1; 2 i y / L)]`,
/// positive and decreasing on `[0, 1]`; solves
/// `y^2 g'' + y g' + (y + (y/L)^2) g = 0`.
pub fn liouville_g(lambda: f64, y: f64) -> Result<(f64, f64)> {
    let a = Complex64::new(0.5, 0.5 * lambda);
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 2.0 * y / lambda);
    let m = hyp1f1(a, one, z)?.value;
    let md = hyp1f1(a + 1.0, one + 1.0, z)?.value * a;
    let e = Complex64::new(0.0, -y / lambda).exp();
    let gc = e * m;
    if gc.im.abs() > 1e-8 {
        return Err(Error::Accuracy {
            op: "liouville_g",
            est: gc.im.abs(),
            want: 1e-8,
        });
    }
    let gp = (e * (m * Complex64::new(0.0, -1.0 / lambda) + md * Complex64::new(0.0, 2.0 / lambda)))
        .re;
    Ok((gc.re, gp))
}

/// Upper barrier `G(x, y) = C1 cosh(x / Lambda) g(y)` on the strip
/// `y in [0, 1]`. Supersolution for any `|b1| <= Lambda`, `b2 >= 1`, `c = 0`
/// while `g` decreases; the stored operator is the adversarial
/// `b1 = Lambda sign(x)`, `b2 = 1`.
pub fn liouville_upper(lambda: f64, c1: f64) -> Result<Barrier> {
    if !(lambda >= 2.0) {
        return Err(Error::Domain {
            op: "liouville_upper",
            msg: format!("need Lambda >= 2, got {lambda}"),
        });
    }
    let jet = move |x: f64, y: f64| -> Jet2 {
        let (g, gp) = liouville_g(lambda, y).expect("profile in range");
        let gpp = if y > 1e-12 {
            -(y * gp + (y + (y / lambda) * (y / lambda)) * g) / (y * y)
        } else {
            0.5 * (1.0 - 1.0 / (lambda * lambda))
        };
        let ch = (x / lambda).cosh();
        let sh = (x / lambda).sinh();
        Jet2 {
            f: c1 * ch * g,
            fx: c1 * sh / lambda * g,
            fy: c1 * ch * gp,
            fxx: c1 * ch / (lambda * lambda) * g,
            fyy: c1 * ch * gpp,
            fxy: c1 * sh / lambda * gp,
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("lambda".into(), lambda);
    meta.insert("c1".into(), c1);
    meta.insert("g_at_1".into(), liouville_g(lambda, 1.0)?.0);
    Ok(Barrier {
        name: "liouville_upper".into(),
        certifies: Certifies::Supersolution,
        operator: Coefficients::new(
            move |x: f64, _| lambda * x.signum(),
            |_, _| 1.0,
            |_, _| 0.0,
            |_, _| 0.0,
            lambda,
        ),
        region: Arc::new(|_, y| (0.0..=1.0).contains(&y)),
        window: (-3.0 * lambda, 3.0 * lambda, 0.0, 1.0),
        jet: Arc::new(jet),
        meta,
    })
}

// ---------------------------------------------------------------------------
// Unspecifiability supersolutions
// ---------------------------------------------------------------------------

/// The blow-up supersolution that forbids degenerate-boundary data when
/// `b2 >= 1`: `eps y^{-lambda/2}` for `lambda > 0`, or
/// `eps (log(diam) - log y)` at `lambda = 0`. Supersolution for
/// `b2 = 1 + lambda` whenever `c <= (b2-1)^2/4`; stored with `c = 0`.
pub fn unspecifiability_super(lambda: f64, epsilon: f64, diam: f64) -> Result<Barrier> {
    if lambda < 0.0 {
        return Err(Error::Domain {
            op: "unspecifiability_super",
            msg: format!("need lambda >= 0, got {lambda}"),
        });
    }
    if !(epsilon > 0.0 && diam > 0.0) {
        return Err(Error::Domain {
            op: "unspecifiability_super",
            msg: "need epsilon > 0 and diam > 0".into(),
        });
    }
    let jet: Arc<dyn Fn(f64, f64) -> Jet2 + Send + Sync> = if lambda == 0.0 {
        Arc::new(move |_x: f64, y: f64| Jet2 {
            f: epsilon * (diam.ln() - y.ln()),
            fx: 0.0,
            fy: -epsilon / y,
            fxx: 0.0,
            fyy: epsilon / (y * y),
            fxy: 0.0,
        })
    } else {
        let p = -0.5 * lambda;
        Arc::new(move |_x: f64, y: f64| Jet2 {
            f: epsilon * y.powf(p),
            fx: 0.0,
            fy: epsilon * p * y.powf(p - 1.0),
            fxx: 0.0,
            fyy: epsilon * p * (p - 1.0) * y.powf(p - 2.0),
            fxy: 0.0,
        })
    };
    let mut meta = BTreeMap::new();
    meta.insert("lambda".into(), lambda);
    meta.insert("epsilon".into(), epsilon);
    meta.insert("diam".into(), diam);
    Ok(Barrier {
        name: "unspecifiability_super".into(),
        certifies: Certifies::Supersolution,
        operator: Coefficients::constant(0.0, 1.0 + lambda, 0.0),
        region: Arc::new(move |_, y| y > 0.0 && y <= diam),
        window: (-0.5 * diam, 0.5 * diam, 0.0, diam),
        jet,
        meta,
    })
}

// ---------------------------------------------------------------------------
// Corollary case barriers (b2 < 1 via the power-multiplier)
// ---------------------------------------------------------------------------

fn two_focus_jet(x: f64, y: f64) -> Jet2 {
    // f = -1 + (r1 + r2)/2, r_i = sqrt((x -+ 1)^2 + y^2)
    let mut out = Jet2 {
        f: -1.0,
        ..Default::default()
    };
    for sx in [-1.0f64, 1.0] {
        let dx = x + sx;
        let r = dx.hypot(y);
        out.f += 0.5 * r;
        out.fx += 0.5 * dx / r;
        out.fy += 0.5 * y / r;
        out.fxx += 0.5 * y * y / (r * r * r);
        out.fyy += 0.5 * dx * dx / (r * r * r);
        out.fxy += -0.5 * dx * y / (r * r * r);
    }
    out
}

/// The case-by-case supersolution pinching `O(y^lambda)` boundary behavior
/// for `y^2 Delta f + (1 - lambda) y f_y = 0`:
///
/// * `lambda in (0,1)`: `y^lambda + x^2/2 - y/(1-lambda)`,
/// * `lambda = 1`: the flat barrier `y` (classical Hopf case; flagged in
///   `meta["hopf_flag"]`),
/// * `lambda in (1,2)`: `y^lambda + x^2/2 - y^2/(2(2-lambda))` (exact solution),
/// * `lambda >= 2`: the two-focus barrier
///   `-1 + (sqrt((x-1)^2+y^2) + sqrt((x+1)^2+y^2))/2`, an exact solution at
///   `lambda = 2` and a strict supersolution beyond.
pub fn corollary_case_barrier(lambda: f64) -> Result<Barrier> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            op: "corollary_case_barrier",
            msg: format!("need lambda > 0, got {lambda}"),
        });
    }
    let mut meta = BTreeMap::new();
    meta.insert("lambda".into(), lambda);
    let jet: Arc<dyn Fn(f64, f64) -> Jet2 + Send + Sync> = if lambda < 1.0 {
        let k = 1.0 / (1.0 - lambda);
        Arc::new(move |x: f64, y: f64| Jet2 {
            f: y.powf(lambda) + 0.5 * x * x - k * y,
            fx: x,
            fy: lambda * y.powf(lambda - 1.0) - k,
            fxx: 1.0,
            fyy: lambda * (lambda - 1.0) * y.powf(lambda - 2.0),
            fxy: 0.0,
        })
    } else if lambda == 1.0 {
        meta.insert("hopf_flag".into(), 1.0);
        Arc::new(|_x: f64, y: f64| Jet2 {
            f: y,
            fy: 1.0,
            ..Default::default()
        })
    } else if lambda < 2.0 {
        let k = 1.0 / (2.0 * (2.0 - lambda));
        Arc::new(move |x: f64, y: f64| Jet2 {
            f: y.powf(lambda) + 0.5 * x * x - k * y * y,
            fx: x,
            fy: lambda * y.powf(lambda - 1.0) - 2.0 * k * y,
            fxx: 1.0,
            fyy: lambda * (lambda - 1.0) * y.powf(lambda - 2.0) - 2.0 * k,
            fxy: 0.0,
        })
    } else {
        Arc::new(|x, y| two_focus_jet(x, y))
    };
    Ok(Barrier {
        name: "corollary_super".into(),
        certifies: Certifies::Supersolution,
        operator: Coefficients::constant(0.0, 1.0 - lambda, 0.0),
        region: Arc::new(|x, y| x.abs() <= 2.0 && (0.0..=1.0).contains(&y)),
        window: (-2.0, 2.0, 0.0, 1.0),
        jet,
        meta,
    })
}

/// The companion subsolution `y^{lambda/2} I_{lambda/2}(y) cos(x)`, an exact
/// solution of the same equation on `|x| < pi/2`.
pub fn corollary_case_subsolution(lambda: f64) -> Result<Barrier> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            op: "corollary_case_subsolution",
            msg: format!("need lambda > 0, got {lambda}"),
        });
    }
    let nu = 0.5 * lambda;
    let jet = move |x: f64, y: f64| -> Jet2 {
        // g(y) = y^nu I_nu(y); g' = y^nu I_{nu-1}(y); g'' from the ODE
        let (g, gp, gpp) = if y < 1e-150 {
            (0.0, 0.0, 0.0)
        } else {
            let g = y.powf(nu) * bessel_i_series(nu, y).value;
            let gp = y.powf(nu) * bessel_i_series(nu - 1.0, y).value;
            let gpp = g + (2.0 * nu - 1.0) * gp / y;
            (g, gp, gpp)
        };
        let (s, c) = x.sin_cos();
        Jet2 {
            f: g * c,
            fx: -g * s,
            fy: gp * c,
            fxx: -g * c,
            fyy: gpp * c,
            fxy: -gp * s,
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("lambda".into(), lambda);
    Ok(Barrier {
        name: "corollary_sub".into(),
        certifies: Certifies::Subsolution,
        operator: Coefficients::constant(0.0, 1.0 - lambda, 0.0),
        region: Arc::new(|x, y| x.abs() < 0.5 * PI && (0.0..=2.0).contains(&y)),
        window: (-0.5 * PI + 1e-9, 0.5 * PI - 1e-9, 0.0, 2.0),
        jet: Arc::new(jet),
        meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harnack_value_at_origin_is_one_ninth() {
        for (y0, lam) in [(0.5, 1.0), (1.0, 2.0), (2.0, 5.0)] {
            let b = harnack_lower(y0, lam);
            assert!(
                (b.eval(0.0, 0.0) - 1.0 / 9.0).abs() < 1e-12,
                "y0={y0} lam={lam}"
            );
        }
    }

    #[test]
    fn harnack_edge_profile_monotone_to_about_1_805() {
        // decreasing in Lambda; infimum ~ 1.8050 (reached from above)
        let mut prev = f64::INFINITY;
        for lam in [1.0, 2.0, 5.0, 10.0, 50.0] {
            let g = harnack_edge_value(lam);
            assert!(g < prev, "not decreasing at {lam}");
            assert!(g > 1.80, "fell below the limit at {lam}: {g}");
            prev = g;
        }
        // frozen oracle values (40-digit series):
        assert!((harnack_edge_value(1.0) - 1.8604004900673082).abs() < 1e-9);
        assert!((harnack_edge_value(50.0) - 1.8049790200279087).abs() < 1e-9);
    }

    #[test]
    fn harnack_sign_check_passes_stored_operator() {
        for (y0, lam) in [(0.5, 1.0), (1.0, 2.0), (2.0, 5.0)] {
            let b = harnack_lower(y0, lam);
            let sc = b.sign_check(40, 40, 1e-8);
            assert!(sc.ok, "y0={y0} lam={lam}: worst {}", sc.worst);
            assert!(sc.checked > 100);
        }
    }

    #[test]
    fn harnack_lemma_item_ii_fails_as_printed() {
        // The printed top-edge bound 2cos-1 is exceeded by (10/9) g(y0) - 2
        // at x = 0; pin down that this defect is real and of the known size.
        let items = harnack_lemma_report(1.0, 1.0);
        let ii = &items[1];
        assert!(!ii.pass, "item (ii) unexpectedly passed");
        let overshoot = 10.0 / 9.0 * harnack_edge_value(1.0) - 2.0;
        assert!(((-ii.margin) - overshoot).abs() < 1e-9);
        assert!(overshoot > 0.06 && overshoot < 0.07);
        // items (i), (iii), (iv), (v) all hold
        for k in [0usize, 2, 3, 4] {
            assert!(items[k].pass, "item {} failed: {}", items[k].label, items[k].margin);
        }
    }

    #[test]
    fn xdecay_profile_structure() {
        // frozen oracle values (30-digit ODE + series cross-check)
        let p = XDecayProfile::new(1.0).unwrap();
        assert!((p.y_bar - 1.79056105961).abs() < 1e-6, "y_bar {}", p.y_bar);
        assert!((p.y_zero - 4.17632820465).abs() < 1e-6, "y_zero {}", p.y_zero);
        assert!((p.g_max() - 2.16308270701).abs() < 1e-7);
        let p2 = XDecayProfile::new(2.0).unwrap();
        assert!((p2.y_bar - 3.15572797237).abs() < 1e-6);
        assert!((p2.y_zero - 5.96351722363).abs() < 1e-6);
        assert!((p2.g_max() - 8.50031233453).abs() < 1e-6);
    }

    #[test]
    fn xdecay_profile_value_and_slope_at_zero() {
        // g(0) = 1; the slope at 0 is Lambda (the text's 1/Lambda is a typo:
        // the profile ODE forces g' (0) = Lambda, cf. the y^1 coefficient)
        for lam in [1.0, 2.0, 5.0] {
            let (g0, _) = xdecay_g1(lam, 0.0);
            assert!((g0 - 1.0).abs() < 1e-14);
            let h = 1e-6;
            let (gh, _) = xdecay_g1(lam, h);
            let slope = (gh - g0) / h;
            assert!(
                (slope - lam).abs() < 1e-4,
                "lam={lam}: slope {slope}"
            );
            assert!(slope > 0.0);
        }
    }

    #[test]
    fn xdecay_zero_bracketed_for_all_lambdas() {
        for lam in [1.0, 2.0, 5.0, 10.0] {
            let p = XDecayProfile::new(lam).unwrap();
            assert!(p.y_zero > p.y_bar);
            let (g_before, _) = p.eval(p.y_zero - 1e-3);
            let (g_after, _) = p.eval(p.y_zero + 1e-3);
            assert!(g_before > 0.0 && g_after < 0.0, "lam {lam}");
        }
    }

    #[test]
    fn xdecay_branch1_matches_ode_integration() {
        // independent re-integration of the first-branch ODE from the series
        // start; catches any mismatch between the closed form and the ODE
        let lam = 3.0;
        let f2 = |y: f64, g: f64, gp: f64| ((lam * y - y * y) * g - y * gp) / (y * y);
        let mut y = 1e-4;
        let mut g = 1.0 + lam * y + (lam * lam - 1.0) / 4.0 * y * y;
        let mut gp = lam + (lam * lam - 1.0) / 2.0 * y;
        let h = 1e-5;
        while y < 1.0 {
            let k1 = (gp, f2(y, g, gp));
            let k2 = (gp + 0.5 * h * k1.1, f2(y + 0.5 * h, g + 0.5 * h * k1.0, gp + 0.5 * h * k1.1));
            let k3 = (gp + 0.5 * h * k2.1, f2(y + 0.5 * h, g + 0.5 * h * k2.0, gp + 0.5 * h * k2.1));
            let k4 = (gp + h * k3.1, f2(y + h, g + h * k3.0, gp + h * k3.1));
            g += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            gp += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            y += h;
        }
        let (g_formula, _) = xdecay_g1(lam, y);
        // frozen oracle: g(1.0...) = 6.25044 at Lambda = 3
        assert!((g - g_formula).abs() < 1e-6, "{g} vs {g_formula}");
        assert!((g_formula - 6.2504402).abs() < 1e-4);
    }

    #[test]
    fn xdecay_barrier_properties() {
        let b = xdecay_barrier(2.0, 1.0, 1.0).unwrap();
        // vanishes on y = y_d for all x (separated form)
        for x in [0.0, 1.0, 5.0] {
            assert!(b.eval(x, 1.0).abs() < 1e-9, "x={x}: {}", b.eval(x, 1.0));
        }
        // exponential x-profile exactly
        let s = b.meta["y_zero"] / 1.0;
        for y in [0.2, 0.6] {
            let ratio = b.eval(1.5, y) / b.eval(0.0, y);
            assert!((ratio - (-s * 1.5f64).exp()).abs() < 1e-12);
        }
        // subsolution sign with stored worst-case operator
        let sc = b.sign_check(40, 40, 1e-7);
        assert!(sc.ok, "worst {}", sc.worst);
        // and for the spec's concrete operator y^2 D + y d_y at Lambda = 2
        let mild = Barrier {
            operator: Coefficients::constant(0.0, 1.0, 0.0),
            ..b
        };
        let sc2 = mild.sign_check(40, 40, 1e-8);
        assert!(sc2.ok, "worst {}", sc2.worst);
    }

    #[test]
    fn liouville_profile_values() {
        // frozen oracle values; the text's claim g(1) >= 0.22 for Lambda >= 2
        // is false below Lambda ~ 9 (limit value J_0(2) ~ 0.2239)
        let known = [
            (2.0, 0.19116654333626509),
            (3.0, 0.20919048100671377),
            (5.0, 0.21856969624390004),
            (10.0, 0.22255744291620280),
        ];
        for (lam, want) in known {
            let (g1, _) = liouville_g(lam, 1.0).unwrap();
            assert!((g1 - want).abs() < 1e-10, "lam={lam}: {g1}");
        }
        assert!(liouville_g(2.0, 1.0).unwrap().0 < 0.22);
        assert!(liouville_g(10.0, 1.0).unwrap().0 > 0.22);
    }

    #[test]
    fn liouville_barrier_decreasing_positive_supersolution() {
        for lam in [2.0, 3.0, 5.0, 10.0] {
            let b = liouville_upper(lam, 1.0).unwrap();
            assert!((b.eval(0.0, 0.0) - 1.0).abs() < 1e-12);
            let mut prev = f64::INFINITY;
            for j in 0..=50 {
                let y = j as f64 / 50.0;
                let v = liouville_g(lam, y).unwrap().0;
                assert!(v > 0.0, "lam={lam} y={y}");
                assert!(v < prev + 1e-14, "not decreasing at y={y}");
                prev = v;
            }
            let sc = b.sign_check(40, 40, 1e-9);
            assert!(sc.ok, "lam={lam}: worst {}", sc.worst);
        }
        assert!(liouville_upper(1.5, 1.0).is_err());
    }

    #[test]
    fn unspecifiability_supersolution_cases() {
        // lambda = 2: psi = y^{-1}; residual (2 - 3) y^{-1} = -y^{-1} <= 0
        let b = unspecifiability_super(2.0, 1.0, 1.0).unwrap();
        let r = b.residual(0.0, 0.5);
        assert!((r - -(1.0 / 0.5)).abs() < 1e-12, "r = {r}");
        let sc = b.sign_check(30, 30, 1e-10);
        assert!(sc.ok);
        // lambda = 0: log barrier is an exact solution of y^2 D + y d_y
        let b0 = unspecifiability_super(0.0, 1.0, 2.0).unwrap();
        for y in [0.1, 0.5, 1.5] {
            assert!(b0.residual(0.3, y).abs() < 1e-10);
        }
        // blow-up at the edge
        assert!(b.eval(0.0, 1e-6) > 1e5);
        assert!(b0.eval(0.0, 1e-12) > 20.0);
        assert!(unspecifiability_super(-0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn corollary_lambda2_exact_solution() {
        // two-focus barrier solves y^2 D f - y f_y = 0 identically
        let b = corollary_case_barrier(2.0).unwrap();
        let mut worst = 0.0f64;
        for j in 1..=20 {
            let y = 0.05 + 0.95 * (j as f64 - 1.0) / 19.0;
            for i in 0..=20 {
                let x = -2.0 + 4.0 * i as f64 / 20.0;
                worst = worst.max(b.residual(x, y).abs());
            }
        }
        assert!(worst < 1e-8, "max residual {worst}");
    }

    #[test]
    fn corollary_lambda2_boundary_trace() {
        let b = corollary_case_barrier(2.0).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.5, 1.0] {
            assert!(b.eval(x, 0.0).abs() < 1e-12, "x = {x}");
        }
        assert!((b.eval(1.5, 0.0) - 0.5).abs() < 1e-12);
        assert!((b.eval(-1.5, 0.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn corollary_lambda2_near_origin_quadratic() {
        // log-log fit of f(0, y) over y in [1e-3, 1e-2]: exponent 2.00 +- 0.01
        let b = corollary_case_barrier(2.0).unwrap();
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        let n = 20;
        for k in 0..n {
            let y = 1e-3 * (10f64).powf(k as f64 / (n - 1) as f64);
            let lx = y.ln();
            let ly = b.eval(0.0, y).ln();
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        let nf = n as f64;
        let slope = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
        assert!((slope - 2.0).abs() < 0.01, "slope {slope}");
    }

    #[test]
    fn corollary_all_cases_certify() {
        for lam in [0.25, 1.0, 1.5, 2.0, 3.0] {
            let b = corollary_case_barrier(lam).unwrap();
            let sc = b.sign_check(40, 40, 1e-8);
            assert!(sc.ok, "lambda = {lam}: worst {}", sc.worst);
        }
        for lam in [0.25, 1.0, 2.0, 3.0] {
            let s = corollary_case_subsolution(lam).unwrap();
            let sc = s.sign_check(40, 40, 1e-8);
            assert!(sc.ok, "sub lambda = {lam}: worst {}", sc.worst);
        }
        assert!(corollary_case_barrier(1.0).unwrap().meta.contains_key("hopf_flag"));
    }

    #[test]
    fn spec_probe_value_other_sign_branch() {
        // frozen regression for the conjugate-parameter evaluation
        // Re[e^{-iy} M((1 + 3i)/2; 1; 2iy)] at y = 1 (40-digit oracle)
        let a = Complex64::new(0.5, 1.5);
        let z = Complex64::new(0.0, 2.0);
        let m = hyp1f1(a, Complex64::new(1.0, 0.0), z).unwrap().value;
        let v = (Complex64::new(0.0, -1.0).exp() * m).re;
        assert!((v - -0.3754010899282892).abs() < 1e-10, "{v}");
    }
}
