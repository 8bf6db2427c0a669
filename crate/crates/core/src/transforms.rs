//! Changes of variables taking application operators (Keldysh/Tricomi,
//! population dynamics, Heston, SABR) to Euler form, plus the power-multiplier
//! rewrite `f -> y^lambda f` that trades transport coefficient `1 + lambda`
//! for `1 - lambda`.
//!
//! Each transform returns the coordinate map, the Euler-form coefficients
//! and a positive `prefactor` tying the two residuals together:
//!
//! ```text
//! L_euler(g)(x, y) = prefactor(x, y) * L_original(f)(p, q),
//! ```
//!
//! where `f = g ∘ forward` and `(x, y) = forward(p, q)`. Keeping the
//! prefactor explicit (instead of dividing it out) keeps `g != 0` problems
//! representable.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::{Coefficients, Jet2};

/// A diffeomorphism between original coordinates `(p, q)` and half-plane
/// coordinates `(x, y)`.
#[derive(Clone)]
pub struct CoordinateMap {
    pub forward: Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>,
    pub inverse: Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>,
    /// Region (in original coordinates) where the map is a diffeomorphism.
    pub jacobian_ok: Arc<dyn Fn(f64, f64) -> bool + Send + Sync>,
}

impl CoordinateMap {
    /// Max round-trip defect `|inverse(forward(p,q)) - (p,q)|` over a sample.
    pub fn roundtrip_defect(&self, samples: &[(f64, f64)]) -> f64 {
        let mut worst = 0.0f64;
        for &(p, q) in samples {
            if !(self.jacobian_ok)(p, q) {
                continue;
            }
            let (x, y) = (self.forward)(p, q);
            let (p2, q2) = (self.inverse)(x, y);
            worst = worst.max((p2 - p).abs().max((q2 - q).abs()));
        }
        worst
    }
}

/// Application of the *original* operator to a jet in original coordinates.
pub type OriginalOp = Arc<dyn Fn(&Jet2, f64, f64) -> f64 + Send + Sync>;

/// Result of rewriting an application operator in Euler form.
#[derive(Clone)]
pub struct TransformResult {
    pub map: CoordinateMap,
    pub coeffs: Coefficients,
    /// Positive multiple relating the residuals (see module docs).
    pub prefactor: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    /// The source operator, for residual cross-checks.
    pub original_op: OriginalOp,
}

/// Keldysh/Tricomi operator `f_tt + u^k f_uu` (elliptic side `u > 0`) in
/// Euler form with `b2 = k/(k-2)`. Original coordinates are `(u, t)`.
///
/// `k = 2` is rejected: the logarithmic substitution it would require does
/// not produce Euler-type degeneracy (the catalog carries the explicit
/// counterexample).
pub fn keldysh_to_euler(k: f64) -> Result<TransformResult> {
    if k == 2.0 {
        return Err(Error::Domain {
            op: "keldysh_to_euler",
            msg: "k = 2 does not transform to Euler type".into(),
        });
    }
    let b2 = k / (k - 2.0);
    // y = |2/(2-k)| u^{(2-k)/2}; the sign flip for k > 2 keeps y > 0 and
    // leaves the transformed operator unchanged.
    let s = (2.0 / (2.0 - k)).abs();
    let p_exp = 0.5 * (2.0 - k);
    let forward = move |u: f64, t: f64| (t, s * u.powf(p_exp));
    let inverse = move |x: f64, y: f64| ((y / s).powf(1.0 / p_exp), x);
    let coeffs = Coefficients::constant(0.0, b2, 0.0);
    Ok(TransformResult {
        map: CoordinateMap {
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            jacobian_ok: Arc::new(|u, _| u > 0.0),
        },
        coeffs,
        prefactor: Arc::new(|_, y| y * y),
        original_op: Arc::new(move |j: &Jet2, u: f64, _t: f64| j.fyy + u.powf(k) * j.fxx),
    })
}

/// Population-dynamics generator `f_xx + y1 f_{y1 y1} + b1 f_{y1}` in Euler
/// form via `y = 2 sqrt(y1)`, giving `b2 = 2 b1 - 1`. Original coordinates
/// are `(x1, y1)`.
pub fn population_to_euler(b1: f64) -> TransformResult {
    let b2 = 2.0 * b1 - 1.0;
    TransformResult {
        map: CoordinateMap {
            forward: Arc::new(|x1, y1: f64| (x1, 2.0 * y1.sqrt())),
            inverse: Arc::new(|x, y| (x, 0.25 * y * y)),
            jacobian_ok: Arc::new(|_, y1| y1 > 0.0),
        },
        coeffs: Coefficients::constant(0.0, b2, 0.0),
        prefactor: Arc::new(|_, y| y * y),
        original_op: Arc::new(move |j: &Jet2, _x1: f64, y1: f64| {
            j.fxx + y1 * j.fyy + b1 * j.fy
        }),
    }
}

/// Heston model parameters (`mu` only enters the stochastic dynamics, not
/// the pricing operator, but is carried for completeness).
#[derive(Debug, Clone, Copy)]
pub struct HestonParams {
    pub mu: f64,
    pub kappa: f64,
    pub theta: f64,
    pub sigma: f64,
    pub rho: f64,
    pub r: f64,
    /// Price of volatility risk (often 0).
    pub lambda_price: f64,
}

/// Euler-form coefficient constants for the Heston operator:
/// transport `b1 + B1 y` and `b2 + B2 y`, zeroth order `-r_tilde y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HestonConstants {
    pub b1: f64,
    pub big_b1: f64,
    pub b2: f64,
    pub big_b2: f64,
    pub r_tilde: f64,
}

/// Derive the Euler-form constants from the model parameters.
///
/// With `x = a ln S - b v`, `y = q v` (`a = sqrt(2)/s`, `b = sqrt(2) rho /
/// (sigma s)`, `q = sqrt(2)/sigma`, `s = sqrt(1 - rho^2)`) the mixed second
/// derivative cancels and the operator becomes
/// `(sigma/sqrt2) [ y Delta + (b1 + B1 y) d_x + (b2 + B2 y) d_y - r_tilde f ]`.
pub fn heston_constants(p: &HestonParams) -> HestonConstants {
    let s = (1.0 - p.rho * p.rho).sqrt();
    let sq2 = std::f64::consts::SQRT_2;
    let kt = p.kappa * p.theta - p.lambda_price;
    HestonConstants {
        b1: 2.0 * (p.r * p.sigma + p.rho * (p.lambda_price - p.kappa * p.theta))
            / (p.sigma * p.sigma * s),
        big_b1: sq2 / s * (p.rho * p.kappa / p.sigma - 0.5),
        b2: 2.0 * kt / (p.sigma * p.sigma),
        big_b2: -sq2 * p.kappa / p.sigma,
        r_tilde: sq2 * p.r / p.sigma,
    }
}

/// Steady Heston pricing operator in Euler form. Original coordinates are
/// `(S, v)` with `S > 0`, `v > 0`.
pub fn heston_to_euler(p: HestonParams) -> Result<TransformResult> {
    if !(p.sigma > 0.0) {
        return Err(Error::Domain {
            op: "heston_to_euler",
            msg: format!("need sigma > 0, got {}", p.sigma),
        });
    }
    if !(0.0..1.0).contains(&p.rho) {
        return Err(Error::Domain {
            op: "heston_to_euler",
            msg: format!("need rho in [0, 1), got {}", p.rho),
        });
    }
    let s = (1.0 - p.rho * p.rho).sqrt();
    let sq2 = std::f64::consts::SQRT_2;
    let a = sq2 / s;
    let b = sq2 * p.rho / (p.sigma * s);
    let q = sq2 / p.sigma;
    let k = heston_constants(&p);
    let lam = 1.0f64
        .max(k.b1.abs())
        .max(k.b2.abs())
        .max(k.big_b1.abs())
        .max(k.big_b2.abs())
        .max(k.r_tilde.abs())
        * 10.0;
    let coeffs = Coefficients::new(
        move |_, y| k.b1 + k.big_b1 * y,
        move |_, y| k.b2 + k.big_b2 * y,
        move |_, y| -k.r_tilde * y,
        |_, _| 0.0,
        lam,
    );
    let pp = p;
    Ok(TransformResult {
        map: CoordinateMap {
            forward: Arc::new(move |sv: f64, v: f64| (a * sv.ln() - b * v, q * v)),
            inverse: Arc::new(move |x: f64, y: f64| {
                let v = y / q;
                (((x + b * v) / a).exp(), v)
            }),
            jacobian_ok: Arc::new(|sv, v| sv > 0.0 && v > 0.0),
        },
        coeffs,
        // L_euler = (y^2 / v) L_H and v = (sigma/sqrt2) y
        prefactor: Arc::new(move |_, y| sq2 / pp.sigma * y),
        original_op: Arc::new(move |j: &Jet2, sv: f64, v: f64| {
            0.5 * v * sv * sv * j.fxx
                + pp.rho * pp.sigma * v * sv * j.fxy
                + 0.5 * pp.sigma * pp.sigma * v * j.fyy
                + pp.r * sv * j.fx
                + (pp.kappa * (pp.theta - v) - pp.lambda_price) * j.fy
                - pp.r * j.f
        }),
    })
}

/// SABR pricing operator (zero correlation case) in Euler form. Original
/// coordinates are `(F, alpha)` on the open quarter-plane.
///
/// The composite map is `(F, a) -> (z, w) = (F^{1-beta}/(1-beta), a/nu)`
/// followed by the conformal square `x = w^2 - z^2`, `y = 2 z w`. The
/// resulting transport coefficients are
/// `b1 = +beta/(2(1-beta)) * y/r` and `b2 = -beta/(2(1-beta)) * (x+r)/r`
/// with `r = sqrt(x^2+y^2)`.
pub fn sabr_rho0_to_euler(beta: f64, nu: f64) -> Result<TransformResult> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::Domain {
            op: "sabr_rho0_to_euler",
            msg: format!("need beta in [0, 1), got {beta}"),
        });
    }
    if !(nu > 0.0) {
        return Err(Error::Domain {
            op: "sabr_rho0_to_euler",
            msg: format!("need nu > 0, got {nu}"),
        });
    }
    let bh = 0.5 * beta / (1.0 - beta);
    let coeffs = Coefficients::new(
        move |x, y| {
            let r = x.hypot(y);
            bh * y / r
        },
        move |x, y| {
            let r = x.hypot(y);
            -bh * (x + r) / r
        },
        |_, _| 0.0,
        |_, _| 0.0,
        (2.0 * bh).max(1.0),
    );
    let om = 1.0 - beta;
    Ok(TransformResult {
        map: CoordinateMap {
            forward: Arc::new(move |f: f64, a: f64| {
                let z = f.powf(om) / om;
                let w = a / nu;
                (w * w - z * z, 2.0 * z * w)
            }),
            inverse: Arc::new(move |x: f64, y: f64| {
                let r = x.hypot(y);
                let w = (0.5 * (r + x)).sqrt();
                let z = (0.5 * (r - x)).sqrt();
                ((om * z).powf(1.0 / om), nu * w)
            }),
            jacobian_ok: Arc::new(|f, a| f > 0.0 && a > 0.0),
        },
        coeffs,
        // L_euler = y^2 / (4 r nu^2 w^2) L_sabr, w^2 = (r + x)/2
        prefactor: Arc::new(move |x: f64, y: f64| {
            let r = x.hypot(y);
            y * y / (2.0 * nu * nu * r * (r + x))
        }),
        original_op: Arc::new(move |j: &Jet2, f: f64, a: f64| {
            a * a * (f.powf(2.0 * beta) * j.fxx + nu * nu * j.fyy)
        }),
    })
}

/// The power-multiplier rewrite: if `f` solves
/// `y^2 Delta f + (1 + lambda) y f_y = 0`, then `y^lambda f` solves
/// `y^2 Delta g + (1 - lambda) y g_y = 0`, and conversely.
#[derive(Debug, Clone, Copy)]
pub struct PowerMultiplier {
    pub lambda: f64,
}

impl PowerMultiplier {
    pub fn new(lambda: f64) -> Self {
        PowerMultiplier { lambda }
    }

    /// Coefficients the *input* solutions satisfy: `b2 = 1 + lambda`.
    pub fn coeffs_in(&self) -> Coefficients {
        Coefficients::constant(0.0, 1.0 + self.lambda, 0.0)
    }

    /// Coefficients the *rewritten* functions satisfy: `b2 = 1 - lambda`.
    pub fn coeffs_out(&self) -> Coefficients {
        Coefficients::constant(0.0, 1.0 - self.lambda, 0.0)
    }

    /// The multiplier itself.
    pub fn apply(
        &self,
        f: impl Fn(f64, f64) -> f64 + Send + Sync,
    ) -> impl Fn(f64, f64) -> f64 + Send + Sync {
        let lam = self.lambda;
        move |x, y: f64| y.powf(lam) * f(x, y)
    }

    /// The reverse rewrite (multiplies by `y^{-lambda}`).
    pub fn inverse(&self) -> PowerMultiplier {
        PowerMultiplier {
            lambda: -self.lambda,
        }
    }
}
