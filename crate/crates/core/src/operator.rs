//! The Euler-type operator `L(f) = y^2 (f_xx + f_yy) + y (b1 f_x + b2 f_y) + c f`
//! on half-plane rectangles: coefficient bundles, grid functions, pointwise
//! application and grid residuals.

use std::io::Write;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// A coefficient as a pointwise-evaluable function of (x, y).
pub type CoefFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Coefficient bundle of an Euler-type operator, plus the bound `Lambda`
/// that is assumed to dominate |b1|, |b2|, |c| (and |g|) on the active domain.
///
/// Coefficients are function handles, not symbols: only pointwise
/// evaluability is required, matching the operator's minimal (measurable)
/// hypotheses.
#[derive(Clone)]
pub struct Coefficients {
    pub b1: CoefFn,
    pub b2: CoefFn,
    pub c: CoefFn,
    /// Source term of `L(f) = g`.
    pub g: CoefFn,
    pub lambda_bound: f64,
}

impl std::fmt::Debug for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coefficients")
            .field("lambda_bound", &self.lambda_bound)
            .finish_non_exhaustive()
    }
}

/// Sampled consistency flags for a coefficient bundle (b2 >= 1, c >= 0,
/// c == 0), plus whether the Lambda bound held at every sampled point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffFlags {
    pub b2_ge_1: bool,
    pub c_ge_0: bool,
    pub c_zero: bool,
    pub lambda_ok: bool,
}

impl Coefficients {
    pub fn new<F1, F2, F3, F4>(b1: F1, b2: F2, c: F3, g: F4, lambda_bound: f64) -> Self
    where
        F1: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        F3: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        F4: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Coefficients {
            b1: Arc::new(b1),
            b2: Arc::new(b2),
            c: Arc::new(c),
            g: Arc::new(g),
            lambda_bound,
        }
    }

    /// Constant-coefficient homogeneous operator.
    pub fn constant(b1: f64, b2: f64, c: f64) -> Self {
        let lambda = b1.abs().max(b2.abs()).max(c.abs()).max(1.0);
        Coefficients::new(
            move |_, _| b1,
            move |_, _| b2,
            move |_, _| c,
            |_, _| 0.0,
            lambda,
        )
    }

    /// Pure `y^2 (f_xx + f_yy)`.
    pub fn laplace_like() -> Self {
        Coefficients::constant(0.0, 0.0, 0.0)
    }

    /// Apply the full operator at a point given the value and derivatives.
    pub fn apply_jet(&self, x: f64, y: f64, j: &Jet2) -> f64 {
        y * y * (j.fxx + j.fyy) + y * ((self.b1)(x, y) * j.fx + (self.b2)(x, y) * j.fy)
            + (self.c)(x, y) * j.f
    }

    /// Sample the coefficients at `n` random points of `rect` and report the
    /// sign/bound flags. Deterministic for a fixed RNG state.
    pub fn sample_flags<R: Rng>(&self, rect: &HalfPlaneRect, n: usize, rng: &mut R) -> CoeffFlags {
        let mut flags = CoeffFlags {
            b2_ge_1: true,
            c_ge_0: true,
            c_zero: true,
            lambda_ok: true,
        };
        for _ in 0..n {
            let x = rng.gen_range(rect.x_min..=rect.x_max);
            let y = rng.gen_range(0.0..=rect.y_max);
            let b1 = (self.b1)(x, y);
            let b2 = (self.b2)(x, y);
            let c = (self.c)(x, y);
            let g = (self.g)(x, y);
            flags.b2_ge_1 &= b2 >= 1.0;
            flags.c_ge_0 &= c >= 0.0;
            flags.c_zero &= c == 0.0;
            flags.lambda_ok &= b1.abs() <= self.lambda_bound
                && b2.abs() <= self.lambda_bound
                && c.abs() <= self.lambda_bound
                && g.abs() <= self.lambda_bound;
        }
        flags
    }
}

/// A rectangle `[x_min, x_max] x [0, y_max]` resting on the degenerate edge,
/// with grid counts. Grid nodes are `x_i = x_min + i hx`, `y_j = j hy`
/// (the `y = 0` row is always meshed; `includes_degenerate_edge` says
/// whether it belongs to the domain or is mere scaffolding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneRect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub includes_degenerate_edge: bool,
    pub nx: usize,
    pub ny: usize,
}

impl HalfPlaneRect {
    pub fn new(x_min: f64, x_max: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::GridTooCoarse { nx, ny });
        }
        if !(x_max > x_min) || !(y_max > 0.0) {
            return Err(Error::Domain {
                op: "HalfPlaneRect",
                msg: format!("degenerate extent: x in [{x_min}, {x_max}], y_max = {y_max}"),
            });
        }
        Ok(HalfPlaneRect {
            x_min,
            x_max,
            y_max,
            includes_degenerate_edge: true,
            nx,
            ny,
        })
    }

    /// The Harnack-theorem rectangle: `x in [-4 L y0, 4 L y0], y in [0, y0]`.
    pub fn harnack_box(y0: f64, lambda: f64, nx: usize, ny: usize) -> Result<Self> {
        HalfPlaneRect::new(-4.0 * lambda * y0, 4.0 * lambda * y0, y0, nx, ny)
    }

    #[inline]
    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    #[inline]
    pub fn hy(&self) -> f64 {
        self.y_max / (self.ny - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.hx()
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.hy()
    }

    /// Index of the grid column nearest to `x` (and row nearest to `y`).
    pub fn nearest(&self, x: f64, y: f64) -> (usize, usize) {
        let i = ((x - self.x_min) / self.hx()).round() as i64;
        let j = (y / self.hy()).round() as i64;
        (
            i.clamp(0, self.nx as i64 - 1) as usize,
            j.clamp(0, self.ny as i64 - 1) as usize,
        )
    }
}

/// A real function sampled on the grid of a [`HalfPlaneRect`].
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub domain: HalfPlaneRect,
    /// Stored y-row-major: `values[j * nx + i]`.
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(domain: HalfPlaneRect) -> Self {
        GridFunction {
            domain,
            values: vec![0.0; domain.nx * domain.ny],
        }
    }

    pub fn from_fn(domain: HalfPlaneRect, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut gf = GridFunction::zeros(domain);
        for j in 0..domain.ny {
            for i in 0..domain.nx {
                let v = f(domain.x(i), domain.y(j));
                gf.values[j * domain.nx + i] = v;
            }
        }
        gf
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.domain.nx + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[j * self.domain.nx + i] = v;
    }

    /// Max norm over all nodes.
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Max norm over interior nodes only (excludes all four edges).
    pub fn max_norm_interior(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 1..self.domain.ny - 1 {
            for i in 1..self.domain.nx - 1 {
                m = m.max(self.get(i, j).abs());
            }
        }
        m
    }

    /// Serialize as CSV `x,y,value`, row-major (y rows outer, x inner),
    /// 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "x,y,value")?;
        for j in 0..self.domain.ny {
            for i in 0..self.domain.nx {
                writeln!(
                    w,
                    "{:.16e},{:.16e},{:.16e}",
                    self.domain.x(i),
                    self.domain.y(j),
                    self.get(i, j)
                )?;
            }
        }
        Ok(())
    }
}

/// Value and derivatives of a twice-differentiable function at a point.
#[derive(Debug, Clone, Copy, Default)]
pub struct Jet2 {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

/// A twice-differentiable scalar field. `jet` may supply analytic
/// derivatives; when it returns `None` callers fall back to central
/// differencing of `eval`.
pub trait Field2: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> f64;
    fn jet(&self, _x: f64, _y: f64) -> Option<Jet2> {
        None
    }
}

/// Field backed by a plain closure (numeric derivatives).
pub struct ClosureField<F: Fn(f64, f64) -> f64 + Send + Sync>(pub F);

impl<F: Fn(f64, f64) -> f64 + Send + Sync> Field2 for ClosureField<F> {
    fn eval(&self, x: f64, y: f64) -> f64 {
        (self.0)(x, y)
    }
}

/// Field with caller-supplied analytic jet.
pub struct JetField<F: Fn(f64, f64) -> Jet2 + Send + Sync>(pub F);

impl<F: Fn(f64, f64) -> Jet2 + Send + Sync> Field2 for JetField<F> {
    fn eval(&self, x: f64, y: f64) -> f64 {
        (self.0)(x, y).f
    }
    fn jet(&self, x: f64, y: f64) -> Option<Jet2> {
        Some((self.0)(x, y))
    }
}

/// Central-difference jet with degeneracy-scaled step `h = 1e-5 y`, so the
/// operator application error stays O(1e-6) after the `y^2` weight.
pub fn numeric_jet(f: &dyn Field2, x: f64, y: f64) -> Jet2 {
    let h = 1e-5 * y;
    let fc = f.eval(x, y);
    let fxp = f.eval(x + h, y);
    let fxm = f.eval(x - h, y);
    let fyp = f.eval(x, y + h);
    let fym = f.eval(x, y - h);
    let fpp = f.eval(x + h, y + h);
    let fpm = f.eval(x + h, y - h);
    let fmp = f.eval(x - h, y + h);
    let fmm = f.eval(x - h, y - h);
    Jet2 {
        f: fc,
        fx: (fxp - fxm) / (2.0 * h),
        fy: (fyp - fym) / (2.0 * h),
        fxx: (fxp - 2.0 * fc + fxm) / (h * h),
        fyy: (fyp - 2.0 * fc + fym) / (h * h),
        fxy: (fpp - fpm - fmp + fmm) / (4.0 * h * h),
    }
}

/// Apply `L` to a function handle at a single point with `y > 0`.
pub fn apply_pointwise(coeffs: &Coefficients, f: &dyn Field2, x: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain {
            op: "apply_pointwise",
            msg: format!("need y > 0, got {y}"),
        });
    }
    let jet = f.jet(x, y).unwrap_or_else(|| numeric_jet(f, x, y));
    Ok(coeffs.apply_jet(x, y, &jet))
}

/// Residual `L(f) - g` at the interior nodes of the grid (second-order
/// central differences); edge nodes of the output are zero. Returns the
/// residual grid and its interior max norm.
pub fn residual_grid(coeffs: &Coefficients, f: &GridFunction) -> Result<(GridFunction, f64)> {
    let d = f.domain;
    if d.nx < 3 || d.ny < 3 {
        return Err(Error::GridTooCoarse { nx: d.nx, ny: d.ny });
    }
    let hx = d.hx();
    let hy = d.hy();
    let mut out = GridFunction::zeros(d);
    let mut max = 0.0f64;
    for j in 1..d.ny - 1 {
        let y = d.y(j);
        for i in 1..d.nx - 1 {
            let x = d.x(i);
            let fc = f.get(i, j);
            let fxx = (f.get(i + 1, j) - 2.0 * fc + f.get(i - 1, j)) / (hx * hx);
            let fyy = (f.get(i, j + 1) - 2.0 * fc + f.get(i, j - 1)) / (hy * hy);
            let fx = (f.get(i + 1, j) - f.get(i - 1, j)) / (2.0 * hx);
            let fy = (f.get(i, j + 1) - f.get(i, j - 1)) / (2.0 * hy);
            let l = y * y * (fxx + fyy)
                + y * ((coeffs.b1)(x, y) * fx + (coeffs.b2)(x, y) * fy)
                + (coeffs.c)(x, y) * fc;
            let r = l - (coeffs.g)(x, y);
            out.set(i, j, r);
            max = max.max(r.abs());
        }
    }
    Ok((out, max))
}
