//! TOML problem-file schema for the `solve` subcommand.
//!
//! Coefficients and boundary values are either plain numbers or named
//! presets; presets cover the operators appearing in the closed-form
//! catalog.

use serde::Deserialize;
use std::sync::Arc;

use eulerlab_core::operator::{Coefficients, HalfPlaneRect};
use eulerlab_core::solver::{BcMode, BoundarySpec};

#[derive(Deserialize)]
pub struct ProblemFile {
    pub domain: DomainSpec,
    pub coeffs: CoeffSpec,
    pub bc: BcSpec,
}

#[derive(Deserialize)]
pub struct DomainSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

#[derive(Deserialize)]
pub struct CoeffSpec {
    pub b1: NumOrName,
    pub b2: NumOrName,
    pub c: NumOrName,
    #[serde(default = "zero_entry")]
    pub g: NumOrName,
    #[serde(default)]
    pub lambda: Option<f64>,
}

fn zero_entry() -> NumOrName {
    NumOrName::Num(0.0)
}

#[derive(Deserialize)]
pub struct BcSpec {
    pub mode: String,
    pub top: NumOrName,
    pub left: NumOrName,
    pub right: NumOrName,
    #[serde(default)]
    pub bottom: Option<NumOrName>,
}

/// A constant or the name of a preset profile.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum NumOrName {
    Num(f64),
    Name(String),
}

type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

fn coeff_fn(spec: &NumOrName) -> anyhow::Result<Fn2> {
    Ok(match spec {
        NumOrName::Num(v) => {
            let v = *v;
            Arc::new(move |_, _| v)
        }
        NumOrName::Name(name) => match name.as_str() {
            "zero" => Arc::new(|_, _| 0.0),
            "one" => Arc::new(|_, _| 1.0),
            // the entire-solution counterexample operators
            "neg_quarter_y" => Arc::new(|_, y| -0.25 * y),
            "neg_y" => Arc::new(|_, y| -y),
            // Heston-type transport coefficients
            "one_plus_y" => Arc::new(|_, y| 1.0 + y),
            "one_minus_y" => Arc::new(|_, y| 1.0 - y),
            // the negative-c decay example
            "neg_y2_over_1py2" => Arc::new(|_, y| -y * y / (1.0 + y * y)),
            other => anyhow::bail!("unknown coefficient preset `{other}`"),
        },
    })
}

fn profile_fn(spec: &NumOrName) -> anyhow::Result<Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
    Ok(match spec {
        NumOrName::Num(v) => {
            let v = *v;
            Arc::new(move |_| v)
        }
        NumOrName::Name(name) => match name.as_str() {
            "zero" => Arc::new(|_| 0.0),
            "one" => Arc::new(|_| 1.0),
            "cos" => Arc::new(|t: f64| t.cos()),
            "two_plus_cos" => Arc::new(|t: f64| 2.0 + t.cos()),
            "one_plus_sq" => Arc::new(|t: f64| 1.0 + t * t),
            "ramp" => Arc::new(|t: f64| 0.5 + 0.5 * t.tanh()),
            other => anyhow::bail!("unknown boundary preset `{other}`"),
        },
    })
}

impl ProblemFile {
    pub fn build(&self) -> anyhow::Result<(Coefficients, HalfPlaneRect, BoundarySpec)> {
        let d = HalfPlaneRect::new(
            self.domain.x_min,
            self.domain.x_max,
            self.domain.y_max,
            self.domain.nx,
            self.domain.ny,
        )?;
        let b1 = coeff_fn(&self.coeffs.b1)?;
        let b2 = coeff_fn(&self.coeffs.b2)?;
        let c = coeff_fn(&self.coeffs.c)?;
        let g = coeff_fn(&self.coeffs.g)?;
        let lambda = self.coeffs.lambda.unwrap_or(10.0);
        let coeffs = Coefficients {
            b1,
            b2,
            c,
            g,
            lambda_bound: lambda,
        };
        let mode = match self.bc.mode.as_str() {
            "degenerate_closed" => BcMode::DegenerateClosed,
            "four_sided" => BcMode::FourSided,
            other => anyhow::bail!("unknown bc mode `{other}`"),
        };
        let top = profile_fn(&self.bc.top)?;
        let left = profile_fn(&self.bc.left)?;
        let right = profile_fn(&self.bc.right)?;
        let bottom = match (&self.bc.bottom, mode) {
            (Some(b), BcMode::FourSided) => Some(profile_fn(b)?),
            (None, BcMode::FourSided) => anyhow::bail!("four_sided mode requires bc.bottom"),
            (Some(_), BcMode::DegenerateClosed) => {
                anyhow::bail!("degenerate_closed mode must not set bc.bottom")
            }
            (None, BcMode::DegenerateClosed) => None,
        };
        let bc = BoundarySpec {
            mode,
            top: Arc::new(move |x| top(x)),
            left: Arc::new(move |y| left(y)),
            right: Arc::new(move |y| right(y)),
            bottom: bottom.map(|b| {
                let b = b.clone();
                Arc::new(move |x: f64| b(x)) as Arc<dyn Fn(f64) -> f64 + Send + Sync>
            }),
        };
        Ok((coeffs, d, bc))
    }
}
