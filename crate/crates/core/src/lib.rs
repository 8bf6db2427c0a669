//! Numerical laboratory for second-order elliptic operators with Euler-type
//! boundary degeneracy on the half-plane `{y >= 0}`.
//!
//! The operator under study is
//!
//! ```text
//! L(f) = y^2 (f_xx + f_yy) + y (b1 f_x + b2 f_y) + c f
//! ```
//!
//! with bounded measurable coefficients. The crate provides:
//!
//! * [`specfun`] — special functions needed by the explicit barriers and the
//!   closed-form solution catalog (confluent/Gauss hypergeometric, Bessel,
//!   complete elliptic integrals),
//! * [`operator`] — operator application and grid residuals,
//! * [`transforms`] — changes of variables bringing Keldysh/Tricomi,
//!   population-dynamics, Heston and SABR operators to Euler form,
//! * [`barriers`] — evaluable comparison functions with certified sign,
//! * [`catalog`] — a regression catalog of closed-form solutions,
//!   sub/supersolutions and counterexamples,
//! * [`solver`] — a finite-difference Dirichlet solver with a degenerate-edge
//!   closure for the `b2 >= 1` regime,
//! * [`kernel`] — boundary-impulse kernels and boundary-value convolution for
//!   the `b2 < 1` regime,
//! * [`verify`] — quantitative checks of the Harnack floor, continuity,
//!   gradient bound, almost-monotonicity, unspecifiability and polynomial
//!   growth, with margins reported per check.

pub mod barriers;
pub mod catalog;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod operator;
pub mod quad;
pub mod solver;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use operator::{Coefficients, GridFunction, HalfPlaneRect};
pub use specfun::SpecialValue;
