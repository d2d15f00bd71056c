//! Continuous piecewise-linear (CPWL) approximation of univariate functions.
//!
//! The crate builds two CPWL approximations of a twice-differentiable function
//! `f` on an interval `[a, b]`:
//!
//! * the linear interpolant, which matches `f` at every knot, and
//! * the L2 orthogonal projection onto the hat-function basis, which minimizes
//!   the L2 distance to `f` over all CPWL functions on the same knots.
//!
//! Knots are placed either uniformly or by error equalization, where the local
//! knot density follows `|f''|^(2/5)`. The [`analysis`] module measures true L2
//! errors and evaluates the asymptotic error predictions, [`lut`] turns a CPWL
//! function into a fast lookup table, [`tableio`] serializes those tables, and
//! [`bench`] times table evaluation against direct evaluation.
//!
//! ```
//! use cpwl::{approx, funcs, partition};
//!
//! let gauss = funcs::builtin("gaussian").unwrap();
//! let knots = partition::optimized(&gauss, 0.0, 8.0, 64).unwrap();
//! let pf = approx::project(&gauss, &knots, approx::DEFAULT_TOL).unwrap();
//! let y = approx::eval_cpwl(&pf, 0.5).unwrap();
//! assert!((y - gauss.eval(0.5)).abs() < 1e-4);
//! ```

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod approx;
pub mod bench;
mod error;
pub mod funcs;
pub mod lut;
pub mod partition;
pub mod quad;
pub mod tableio;

pub use approx::CpwlFunction;
pub use error::{Error, Result};
pub use funcs::FunctionSpec;
pub use lut::{LutTable, OobPolicy};
pub use partition::Partition;
