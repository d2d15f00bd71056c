//! Target functions: evaluable `f` and `f''` plus a default domain.

mod bessel;
mod expr;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use bessel::{j0, j1};

/// Shared real-valued map.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// A target function with its second derivative and default domain.
///
/// When no closed-form second derivative is attached, [`FunctionSpec::fpp`]
/// falls back to [`numeric_fpp`].
#[derive(Clone)]
pub struct FunctionSpec {
    id: String,
    f: RealFn,
    fpp: Option<RealFn>,
    domain: (f64, f64),
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("id", &self.id)
            .field("analytic_fpp", &self.fpp.is_some())
            .field("domain", &self.domain)
            .finish()
    }
}

impl FunctionSpec {
    pub fn new<F>(id: impl Into<String>, f: F, domain: (f64, f64)) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            id: id.into(),
            f: Arc::new(f),
            fpp: None,
            domain,
        }
    }

    /// Attaches a closed-form second derivative.
    pub fn with_second_derivative<G>(mut self, fpp: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.fpp = Some(Arc::new(fpp));
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn has_analytic_fpp(&self) -> bool {
        self.fpp.is_some()
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Evaluates `f`, rejecting non-finite results.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { x })
        }
    }

    /// Second derivative at `x`: closed form when available, otherwise a
    /// five-point central difference.
    pub fn fpp(&self, x: f64) -> Result<f64> {
        match &self.fpp {
            Some(g) => {
                let y = g(x);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::Evaluation { x })
                }
            }
            None => numeric_fpp(&*self.f, x),
        }
    }

    /// A cheap clonable handle to `f` alone.
    pub fn function(&self) -> RealFn {
        Arc::clone(&self.f)
    }
}

/// Built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// Standard normal density on `[0, 8]`.
    Gaussian,
    /// Cauchy density with peak `x0` and half-width `gamma`, on `[0, 6]`.
    Lorentzian { x0: f64, gamma: f64 },
    /// Bessel function of the first kind of order zero, on `[0, 20]`.
    BesselJ0,
    /// `(x+4)(x+2)(x+1)(x-1)(x-3)` on `[-4, 3]`.
    Quintic,
}

impl Builtin {
    pub fn spec(self) -> Result<FunctionSpec> {
        Ok(match self {
            Builtin::Gaussian => FunctionSpec::new(
                "gaussian",
                |x: f64| INV_SQRT_2PI * (-0.5 * x * x).exp(),
                (0.0, 8.0),
            )
            .with_second_derivative(|x: f64| (x * x - 1.0) * INV_SQRT_2PI * (-0.5 * x * x).exp()),
            Builtin::Lorentzian { x0, gamma } => {
                if !(gamma > 0.0 && gamma.is_finite() && x0.is_finite()) {
                    return Err(Error::InvalidArgument(format!(
                        "lorentzian needs finite x0 and gamma > 0, got x0 = {x0}, gamma = {gamma}"
                    )));
                }
                let scale = gamma / PI;
                let g2 = gamma * gamma;
                FunctionSpec::new(
                    format!("lorentzian({x0},{gamma})"),
                    move |x: f64| {
                        let u = x - x0;
                        scale / (u * u + g2)
                    },
                    (0.0, 6.0),
                )
                .with_second_derivative(move |x: f64| {
                    let u = x - x0;
                    let d = u * u + g2;
                    scale * (6.0 * u * u - 2.0 * g2) / (d * d * d)
                })
            }
            Builtin::BesselJ0 => FunctionSpec::new("bessel_j0", bessel::j0, (0.0, 20.0))
                .with_second_derivative(bessel::j0_second_derivative),
            Builtin::Quintic => {
                let p = Polynomial::from_roots(&[-4.0, -2.0, -1.0, 1.0, 3.0]);
                let pp = p.derivative().derivative();
                FunctionSpec::new("quintic", move |x| p.eval(x), (-4.0, 3.0))
                    .with_second_derivative(move |x| pp.eval(x))
            }
        })
    }
}

/// Looks up a built-in by name.
///
/// Accepted names: `gaussian`, `lorentzian` (peak 0, width 1),
/// `lorentzian(x0,gamma)`, `bessel_j0` (alias `j0`), `quintic`.
pub fn builtin(name: &str) -> Result<FunctionSpec> {
    let name = name.trim();
    let which = match name {
        "gaussian" => Builtin::Gaussian,
        "lorentzian" | "cauchy" => Builtin::Lorentzian {
            x0: 0.0,
            gamma: 1.0,
        },
        "bessel_j0" | "j0" => Builtin::BesselJ0,
        "quintic" => Builtin::Quintic,
        _ => match parse_lorentzian_args(name) {
            Some((x0, gamma)) => Builtin::Lorentzian { x0, gamma },
            None => return Err(Error::UnknownFunction(name.to_owned())),
        },
    };
    which.spec()
}

fn parse_lorentzian_args(name: &str) -> Option<(f64, f64)> {
    let args = name.strip_prefix("lorentzian(")?.strip_suffix(')')?;
    let (x0, gamma) = args.split_once(',')?;
    Some((x0.trim().parse().ok()?, gamma.trim().parse().ok()?))
}

/// Parses an expression in `x` into a function with a numeric `f''`.
///
/// The default domain of a parsed expression is `[0, 1]`; callers normally
/// supply their own interval.
pub fn parse_expression(src: &str) -> Result<FunctionSpec> {
    let e = expr::parse(src)?;
    Ok(FunctionSpec::new(
        src.trim(),
        move |x| e.eval(x),
        (0.0, 1.0),
    ))
}

/// Fourth-order central second difference
/// `(-f(x-2h) + 16 f(x-h) - 30 f(x) + 16 f(x+h) - f(x+2h)) / (12 h^2)`
/// with `h = eps^(1/4) * max(1, |x|)`.
pub fn numeric_fpp<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let h = f64::EPSILON.powf(0.25) * x.abs().max(1.0);
    let sample = |t: f64| {
        let y = f(t);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { x: t })
        }
    };
    let (m2, m1, c, p1, p2) = (
        sample(x - 2.0 * h)?,
        sample(x - h)?,
        sample(x)?,
        sample(x + h)?,
        sample(x + 2.0 * h)?,
    );
    Ok((-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h))
}

/// Dense polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
struct Polynomial(Vec<f64>);

impl Polynomial {
    fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        Polynomial(c)
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Polynomial(vec![0.0]);
        }
        Polynomial(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}
