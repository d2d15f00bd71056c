//! The two CPWL approximations on a fixed partition.
//!
//! * [`interpolant`]: nodal values `f(x_i)`.
//! * [`project`]: the L2-orthogonal projection; its hat-basis coefficients
//!   solve the tridiagonal Gram system `M c = b`, `m_ij = <phi_i, phi_j>`,
//!   `b_i = <f, phi_i>`.
//!
//! [`best_free_segment`] is the unconstrained least-squares line on a single
//! interval, written as offsets from the interpolant's endpoint values.

use rayon::prelude::*;

use crate::funcs::FunctionSpec;
use crate::partition::Partition;
use crate::quad::{self, QuadOptions};
use crate::{Error, Result};

/// Default absolute quadrature tolerance per hat for [`project`].
pub const DEFAULT_TOL: f64 = quad::DEFAULT_TOL;

/// A continuous piecewise-linear function given by its values at the knots.
#[derive(Debug, Clone, PartialEq)]
pub struct CpwlFunction {
    partition: Partition,
    values: Vec<f64>,
}

impl CpwlFunction {
    pub fn new(partition: Partition, values: Vec<f64>) -> Result<Self> {
        if values.len() != partition.knots().len() {
            return Err(Error::InvalidArgument(format!(
                "{} nodal values for {} knots",
                values.len(),
                partition.knots().len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                x: partition.knots()[i],
            });
        }
        Ok(Self { partition, values })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn knots(&self) -> &[f64] {
        self.partition.knots()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_cpwl(self, x)
    }

    /// Restriction to subinterval `i`: value at `x`, without bounds checks
    /// beyond `i`. Used by per-interval integrands.
    #[inline]
    pub(crate) fn eval_on_interval(&self, i: usize, x: f64) -> f64 {
        let k = self.partition.knots();
        let delta = (x - k[i]) / (k[i + 1] - k[i]);
        (1.0 - delta) * self.values[i] + delta * self.values[i + 1]
    }
}

/// Reference CPWL evaluation: binary search for the interval, then a linear
/// blend. `x = x_N` yields `v(x_N)`.
pub fn eval_cpwl(v: &CpwlFunction, x: f64) -> Result<f64> {
    let k = v.knots();
    let (a, b) = (k[0], k[k.len() - 1]);
    if !(a <= x && x <= b) {
        return Err(Error::OutOfDomain { x, a, b });
    }
    let i = k.partition_point(|&t| t <= x).clamp(1, k.len() - 1) - 1;
    Ok(v.eval_on_interval(i, x))
}

/// Nodal basis function `phi_i` of partition `p`.
pub fn hat(p: &Partition, i: usize, x: f64) -> f64 {
    let k = p.knots();
    if i > 0 && x >= k[i - 1] && x <= k[i] {
        return (x - k[i - 1]) / (k[i] - k[i - 1]);
    }
    if i + 1 < k.len() && x >= k[i] && x <= k[i + 1] {
        return (k[i + 1] - x) / (k[i + 1] - k[i]);
    }
    0.0
}

pub fn interpolant(fs: &FunctionSpec, p: &Partition) -> Result<CpwlFunction> {
    let values = p
        .knots()
        .iter()
        .map(|&x| fs.try_eval(x))
        .collect::<Result<Vec<_>>>()?;
    CpwlFunction::new(p.clone(), values)
}

/// Tridiagonal system with `sub[i] = a[i+1][i]`, `sup[i] = a[i][i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n || rhs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal shape mismatch: sub {}, diag {}, sup {}, rhs {}",
                sub.len(),
                n,
                sup.len(),
                rhs.len()
            )));
        }
        Ok(Self {
            sub,
            diag,
            sup,
            rhs,
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `|diag_i| > |sub_{i-1}| + |sup_i|` on every row.
    pub fn is_strictly_dominant(&self) -> bool {
        (0..self.dim()).all(|i| {
            let left = if i > 0 { self.sub[i - 1].abs() } else { 0.0 };
            let right = self.sup.get(i).map_or(0.0, |v| v.abs());
            self.diag[i].abs() > left + right
        })
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < self.dim() {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Gram matrix of the hat basis; `rhs` is zero.
pub fn gramian(p: &Partition) -> TridiagonalSystem {
    let h: Vec<f64> = p.widths().collect();
    let n = h.len();
    let mut diag = vec![0.0; n + 1];
    for (i, &w) in h.iter().enumerate() {
        diag[i] += w / 3.0;
        diag[i + 1] += w / 3.0;
    }
    let off: Vec<f64> = h.iter().map(|w| w / 6.0).collect();
    TridiagonalSystem {
        sub: off.clone(),
        diag,
        sup: off,
        rhs: vec![0.0; n + 1],
    }
}

/// Thomas elimination without pivoting.
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.dim();
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    let mut pivot = sys.diag[0];
    if pivot == 0.0 || !pivot.is_finite() {
        return Err(Error::SingularSystem { row: 0 });
    }
    if n > 1 {
        c_prime[0] = sys.sup[0] / pivot;
    }
    d_prime[0] = sys.rhs[0] / pivot;
    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i - 1] * c_prime[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::SingularSystem { row: i });
        }
        if i + 1 < n {
            c_prime[i] = sys.sup[i] / pivot;
        }
        d_prime[i] = (sys.rhs[i] - sys.sub[i - 1] * d_prime[i - 1]) / pivot;
    }
    let mut x = d_prime;
    for i in (0..n - 1).rev() {
        x[i] -= c_prime[i] * x[i + 1];
    }
    Ok(x)
}

/// Orthogonal projection of `f` onto the CPWL space of `p`.
///
/// Each load `<f, phi_i>` is assembled from the two adjoining intervals so
/// no quadrature call straddles the kink of a hat. Interval integrals may run
/// in parallel; assembly is in ascending interval order.
pub fn project(fs: &FunctionSpec, p: &Partition, tol: f64) -> Result<CpwlFunction> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = p.n_segments();
    let opts = QuadOptions::absolute(tol / (2.0 * (n + 1) as f64));
    let loads: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (lo, hi) = p.interval(i);
            let h = hi - lo;
            let left = quad::integrate_with(|x| fs.eval(x) * ((hi - x) / h), lo, hi, &opts)?;
            let right = quad::integrate_with(|x| fs.eval(x) * ((x - lo) / h), lo, hi, &opts)?;
            Ok((left.value, right.value))
        })
        .collect::<Result<_>>()?;
    let mut sys = gramian(p);
    for (i, (left, right)) in loads.into_iter().enumerate() {
        sys.rhs[i] += left;
        sys.rhs[i + 1] += right;
    }
    let coeffs = thomas_solve(&sys)?;
    CpwlFunction::new(p.clone(), coeffs)
}

/// Unconstrained best line on one interval.
///
/// The line is `(f(lo) + dy_left)(1 - d) + (f(hi) + dy_right) d` with
/// `d = (x - lo)/(hi - lo)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSegment {
    pub dy_left: f64,
    pub dy_right: f64,
    pub sq_error: f64,
}

/// Least-squares line over `[x_lo, x_hi]` via its 2x2 normal equations.
pub fn best_free_segment(fs: &FunctionSpec, x_lo: f64, x_hi: f64, tol: f64) -> Result<FreeSegment> {
    if !(x_lo < x_hi) {
        return Err(Error::InvalidInterval { a: x_lo, b: x_hi });
    }
    let h = x_hi - x_lo;
    let f_lo = fs.try_eval(x_lo)?;
    let f_hi = fs.try_eval(x_hi)?;
    // residual against the chord, so the loads are O(h^3) rather than O(h)
    let resid = |x: f64| {
        let d = (x - x_lo) / h;
        fs.eval(x) - ((1.0 - d) * f_lo + d * f_hi)
    };
    let opts = QuadOptions::absolute(tol).with_rel_tol(1e-12);
    let b0 = quad::integrate_with(|x| resid(x) * ((x_hi - x) / h), x_lo, x_hi, &opts)?.value;
    let b1 = quad::integrate_with(|x| resid(x) * ((x - x_lo) / h), x_lo, x_hi, &opts)?.value;
    // [h/3 h/6; h/6 h/3]^-1 = (2/h) [2 -1; -1 2]
    let dy_left = (4.0 * b0 - 2.0 * b1) / h;
    let dy_right = (4.0 * b1 - 2.0 * b0) / h;
    let scale = [f_lo, f_hi, dy_left, dy_right]
        .into_iter()
        .fold(0.0f64, |m, y| m.max(y.abs()));
    let sq_abs = (tol * tol).max(quad::squared_residual_floor(scale, h));
    let sq_opts = QuadOptions::absolute(sq_abs).with_rel_tol(1e-10);
    let sq_error = quad::integrate_with(
        |x| {
            let d = (x - x_lo) / h;
            let e = resid(x) - ((1.0 - d) * dy_left + d * dy_right);
            e * e
        },
        x_lo,
        x_hi,
        &sq_opts,
    )?
    .value
    .max(0.0);
    Ok(FreeSegment {
        dy_left,
        dy_right,
        sq_error,
    })
}
