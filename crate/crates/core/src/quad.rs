//! Adaptive Simpson quadrature and a few integrals built on it, plus a
//! tanh-sinh rule for integrands with algebraic endpoint singularities.

use crate::{Error, Result};

/// Absolute tolerance used throughout the crate unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Recursion limit of the adaptive bisection.
pub const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub evaluations: usize,
}

/// Knobs for [`integrate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Absolute tolerance, halved at each bisection.
    pub abs_tol: f64,
    /// Optional relative tolerance against the local panel value; zero disables it.
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Hard cap on integrand evaluations. Integrands whose rounding noise
    /// exceeds the requested tolerance would otherwise bisect exponentially.
    pub max_evaluations: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: 0.0,
            max_depth: MAX_DEPTH,
            max_evaluations: 20_000_000,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self::absolute(DEFAULT_TOL)
    }
}

/// Integrates `g` over `[a, b]` to absolute tolerance `tol`.
///
/// Panels are accepted when `|S_fine - S_coarse| <= 15 tol_local` and the
/// Richardson-corrected fine value is kept.
pub fn integrate<G>(g: G, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    integrate_with(g, a, b, &QuadOptions::absolute(tol))
}

pub fn integrate_with<G>(g: G, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    if !(opts.abs_tol > 0.0 || opts.rel_tol > 0.0) || opts.abs_tol < 0.0 || opts.rel_tol < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "quadrature tolerance must be positive (abs {}, rel {})",
            opts.abs_tol, opts.rel_tol
        )));
    }
    let mut run = Run {
        g: &g,
        opts,
        evaluations: 0,
        est_abs_error: 0.0,
        exhausted: false,
    };
    let fa = run.sample(a)?;
    let fb = run.sample(b)?;
    let m = 0.5 * (a + b);
    let fm = run.sample(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let value = run.refine([a, m, b], [fa, fm, fb], whole, opts.abs_tol, 0)?;
    if run.exhausted {
        return Err(Error::QuadratureNoConvergence {
            a,
            b,
            partial: value,
        });
    }
    Ok(QuadResult {
        value,
        est_abs_error: run.est_abs_error,
        evaluations: run.evaluations,
    })
}

struct Run<'a, G> {
    g: &'a G,
    opts: &'a QuadOptions,
    evaluations: usize,
    est_abs_error: f64,
    exhausted: bool,
}

impl<G: Fn(f64) -> f64> Run<'_, G> {
    fn sample(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let y = (self.g)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { x })
        }
    }

    fn refine(
        &mut self,
        x: [f64; 3],
        y: [f64; 3],
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let [a, m, b] = x;
        let [fa, fm, fb] = y;
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.sample(lm)?;
        let frm = self.sample(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let fine = left + right;
        let delta = fine - whole;
        let local_tol = tol.max(self.opts.rel_tol * fine.abs());
        let converged = delta.abs() <= 15.0 * local_tol;
        let stuck = depth >= self.opts.max_depth
            || self.evaluations >= self.opts.max_evaluations
            || !(a < lm && lm < m && m < rm && rm < b);
        if converged || stuck || self.exhausted {
            if !converged {
                self.exhausted = true;
            }
            self.est_abs_error += delta.abs() / 15.0;
            return Ok(fine + delta / 15.0);
        }
        let l = self.refine([a, lm, m], [fa, flm, fm], left, 0.5 * tol, depth + 1)?;
        let r = self.refine([m, rm, b], [fm, frm, fb], right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a < b && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b })
    }
}

/// Largest level of [`integrate_tanh_sinh`]; step `2^-TS_MAX_LEVEL`.
pub const TS_MAX_LEVEL: u32 = 12;
const TS_T_MAX: f64 = 6.0;

/// Tanh-sinh (double exponential) quadrature over `[a, b]`.
///
/// The integrand is never sampled at the endpoints, and nodes cluster
/// doubly exponentially towards them, so integrands like `|t - a|^p`
/// (`p > -1`) converge at full rate. Levels halve the step until two
/// successive sums agree to `max(abs_tol, rel_tol |sum|)`. `max_depth` is
/// ignored.
pub fn integrate_tanh_sinh<G>(g: G, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    let half = 0.5 * (b - a);
    let evaluations = std::cell::Cell::new(0usize);
    // Contribution of the node pair at +-t, weighted but not scaled by h.
    let pair = |t: f64| -> Result<f64> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // 1 - tanh(u), computed without cancellation
        let q = 2.0 / ((2.0 * u).exp() + 1.0);
        let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() * q * (2.0 - q);
        let offset = half * q;
        let mut s = 0.0;
        for x in [a + offset, b - offset] {
            if a < x && x < b {
                evaluations.set(evaluations.get() + 1);
                let y = g(x);
                if !y.is_finite() {
                    return Err(Error::Evaluation { x });
                }
                s += w * y;
            }
        }
        Ok(s)
    };
    let centre = {
        evaluations.set(evaluations.get() + 1);
        let x = a + half;
        let y = g(x);
        if !y.is_finite() {
            return Err(Error::Evaluation { x });
        }
        half * std::f64::consts::FRAC_PI_2 * y
    };
    let mut h = 1.0;
    let mut sum = centre;
    let mut k = 1.0;
    while k <= TS_T_MAX {
        sum += pair(k)?;
        k += 1.0;
    }
    let mut value = h * sum;
    let mut diff = f64::INFINITY;
    for _level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let mut t = h;
        while t <= TS_T_MAX {
            sum += pair(t)?;
            t += 2.0 * h;
        }
        let next = h * sum;
        diff = (next - value).abs();
        value = next;
        if diff <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                est_abs_error: diff,
                evaluations: evaluations.get(),
            });
        }
        if evaluations.get() >= opts.max_evaluations {
            break;
        }
    }
    log::debug!("tanh-sinh on [{a}, {b}] stopped with step difference {diff:e}");
    Err(Error::QuadratureNoConvergence {
        a,
        b,
        partial: value,
    })
}

/// Smallest meaningful absolute tolerance for `integral of (u - v)^2` over
/// an interval of `width`, where `u` and `v` are of size `scale`.
///
/// Rounding in `u - v` is about `eps * scale`, so near the zeros of the
/// residual no panel can resolve the integral to less than that noise; a
/// tighter absolute tolerance would bisect until the budget runs out.
pub fn squared_residual_floor(scale: f64, width: f64) -> f64 {
    64.0 * f64::EPSILON * scale * scale * width
}

/// L2 distance `sqrt(integral of (u - v)^2)` over `[a, b]`.
pub fn l2_distance<U, V>(u: U, v: V, a: f64, b: f64, tol: f64) -> Result<f64>
where
    U: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    let r = integrate(
        |x| {
            let d = u(x) - v(x);
            d * d
        },
        a,
        b,
        tol,
    )?;
    Ok(r.value.max(0.0).sqrt())
}

/// Running integral of a nonnegative density on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeTable {
    /// `t_j = a + j (b - a) / m`, `j = 0..=m`, with `t_m = b` exactly.
    pub grid: Vec<f64>,
    /// `G(t_j)`, unnormalized and nondecreasing.
    pub values: Vec<f64>,
}

impl CumulativeTable {
    pub fn total(&self) -> f64 {
        *self.values.last().expect("table has at least two points")
    }
}

/// Tabulates `G(t) = integral from a to t of g` on `m` uniform cells, one
/// Simpson panel per cell.
pub fn cumulative_table<G>(g: G, a: f64, b: f64, m: usize) -> Result<CumulativeTable>
where
    G: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "cumulative grid needs m >= 2, got {m}"
        )));
    }
    let density = |t: f64| -> Result<f64> {
        let v = g(t);
        if !v.is_finite() {
            Err(Error::Evaluation { x: t })
        } else if v < 0.0 {
            Err(Error::InvalidDensity { t, value: v })
        } else {
            Ok(v)
        }
    };
    let step = (b - a) / m as f64;
    let grid: Vec<f64> = (0..=m)
        .map(|j| if j == m { b } else { a + j as f64 * step })
        .collect();
    let mut values = Vec::with_capacity(m + 1);
    values.push(0.0);
    let mut acc = 0.0;
    let mut g_left = density(grid[0])?;
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let g_mid = density(0.5 * (lo + hi))?;
        let g_right = density(hi)?;
        acc += (hi - lo) / 6.0 * (g_left + 4.0 * g_mid + g_right);
        values.push(acc);
        g_left = g_right;
    }
    Ok(CumulativeTable { grid, values })
}
