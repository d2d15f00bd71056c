//! Knot sequences: uniform and error-equalizing.
//!
//! The optimized partition places knots so that each subinterval carries the
//! same share of `integral |f''|^(2/5)`. Under that density the per-interval
//! interpolation errors `|f''|_max h^(5/2)` are asymptotically equal.

use std::cell::RefCell;

use crate::funcs::FunctionSpec;
use crate::quad;
use crate::{Error, Result};

/// Minimum knot gap, relative to the interval length.
pub const MIN_GAP: f64 = 1e-12;

/// Smallest `integral |f''|^(2/5)` treated as non-degenerate.
const DEGENERATE_MASS: f64 = 1e-300;

/// Ordered knots `a = x_0 < x_1 < ... < x_N = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    knots: Vec<f64>,
    is_uniform: bool,
}

impl Partition {
    /// Validates an arbitrary knot sequence. The result is flagged non-uniform.
    pub fn from_knots(knots: Vec<f64>) -> Result<Self> {
        Self::checked(knots, false)
    }

    fn checked(knots: Vec<f64>, is_uniform: bool) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a partition needs at least two knots, got {}",
                knots.len()
            )));
        }
        if knots.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("knots must be finite".into()));
        }
        let (a, b) = (knots[0], knots[knots.len() - 1]);
        if a >= b {
            return Err(Error::InvalidInterval { a, b });
        }
        let gap = MIN_GAP * (b - a);
        if let Some(i) = knots.windows(2).position(|w| w[1] - w[0] < gap) {
            return Err(Error::InvalidArgument(format!(
                "knots {} and {} are not strictly increasing ({} then {})",
                i,
                i + 1,
                knots[i],
                knots[i + 1]
            )));
        }
        Ok(Self { knots, is_uniform })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn into_knots(self) -> Vec<f64> {
        self.knots
    }

    pub fn n_segments(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn a(&self) -> f64 {
        self.knots[0]
    }

    pub fn b(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    pub fn is_uniform(&self) -> bool {
        self.is_uniform
    }

    /// Endpoints of the `i`-th subinterval, zero-based.
    pub fn interval(&self, i: usize) -> (f64, f64) {
        (self.knots[i], self.knots[i + 1])
    }

    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.knots.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.knots.windows(2).map(|w| w[1] - w[0])
    }
}

/// Knot `i` of the uniform `n`-segment partition of `[a, b]`.
///
/// Table evaluation reconstructs uniform knots with this same expression, so
/// both agree bit for bit.
#[inline]
pub fn uniform_knot(a: f64, b: f64, n: usize, i: usize) -> f64 {
    uniform_knot_with_step(a, b, uniform_step(a, b, n), n, i)
}

/// Spacing `(b - a) / n` as used by [`uniform_knot`].
#[inline]
pub fn uniform_step(a: f64, b: f64, n: usize) -> f64 {
    (b - a) / n as f64
}

/// [`uniform_knot`] with the spacing precomputed by [`uniform_step`].
#[inline]
pub fn uniform_knot_with_step(a: f64, b: f64, step: f64, n: usize, i: usize) -> f64 {
    if i >= n {
        b
    } else {
        a + i as f64 * step
    }
}

pub fn uniform(a: f64, b: f64, n_segments: usize) -> Result<Partition> {
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInterval { a, b });
    }
    if n_segments == 0 {
        return Err(Error::InvalidArgument(
            "n_segments must be at least 1".into(),
        ));
    }
    let knots = (0..=n_segments)
        .map(|i| uniform_knot(a, b, n_segments, i))
        .collect();
    Partition::checked(knots, true)
}

/// Grid resolution used for the cumulative knot distribution.
pub fn default_grid_size(n_segments: usize) -> usize {
    (64 * n_segments).max(4096)
}

/// Error-equalizing partition with knot density proportional to `|f''|^(2/5)`.
///
/// If `f''` vanishes on all of `[a, b]` the uniform partition is returned
/// (and flagged uniform).
pub fn optimized(fs: &FunctionSpec, a: f64, b: f64, n_segments: usize) -> Result<Partition> {
    optimized_with_grid(fs, a, b, n_segments, default_grid_size(n_segments))
}

pub fn optimized_with_grid(
    fs: &FunctionSpec,
    a: f64,
    b: f64,
    n_segments: usize,
    grid: usize,
) -> Result<Partition> {
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInterval { a, b });
    }
    if n_segments == 0 {
        return Err(Error::InvalidArgument(
            "n_segments must be at least 1".into(),
        ));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let density = |t: f64| match fs.fpp(t) {
        Ok(v) => v.abs().powf(0.4),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let table = quad::cumulative_table(density, a, b, grid);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let table = table?;
    let total = table.total();
    if total <= DEGENERATE_MASS {
        log::warn!(
            "{}: f'' vanishes on [{a}, {b}]; using the uniform partition",
            fs.id()
        );
        return uniform(a, b, n_segments);
    }

    let mut knots = Vec::with_capacity(n_segments + 1);
    knots.push(a);
    for i in 1..n_segments {
        let level = total * (i as f64 / n_segments as f64);
        knots.push(invert_level(&table.grid, &table.values, level));
    }
    knots.push(b);
    enforce_min_gap(&mut knots, MIN_GAP * (b - a));
    Partition::checked(knots, false)
}

/// Leftmost abscissa where the piecewise-linear interpolant of
/// `(grid, values)` reaches `level`, for `0 < level <= values[last]`.
fn invert_level(grid: &[f64], values: &[f64], level: f64) -> f64 {
    let j = values
        .partition_point(|&g| g < level)
        .clamp(1, values.len() - 1);
    let (g0, g1) = (values[j - 1], values[j]);
    let (t0, t1) = (grid[j - 1], grid[j]);
    if g1 <= g0 {
        return t1;
    }
    let frac = ((level - g0) / (g1 - g0)).clamp(0.0, 1.0);
    t0 + frac * (t1 - t0)
}

/// Pushes knots apart so consecutive gaps are at least `gap`; endpoints stay.
fn enforce_min_gap(knots: &mut [f64], gap: f64) {
    let n = knots.len() - 1;
    let step_past = |from: f64, sign: f64| {
        let mut x = from + sign * gap;
        while (x - from).abs() < gap {
            x = if sign > 0.0 {
                x.next_up()
            } else {
                x.next_down()
            };
        }
        x
    };
    for i in 1..n {
        if knots[i] - knots[i - 1] < gap {
            knots[i] = step_past(knots[i - 1], 1.0);
        }
    }
    for i in (1..n).rev() {
        if knots[i + 1] - knots[i] < gap {
            knots[i] = step_past(knots[i + 1], -1.0);
        }
    }
}
