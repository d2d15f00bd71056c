//! True L2 errors of CPWL approximations and their predicted values.
//!
//! Predictions for the interpolant follow from the per-interval estimate
//! `|f''| h^(5/2) / sqrt(120)`; the projection estimates scale the interpolant
//! figures by `1/sqrt(6)`.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::approx::{self, CpwlFunction};
use crate::funcs::FunctionSpec;
use crate::partition::{self, Partition};
use crate::quad::{self, QuadOptions};
use crate::{Error, Result};

/// Samples per interval (endpoints included) when estimating `max |f''|`.
pub const FPP_SAMPLES: usize = 1025;

const SQRT_120: f64 = 10.954_451_150_103_322;
const SQRT_6: f64 = 2.449_489_742_783_178;

/// Relative accuracy requested from every per-interval error integral.
const MEASURE_REL_TOL: f64 = 1e-9;
/// Tolerance for the curvature integrals behind the predictions.
const PREDICT_TOL: f64 = 1e-13;
/// Relative tolerance for the same integrals when `f''` is a finite
/// difference, whose rounding noise is around `1e-8` relative.
const PREDICT_TOL_NUMERIC: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartitionKind {
    Uniform,
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Interpolant,
    Projection,
}

/// One of the four partition/method combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variant {
    pub kind: PartitionKind,
    pub method: Method,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::new(PartitionKind::Uniform, Method::Interpolant),
        Variant::new(PartitionKind::Uniform, Method::Projection),
        Variant::new(PartitionKind::Optimized, Method::Interpolant),
        Variant::new(PartitionKind::Optimized, Method::Projection),
    ];

    pub const fn new(kind: PartitionKind, method: Method) -> Self {
        Self { kind, method }
    }

    pub fn partition(&self, fs: &FunctionSpec, a: f64, b: f64, n: usize) -> Result<Partition> {
        match self.kind {
            PartitionKind::Uniform => partition::uniform(a, b, n),
            PartitionKind::Optimized => partition::optimized(fs, a, b, n),
        }
    }

    pub fn approximate(&self, fs: &FunctionSpec, p: &Partition, tol: f64) -> Result<CpwlFunction> {
        match self.method {
            Method::Interpolant => approx::interpolant(fs, p),
            Method::Projection => approx::project(fs, p, tol),
        }
    }

    /// The error figure this variant is compared against.
    ///
    /// Uniform projection has no dedicated estimate; it reuses the uniform
    /// interpolant bound scaled by `1/sqrt(6)`.
    pub fn predicted(&self, fs: &FunctionSpec, a: f64, b: f64, n: usize) -> Result<f64> {
        match (self.kind, self.method) {
            (PartitionKind::Uniform, Method::Interpolant) => bound_interpolant_uniform(fs, a, b, n),
            (PartitionKind::Uniform, Method::Projection) => {
                Ok(bound_interpolant_uniform(fs, a, b, n)? / SQRT_6)
            }
            (PartitionKind::Optimized, Method::Interpolant) => {
                bound_interpolant_optimized(fs, a, b, n)
            }
            (PartitionKind::Optimized, Method::Projection) => {
                estimate_projection_optimized(fs, a, b, n)
            }
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            PartitionKind::Uniform => "uniform",
            PartitionKind::Optimized => "optimized",
        };
        let method = match self.method {
            Method::Interpolant => "interp",
            Method::Projection => "proj",
        };
        write!(f, "{kind}/{method}")
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variant `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub function_id: String,
    /// Set when the report came from [`report`]; [`measure`] alone cannot
    /// tell which method produced `v`.
    pub variant: Option<Variant>,
    pub n_segments: usize,
    pub measured_l2: f64,
    pub predicted: Option<f64>,
    pub per_interval: Vec<f64>,
    /// Median over intervals of `max |f''| h^(5/2)`.
    pub equalization_constant: Option<f64>,
}

/// Runs `g` under quadrature, surfacing the first error it reports.
fn integrate_fallible<G>(g: G, a: f64, b: f64, opts: &QuadOptions) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let out = quad::integrate_with(
        |x| match g(x) {
            Ok(y) => y,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        opts,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(out?.value),
    }
}

/// L2 distance between `f` and `v`, interval by interval.
///
/// Each `e_i^2` is integrated to `tol^2 / N` absolute or `1e-9` relative,
/// whichever is looser, but never below the rounding floor of the residual.
pub fn measure(fs: &FunctionSpec, v: &CpwlFunction, tol: f64) -> Result<ErrorReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let p = v.partition();
    let n = p.n_segments();
    let per_interval = (0..n)
        .into_par_iter()
        .map(|i| {
            let (lo, hi) = p.interval(i);
            let scale = [
                fs.try_eval(lo)?,
                fs.try_eval(hi)?,
                v.values()[i],
                v.values()[i + 1],
            ]
            .into_iter()
            .fold(0.0f64, |m, y| m.max(y.abs()));
            let abs = (tol * tol / n as f64).max(quad::squared_residual_floor(scale, hi - lo));
            let opts = QuadOptions::absolute(abs).with_rel_tol(MEASURE_REL_TOL);
            let sq = integrate_fallible(
                |x| Ok((fs.try_eval(x)? - v.eval_on_interval(i, x)).powi(2)),
                lo,
                hi,
                &opts,
            )?;
            Ok(sq.max(0.0).sqrt())
        })
        .collect::<Result<Vec<f64>>>()?;
    let measured_l2 = per_interval.iter().map(|e| e * e).sum::<f64>().sqrt();
    Ok(ErrorReport {
        function_id: fs.id().to_string(),
        variant: None,
        n_segments: n,
        measured_l2,
        predicted: None,
        per_interval,
        equalization_constant: None,
    })
}

/// Builds, measures and predicts one variant.
pub fn report(
    fs: &FunctionSpec,
    a: f64,
    b: f64,
    n: usize,
    variant: Variant,
    tol: f64,
) -> Result<ErrorReport> {
    let p = variant.partition(fs, a, b, n)?;
    let v = variant.approximate(fs, &p, tol)?;
    let mut rep = measure(fs, &v, tol)?;
    rep.variant = Some(variant);
    rep.predicted = Some(variant.predicted(fs, a, b, n)?);
    rep.equalization_constant = Some(equalization_constant(fs, &p)?);
    Ok(rep)
}

/// `max |f''|` over `FPP_SAMPLES` equispaced points of `[x_lo, x_hi]`.
pub fn max_abs_fpp(fs: &FunctionSpec, x_lo: f64, x_hi: f64) -> Result<f64> {
    let steps = (FPP_SAMPLES - 1) as f64;
    let mut m = 0.0f64;
    for k in 0..FPP_SAMPLES {
        let x = if k + 1 == FPP_SAMPLES {
            x_hi
        } else {
            x_lo + (x_hi - x_lo) * (k as f64 / steps)
        };
        m = m.max(fs.fpp(x)?.abs());
    }
    Ok(m)
}

/// `max |f''| h^(5/2) / sqrt(120)` on one interval.
pub fn bound_interpolant_interval(fs: &FunctionSpec, x_lo: f64, x_hi: f64) -> Result<f64> {
    if !(x_lo < x_hi) {
        return Err(Error::InvalidInterval { a: x_lo, b: x_hi });
    }
    Ok(max_abs_fpp(fs, x_lo, x_hi)? * (x_hi - x_lo).powf(2.5) / SQRT_120)
}

/// [`bound_interpolant_interval`] for every interval of `p`.
pub fn interval_bounds(fs: &FunctionSpec, p: &Partition) -> Result<Vec<f64>> {
    (0..p.n_segments())
        .into_par_iter()
        .map(|i| {
            let (lo, hi) = p.interval(i);
            bound_interpolant_interval(fs, lo, hi)
        })
        .collect()
}

/// Median of `max |f''| h^(5/2)` over the intervals of `p`.
pub fn equalization_constant(fs: &FunctionSpec, p: &Partition) -> Result<f64> {
    let mut c: Vec<f64> = interval_bounds(fs, p)?
        .into_iter()
        .map(|e| e * SQRT_120)
        .collect();
    c.sort_by(f64::total_cmp);
    let mid = c.len() / 2;
    Ok(if c.len() % 2 == 1 {
        c[mid]
    } else {
        0.5 * (c[mid - 1] + c[mid])
    })
}

fn check_args(a: f64, b: f64, n: usize) -> Result<()> {
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInterval { a, b });
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n_segments must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Cells scanned for sign changes of `f''`.
const ROOT_SCAN_CELLS: usize = 4096;

/// `[a, roots of f''..., b]`: sign changes located on a scan grid and
/// bisected to adjacent floats. `|f''|^(2/5)` has a cusp at each root, so
/// the curvature integrals are split there.
fn curvature_breaks(fs: &FunctionSpec, a: f64, b: f64) -> Result<Vec<f64>> {
    let step = (b - a) / ROOT_SCAN_CELLS as f64;
    let grid = |j: usize| {
        if j == ROOT_SCAN_CELLS {
            b
        } else {
            a + j as f64 * step
        }
    };
    let mut breaks = vec![a];
    let mut x0 = a;
    let mut s0 = fs.fpp(a)?;
    for j in 1..=ROOT_SCAN_CELLS {
        let x1 = grid(j);
        let s1 = fs.fpp(x1)?;
        if s1 == 0.0 && j < ROOT_SCAN_CELLS {
            breaks.push(x1);
        } else if s0 * s1 < 0.0 {
            let (mut lo, mut hi, slo) = (x0, x1, s0);
            loop {
                let mid = 0.5 * (lo + hi);
                if !(lo < mid && mid < hi) {
                    break;
                }
                let sm = fs.fpp(mid)?;
                if sm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (sm < 0.0) == (slo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            breaks.push(0.5 * (lo + hi));
        }
        x0 = x1;
        s0 = s1;
    }
    breaks.push(b);
    breaks.dedup();
    Ok(breaks)
}

fn integrate_between_breaks<G>(fs: &FunctionSpec, a: f64, b: f64, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let rel = if fs.has_analytic_fpp() {
        PREDICT_TOL
    } else {
        PREDICT_TOL_NUMERIC
    };
    let opts = QuadOptions::absolute(PREDICT_TOL).with_rel_tol(rel);
    let breaks = curvature_breaks(fs, a, b)?;
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let failure = RefCell::new(None);
        let piece = quad::integrate_tanh_sinh(
            |x| match g(x) {
                Ok(y) => y,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            w[0],
            w[1],
            &opts,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        total += piece?.value;
    }
    Ok(total)
}

/// `integral of |f''|^(2/5)` over `[a, b]`.
pub fn curvature_mass(fs: &FunctionSpec, a: f64, b: f64) -> Result<f64> {
    integrate_between_breaks(fs, a, b, |t| Ok(fs.fpp(t)?.abs().powf(0.4)))
}

/// `||f''||` in L2 over `[a, b]`.
pub fn fpp_l2_norm(fs: &FunctionSpec, a: f64, b: f64) -> Result<f64> {
    Ok(integrate_between_breaks(fs, a, b, |t| Ok(fs.fpp(t)?.powi(2)))?.sqrt())
}

/// `(integral of |f''|^(2/5))^(5/2) / (N^2 sqrt(120))`.
pub fn bound_interpolant_optimized(fs: &FunctionSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    check_args(a, b, n)?;
    let nn = n as f64;
    Ok(curvature_mass(fs, a, b)?.powf(2.5) / (nn * nn * SQRT_120))
}

pub fn estimate_projection_optimized(fs: &FunctionSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    Ok(bound_interpolant_optimized(fs, a, b, n)? / SQRT_6)
}

/// `(b - a)^2 ||f''|| / (N^2 sqrt(120))`.
pub fn bound_interpolant_uniform(fs: &FunctionSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    check_args(a, b, n)?;
    let nn = n as f64;
    Ok((b - a).powi(2) * fpp_l2_norm(fs, a, b)? / (nn * nn * SQRT_120))
}

/// Predicted error ratio optimized/uniform for the interpolant; independent
/// of N. Returns 1 when `f''` vanishes, since no partition helps.
pub fn optimization_gain(fs: &FunctionSpec, a: f64, b: f64) -> Result<f64> {
    let uniform = bound_interpolant_uniform(fs, a, b, 1)?;
    let optimized = bound_interpolant_optimized(fs, a, b, 1)?;
    if uniform <= 0.0 {
        return Ok(1.0);
    }
    Ok(optimized / uniform)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub variant: Variant,
    pub measured: f64,
    pub predicted: f64,
}

/// One record per `(n, variant)`, ordered by `n` then by variant.
pub fn convergence_sweep(
    fs: &FunctionSpec,
    a: f64,
    b: f64,
    n_list: &[usize],
    variants: &[Variant],
    tol: f64,
) -> Result<Vec<SweepRecord>> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut vs = variants.to_vec();
    vs.sort();
    vs.dedup();
    let jobs: Vec<(usize, Variant)> = ns
        .iter()
        .flat_map(|&n| vs.iter().map(move |&v| (n, v)))
        .collect();
    jobs.into_par_iter()
        .map(|(n, variant)| {
            let p = variant.partition(fs, a, b, n)?;
            let v = variant.approximate(fs, &p, tol)?;
            Ok(SweepRecord {
                n,
                variant,
                measured: measure(fs, &v, tol)?.measured_l2,
                predicted: variant.predicted(fs, a, b, n)?,
            })
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs;
    use ::approx::assert_relative_eq;

    fn square() -> FunctionSpec {
        FunctionSpec::new("x^2", |x| x * x, (0.0, 1.0)).with_second_derivative(|_| 2.0)
    }

    fn line() -> FunctionSpec {
        FunctionSpec::new("line", |x| 3.0 * x - 1.0, (0.0, 1.0)).with_second_derivative(|_| 0.0)
    }

    #[test]
    fn measure_examples() {
        let p = partition::uniform(0.0, 1.0, 10).unwrap();
        let v = approx::interpolant(&square(), &p).unwrap();
        let r = measure(&square(), &v, quad::DEFAULT_TOL).unwrap();
        assert!((r.measured_l2 - 2.0 / (120f64.sqrt() * 100.0)).abs() < 1e-7);
        let quad_sum = r.per_interval.iter().map(|e| e * e).sum::<f64>().sqrt();
        assert_relative_eq!(quad_sum, r.measured_l2, max_relative = 1e-9);

        let p = partition::uniform(0.0, 1.0, 1).unwrap();
        let v = approx::project(&square(), &p, 1e-12).unwrap();
        let r = measure(&square(), &v, quad::DEFAULT_TOL).unwrap();
        assert!((r.measured_l2 - (1.0f64 / 180.0).sqrt()).abs() < 1e-7);

        let v = approx::interpolant(&line(), &partition::uniform(0.0, 1.0, 3).unwrap()).unwrap();
        assert!(measure(&line(), &v, quad::DEFAULT_TOL).unwrap().measured_l2 < 1e-10);
    }

    #[test]
    fn interval_bound_examples() {
        assert_relative_eq!(
            bound_interpolant_interval(&square(), 0.0, 1.0).unwrap(),
            2.0 / 120f64.sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(bound_interpolant_interval(&line(), 0.0, 1.0).unwrap(), 0.0);
        let g = funcs::builtin("gaussian").unwrap();
        let peak = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!(
            (bound_interpolant_interval(&g, 0.0, 1.0).unwrap() - peak / 120f64.sqrt()).abs() < 1e-9
        );
        assert!(bound_interpolant_interval(&g, 1.0, 1.0).is_err());
    }

    #[test]
    fn global_prediction_examples() {
        for n in [1usize, 7, 64] {
            let nn = (n * n) as f64;
            let expect = 2.0 / (nn * 120f64.sqrt());
            let opt = bound_interpolant_optimized(&square(), 0.0, 1.0, n).unwrap();
            assert_relative_eq!(opt, expect, max_relative = 1e-12);
            assert_relative_eq!(
                estimate_projection_optimized(&square(), 0.0, 1.0, n).unwrap(),
                expect / 6f64.sqrt(),
                max_relative = 1e-12
            );
            assert_relative_eq!(
                bound_interpolant_uniform(&square(), 0.0, 1.0, n).unwrap(),
                expect,
                max_relative = 1e-12
            );
            assert_eq!(
                bound_interpolant_optimized(&line(), 0.0, 1.0, n).unwrap(),
                0.0
            );
            assert_eq!(
                bound_interpolant_uniform(&line(), 0.0, 1.0, n).unwrap(),
                0.0
            );
        }
        assert!(bound_interpolant_uniform(&square(), 1.0, 0.0, 4).is_err());
        assert!(bound_interpolant_optimized(&square(), 0.0, 1.0, 0).is_err());
    }

    // Reference integrals from 30-digit quadrature of the closed-form f''.
    const GAUSS_MASS_0_8: f64 = 1.566_804_612_988_330_2;
    const GAUSS_FPP_NORM_0_8: f64 = 0.325_246_901_469_029_07;

    #[test]
    fn gaussian_golden_values() {
        let g = funcs::builtin("gaussian").unwrap();
        assert_relative_eq!(
            curvature_mass(&g, 0.0, 8.0).unwrap(),
            GAUSS_MASS_0_8,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            fpp_l2_norm(&g, 0.0, 8.0).unwrap(),
            GAUSS_FPP_NORM_0_8,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            bound_interpolant_optimized(&g, 0.0, 8.0, 256).unwrap(),
            4.280_224_515_679_289e-6,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            bound_interpolant_uniform(&g, 0.0, 8.0, 128).unwrap(),
            1.159_798_598_263_329_2e-4,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            optimization_gain(&g, 0.0, 8.0).unwrap(),
            0.147_619_578_850_619_54,
            max_relative = 1e-8
        );
    }

    #[test]
    fn lorentzian_gain_golden_value() {
        let l = funcs::builtin("lorentzian").unwrap();
        let gain = optimization_gain(&l, 0.0, 6.0).unwrap();
        assert_relative_eq!(gain, 0.234_404_465_727_561_36, max_relative = 1e-8);
    }

    #[test]
    fn predictions_with_numeric_second_derivative() {
        let parsed = funcs::parse_expression("exp(-x^2/2)/sqrt(2*3.141592653589793)").unwrap();
        let g = funcs::builtin("gaussian").unwrap();
        for n in [16usize, 256] {
            assert_relative_eq!(
                bound_interpolant_optimized(&parsed, 0.0, 8.0, n).unwrap(),
                bound_interpolant_optimized(&g, 0.0, 8.0, n).unwrap(),
                max_relative = 1e-5
            );
            assert_relative_eq!(
                bound_interpolant_uniform(&parsed, 0.0, 8.0, n).unwrap(),
                bound_interpolant_uniform(&g, 0.0, 8.0, n).unwrap(),
                max_relative = 1e-5
            );
        }
        let sq = funcs::parse_expression("x^2").unwrap();
        assert_relative_eq!(
            bound_interpolant_uniform(&sq, 0.0, 1.0, 10).unwrap(),
            2.0 / (100.0 * 120f64.sqrt()),
            max_relative = 1e-6
        );
    }

    #[test]
    fn gain_is_one_for_constant_curvature() {
        assert_relative_eq!(
            optimization_gain(&square(), -1.0, 2.0).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert_eq!(optimization_gain(&line(), 0.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn sweep_of_square_matches_closed_form() {
        let recs = convergence_sweep(
            &square(),
            0.0,
            1.0,
            &[8, 2, 4],
            &Variant::ALL,
            quad::DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(recs.len(), 12);
        let order: Vec<(usize, Variant)> = recs.iter().map(|r| (r.n, r.variant)).collect();
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
        for r in recs
            .iter()
            .filter(|r| r.variant.method == Method::Interpolant)
        {
            let nn = (r.n * r.n) as f64;
            assert_relative_eq!(r.measured, 2.0 / (120f64.sqrt() * nn), max_relative = 1e-6);
        }
        for pair in recs.chunks(2) {
            assert!(pair[1].measured <= pair[0].measured + 1e-10);
        }
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("uniform/spline".parse::<Variant>().is_err());
    }

    #[test]
    fn report_fills_every_field() {
        let g = funcs::builtin("gaussian").unwrap();
        let v = Variant::new(PartitionKind::Optimized, Method::Projection);
        let r = report(&g, 0.0, 8.0, 64, v, quad::DEFAULT_TOL).unwrap();
        assert_eq!(r.variant, Some(v));
        assert_eq!(r.per_interval.len(), 64);
        assert!(r.measured_l2 > 0.0 && r.predicted.unwrap() > 0.0);
        assert!(r.equalization_constant.unwrap() > 0.0);
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-2.0)).collect();
        assert_relative_eq!(loglog_slope(&x, &y), -2.0, max_relative = 1e-12);
    }
}
