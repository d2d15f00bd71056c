//! Timing harness: direct evaluation against lookup tables.
//!
//! Every variant sees the same seeded abscissas. One warm-up round is run
//! and discarded; the remaining per-repetition means (ns per evaluation)
//! are summarized. All timing runs on the calling thread.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::funcs::FunctionSpec;
use crate::lut::{LutKind, LutTable};
use crate::{Error, Result};

pub const MIN_POINTS: usize = 100_000;
pub const MIN_REPS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    /// `direct`, `uniform/N=<n>` or `nonuniform/N=<n>`.
    pub variant: String,
    pub n_segments: Option<usize>,
    pub mean_ns: f64,
    pub median_ns: f64,
    pub std_dev_ns: f64,
    pub repetitions: usize,
    /// Sum of all outputs of one repetition.
    pub checksum: f64,
}

/// `n` abscissas drawn uniformly from `[a, b]`.
pub fn bench_points(a: f64, b: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(a..=b)).collect()
}

fn summarize(
    variant: String,
    n_segments: Option<usize>,
    mut per_rep: Vec<f64>,
    checksum: f64,
) -> BenchResult {
    let reps = per_rep.len();
    let mean = per_rep.iter().sum::<f64>() / reps as f64;
    let var = per_rep.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (reps.max(2) - 1) as f64;
    per_rep.sort_by(f64::total_cmp);
    let median = if reps % 2 == 1 {
        per_rep[reps / 2]
    } else {
        0.5 * (per_rep[reps / 2 - 1] + per_rep[reps / 2])
    };
    BenchResult {
        variant,
        n_segments,
        mean_ns: mean,
        median_ns: median,
        std_dev_ns: var.sqrt(),
        repetitions: reps,
        checksum,
    }
}

/// Times one pass of `eval` over `xs`; returns ns per evaluation and the sum.
fn time_pass<E>(xs: &[f64], eval: E) -> Result<(f64, f64)>
where
    E: Fn(f64) -> Result<f64>,
{
    let start = Instant::now();
    let mut sum = 0.0;
    for &x in xs {
        sum += eval(black_box(x))?;
    }
    let elapsed = start.elapsed();
    // never report a zero time, even with a coarse clock
    let ns = (elapsed.as_nanos() as f64).max(1.0) / xs.len() as f64;
    Ok((ns, black_box(sum)))
}

/// Benchmarks direct evaluation of `fs` and each table over the same
/// `n_points` abscissas from the tables' common interval.
///
/// Repetitions are interleaved: each round times every variant once, so
/// clock-speed drift spreads evenly instead of favouring later variants.
pub fn run_bench(
    fs: &FunctionSpec,
    tables: &[LutTable],
    n_points: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchResult>> {
    if n_points < MIN_POINTS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_POINTS} points, got {n_points}"
        )));
    }
    if reps < MIN_REPS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_REPS} repetitions, got {reps}"
        )));
    }
    let (a, b) = match tables.first() {
        Some(t) => (t.a(), t.b()),
        None => fs.domain(),
    };
    if tables.iter().any(|t| t.a() != a || t.b() != b) {
        return Err(Error::InvalidArgument(
            "all tables must cover the same interval".into(),
        ));
    }
    let xs = bench_points(a, b, n_points, seed);

    let variants = tables.len() + 1;
    let mut per_rep = vec![Vec::with_capacity(reps); variants];
    let mut checksums = vec![0.0; variants];
    for round in 0..=reps {
        for k in 0..variants {
            let (ns, sum) = match k {
                0 => time_pass(&xs, |x| fs.try_eval(x))?,
                _ => time_pass(&xs, |x| tables[k - 1].eval(x))?,
            };
            checksums[k] = sum;
            if round > 0 {
                per_rep[k].push(ns);
            }
        }
    }

    let mut out = Vec::with_capacity(variants);
    for (k, (times, checksum)) in per_rep.into_iter().zip(checksums).enumerate() {
        if k == 0 {
            out.push(summarize("direct".into(), None, times, checksum));
            continue;
        }
        let t = &tables[k - 1];
        let kind = match t.kind() {
            LutKind::Uniform => "uniform",
            LutKind::Nonuniform => "nonuniform",
        };
        let n = t.n_segments();
        out.push(summarize(format!("{kind}/N={n}"), Some(n), times, checksum));
    }
    Ok(out)
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut r = vec![0.0; v.len()];
    let mut k = 0;
    while k < idx.len() {
        let mut m = k;
        while m + 1 < idx.len() && v[idx[m + 1]] == v[idx[k]] {
            m += 1;
        }
        // ties share the mean of their 1-based ranks
        let shared = (k + m) as f64 / 2.0 + 1.0;
        for &i in &idx[k..=m] {
            r[i] = shared;
        }
        k = m + 1;
    }
    r
}

/// Spearman rank correlation, ties averaged. NaN when either side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "spearman needs paired samples");
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let cov: f64 = rx
        .iter()
        .zip(&ry)
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    let sx: f64 = rx.iter().map(|a| (a - mean).powi(2)).sum::<f64>().sqrt();
    let sy: f64 = ry.iter().map(|b| (b - mean).powi(2)).sum::<f64>().sqrt();
    cov / (sx * sy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{eval_cpwl, interpolant};
    use crate::lut::OobPolicy;
    use crate::{funcs, partition};

    #[test]
    fn checksums_agree_across_paths() {
        let g = funcs::builtin("gaussian").unwrap();
        let v = interpolant(&g, &partition::uniform(0.0, 8.0, 64).unwrap()).unwrap();
        let uni = LutTable::from_cpwl(&v, OobPolicy::Strict);
        let non = LutTable::nonuniform(v.knots().to_vec(), v.values().to_vec(), OobPolicy::Strict)
            .unwrap();
        let res = run_bench(&g, &[uni, non], MIN_POINTS, MIN_REPS, 11).unwrap();
        assert_eq!(res.len(), 3);
        assert_eq!(res[1].checksum, res[2].checksum);
        let reference: f64 = bench_points(0.0, 8.0, MIN_POINTS, 11)
            .into_iter()
            .map(|x| eval_cpwl(&v, x).unwrap())
            .sum();
        assert_eq!(res[1].checksum, reference);
        for r in &res {
            assert!(r.mean_ns > 0.0 && r.median_ns > 0.0 && r.std_dev_ns >= 0.0);
            assert_eq!(r.repetitions, MIN_REPS);
        }
        assert_eq!(res[0].variant, "direct");
        assert_eq!(res[2].variant, "nonuniform/N=64");

        let again = run_bench(&g, &[], MIN_POINTS, MIN_REPS, 11).unwrap();
        assert_eq!(again[0].checksum, res[0].checksum);
    }

    #[test]
    fn argument_checks() {
        let g = funcs::builtin("gaussian").unwrap();
        assert!(run_bench(&g, &[], 10, 5, 0).is_err());
        assert!(run_bench(&g, &[], MIN_POINTS, 2, 0).is_err());
        let t1 = LutTable::uniform(0.0, 8.0, vec![0.0, 1.0], OobPolicy::Strict).unwrap();
        let t2 = LutTable::uniform(0.0, 4.0, vec![0.0, 1.0], OobPolicy::Strict).unwrap();
        assert!(run_bench(&g, &[t1, t2], MIN_POINTS, 5, 0).is_err());
    }

    #[test]
    fn spearman_examples() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]) - 1.0).abs() < 1e-15);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
        assert!(
            (spearman(&[1.0, 2.0, 3.0, 4.0], &[1.0, 1.0, 2.0, 2.0]) - 0.894_427_191).abs() < 1e-9
        );
        assert_eq!(ranks(&[5.0, 1.0, 5.0]), vec![2.5, 1.0, 2.5]);
    }
}
