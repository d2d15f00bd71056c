//! Lookup-table evaluation of a CPWL function.
//!
//! Uniform tables store only the endpoints and find the interval
//! arithmetically. Nonuniform tables store the knots and locate the interval
//! with a branch-free binary search whose iteration count depends only on N.

use rayon::prelude::*;

use crate::approx::CpwlFunction;
use crate::partition::{self, Partition};
use crate::{Error, Result};

/// Batches at least this long are evaluated across threads.
const PARALLEL_BATCH: usize = 1 << 16;

/// What to do with abscissas outside `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum OobPolicy {
    #[default]
    Strict,
    /// `x < a` gives `v_0`, `x > b` gives `v_N`.
    Clamp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LutKind {
    Uniform,
    Nonuniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LutTable {
    a: f64,
    b: f64,
    values: Vec<f64>,
    knots: Option<Vec<f64>>,
    policy: OobPolicy,
    /// `N / (b - a)`, used only to guess the uniform interval.
    inv_h: f64,
    /// Uniform knot spacing, see [`partition::uniform_step`].
    step: f64,
}

impl LutTable {
    pub fn from_cpwl(v: &CpwlFunction, policy: OobPolicy) -> Self {
        let p = v.partition();
        Self {
            a: p.a(),
            b: p.b(),
            values: v.values().to_vec(),
            knots: (!p.is_uniform()).then(|| p.knots().to_vec()),
            policy,
            inv_h: p.n_segments() as f64 / (p.b() - p.a()),
            step: partition::uniform_step(p.a(), p.b(), p.n_segments()),
        }
    }

    /// Uniform table over `[a, b]` with `values.len() - 1` segments.
    pub fn uniform(a: f64, b: f64, values: Vec<f64>, policy: OobPolicy) -> Result<Self> {
        check_values(&values)?;
        let p = partition::uniform(a, b, values.len() - 1)?;
        Ok(Self::from_cpwl(&CpwlFunction::new(p, values)?, policy))
    }

    pub fn nonuniform(knots: Vec<f64>, values: Vec<f64>, policy: OobPolicy) -> Result<Self> {
        check_values(&values)?;
        let p = Partition::from_knots(knots)?;
        Ok(Self::from_cpwl(&CpwlFunction::new(p, values)?, policy))
    }

    pub fn kind(&self) -> LutKind {
        if self.knots.is_some() {
            LutKind::Nonuniform
        } else {
            LutKind::Uniform
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Stored knots; `None` for uniform tables.
    pub fn knots(&self) -> Option<&[f64]> {
        self.knots.as_deref()
    }

    pub fn policy(&self) -> OobPolicy {
        self.policy
    }

    pub fn with_policy(mut self, policy: OobPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn n_segments(&self) -> usize {
        self.values.len() - 1
    }

    /// Knot `i`, reconstructed for uniform tables.
    #[inline]
    pub fn knot(&self, i: usize) -> f64 {
        match &self.knots {
            Some(k) => k[i],
            None => {
                partition::uniform_knot_with_step(self.a, self.b, self.step, self.n_segments(), i)
            }
        }
    }

    /// The CPWL function this table represents.
    pub fn to_cpwl(&self) -> CpwlFunction {
        let p = match &self.knots {
            Some(k) => Partition::from_knots(k.clone()),
            None => partition::uniform(self.a, self.b, self.n_segments()),
        };
        CpwlFunction::new(p.expect("validated at construction"), self.values.clone())
            .expect("validated at construction")
    }

    /// Interval `i` with `x_i <= x < x_{i+1}` and its endpoints, for
    /// `a <= x < b`.
    #[inline(always)]
    fn locate_inside(&self, x: f64) -> (usize, f64, f64) {
        let n = self.values.len() - 1;
        match self.knots {
            Some(ref k) => {
                let i = search(k, x);
                (i, k[i], k[i + 1])
            }
            None => {
                let knot = |i| partition::uniform_knot_with_step(self.a, self.b, self.step, n, i);
                let mut i = (((x - self.a) * self.inv_h) as usize).min(n - 1);
                let (mut lo, mut hi) = (knot(i), knot(i + 1));
                // the fused guess can be off by one near a knot
                if x < lo {
                    i -= 1;
                    (lo, hi) = (knot(i), lo);
                } else if x >= hi && i + 1 < n {
                    i += 1;
                    (lo, hi) = (hi, knot(i + 1));
                }
                (i, lo, hi)
            }
        }
    }

    /// Resolves `x` outside `[a, b)` to an endpoint slot under the policy.
    #[cold]
    fn outside(&self, x: f64) -> Result<usize> {
        let n = self.values.len() - 1;
        if x == self.b || (self.policy == OobPolicy::Clamp && x > self.b) {
            Ok(n)
        } else if self.policy == OobPolicy::Clamp && x < self.a {
            Ok(0)
        } else {
            Err(Error::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            })
        }
    }

    /// Interval containing `x` under the table's policy; `N - 1` at and
    /// beyond `b`.
    pub fn locate(&self, x: f64) -> Result<usize> {
        if x >= self.a && x < self.b {
            return Ok(self.locate_inside(x).0);
        }
        Ok(self.outside(x)?.min(self.n_segments() - 1))
    }

    #[inline(always)]
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= self.a && x < self.b) {
            return Ok(self.values[self.outside(x)?]);
        }
        let (i, lo, hi) = self.locate_inside(x);
        let mut delta = (x - lo) / (hi - lo);
        if self.knots.is_none() {
            delta = delta.clamp(0.0, 1.0);
        }
        Ok((1.0 - delta) * self.values[i] + delta * self.values[i + 1])
    }

    /// [`eval`](Self::eval) over a slice; long batches run in parallel.
    pub fn eval_batch(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if xs.len() >= PARALLEL_BATCH {
            xs.par_iter().map(|&x| self.eval(x)).collect()
        } else {
            xs.iter().map(|&x| self.eval(x)).collect()
        }
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "a table needs at least two values, got {}",
            values.len()
        )));
    }
    Ok(())
}

/// Largest `i < N` with `knots[i] <= x`, for `knots[0] <= x`.
///
/// The loop runs `ceil(log2 N)` times for every `x`; the select compiles to
/// a conditional move.
#[inline]
fn search(knots: &[f64], x: f64) -> usize {
    let mut base = 0usize;
    let mut len = knots.len() - 1;
    while len > 1 {
        let half = len / 2;
        base = if knots[base + half] <= x {
            base + half
        } else {
            base
        };
        len -= half;
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{eval_cpwl, interpolant};
    use crate::funcs;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cpwl(knots: Vec<f64>, values: Vec<f64>) -> CpwlFunction {
        CpwlFunction::new(Partition::from_knots(knots).unwrap(), values).unwrap()
    }

    fn gaussian_uniform(n: usize) -> CpwlFunction {
        let g = funcs::builtin("gaussian").unwrap();
        interpolant(&g, &partition::uniform(0.0, 8.0, n).unwrap()).unwrap()
    }

    #[test]
    fn kind_follows_partition() {
        let t = LutTable::from_cpwl(&gaussian_uniform(4), OobPolicy::Strict);
        assert_eq!(t.kind(), LutKind::Uniform);
        assert!(t.knots().is_none());

        let g = funcs::builtin("gaussian").unwrap();
        let v = interpolant(&g, &partition::optimized(&g, 0.0, 8.0, 16).unwrap()).unwrap();
        let t = LutTable::from_cpwl(&v, OobPolicy::Strict);
        assert_eq!(t.kind(), LutKind::Nonuniform);
        assert_eq!(t.knots().unwrap(), v.knots());

        let t = LutTable::from_cpwl(&gaussian_uniform(1), OobPolicy::Strict);
        assert_eq!(t.values().len(), 2);
        assert_eq!(t.eval(8.0).unwrap(), t.values()[1]);
    }

    #[test]
    fn knots_reproduce_stored_values() {
        let v = gaussian_uniform(256);
        let t = LutTable::from_cpwl(&v, OobPolicy::Strict);
        for (i, &x) in v.knots().iter().enumerate() {
            assert_eq!(t.eval(x).unwrap(), v.values()[i]);
        }
        assert_eq!(t.eval_batch(v.knots()).unwrap(), v.values());
    }

    #[test]
    fn both_paths_on_small_example() {
        let v = cpwl(vec![0.0, 1.0, 2.0], vec![0.0, 10.0, 20.0]);
        let uni = LutTable::uniform(0.0, 2.0, vec![0.0, 10.0, 20.0], OobPolicy::Strict).unwrap();
        let non = LutTable::from_cpwl(&v, OobPolicy::Strict);
        assert_eq!(non.kind(), LutKind::Nonuniform);
        assert_eq!(uni.eval(0.5).unwrap(), 5.0);
        assert_eq!(non.eval(0.5).unwrap(), 5.0);
    }

    #[test]
    fn out_of_domain_policies() {
        let v = gaussian_uniform(8);
        let strict = LutTable::from_cpwl(&v, OobPolicy::Strict);
        assert!(matches!(strict.eval(-1.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(strict.eval(8.5), Err(Error::OutOfDomain { .. })));
        assert!(strict.eval(f64::NAN).is_err());
        let clamp = strict.clone().with_policy(OobPolicy::Clamp);
        assert_eq!(clamp.eval(-1.0).unwrap(), v.values()[0]);
        assert_eq!(clamp.eval(f64::INFINITY).unwrap(), v.values()[8]);
        assert!(clamp.eval(f64::NAN).is_err());
        assert!(strict.eval_batch(&[1.0, 9.0]).is_err());
        assert!(strict.eval_batch(&[]).unwrap().is_empty());
    }

    #[test]
    fn constructors_validate() {
        assert!(LutTable::uniform(0.0, 1.0, vec![1.0], OobPolicy::Strict).is_err());
        assert!(LutTable::uniform(1.0, 0.0, vec![1.0, 2.0], OobPolicy::Strict).is_err());
        assert!(LutTable::uniform(0.0, 1.0, vec![1.0, f64::NAN], OobPolicy::Strict).is_err());
        assert!(
            LutTable::nonuniform(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 4], OobPolicy::Strict)
                .is_err()
        );
        assert!(LutTable::nonuniform(vec![0.0, 1.0], vec![0.0; 3], OobPolicy::Strict).is_err());
    }

    #[test]
    fn search_runs_to_the_right_interval() {
        let knots = [0.0, 1.0, 2.0, 3.5, 4.0, 7.0];
        for (x, i) in [
            (0.0, 0),
            (0.99, 0),
            (1.0, 1),
            (3.9, 3),
            (4.0, 4),
            (6.9, 4),
            (7.0, 4),
        ] {
            assert_eq!(search(&knots, x), i, "x = {x}");
        }
        assert_eq!(search(&[0.0, 1.0], 0.3), 0);
    }

    #[test]
    fn million_points_agree_with_reference_on_dyadic_grid() {
        let v = gaussian_uniform(256);
        let uni = LutTable::from_cpwl(&v, OobPolicy::Strict);
        let non = LutTable::nonuniform(v.knots().to_vec(), v.values().to_vec(), OobPolicy::Strict)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xs: Vec<f64> = (0..1_000_000)
            .map(|_| rng.random_range(0.0..=8.0))
            .collect();
        let batch = uni.eval_batch(&xs).unwrap();
        for (k, &x) in xs.iter().enumerate() {
            let r = eval_cpwl(&v, x).unwrap();
            assert_eq!(batch[k], r);
            assert_eq!(non.eval(x).unwrap(), r);
        }
    }

    fn interval_strategy() -> impl Strategy<Value = (f64, f64, usize)> {
        (-1e3f64..1e3, 1e-3f64..1e3, 1usize..600).prop_map(|(a, w, n)| (a, a + w, n))
    }

    proptest! {
        #[test]
        fn uniform_path_matches_reference(
            (a, b, n) in interval_strategy(),
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = partition::uniform(a, b, n).unwrap();
            let values: Vec<f64> = (0..=n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let v = CpwlFunction::new(p, values).unwrap();
            let uni = LutTable::from_cpwl(&v, OobPolicy::Strict);
            let non = LutTable::nonuniform(v.knots().to_vec(), v.values().to_vec(), OobPolicy::Strict).unwrap();
            for _ in 0..200 {
                let x = rng.random_range(a..=b);
                let r = eval_cpwl(&v, x).unwrap();
                prop_assert_eq!(uni.eval(x).unwrap(), r);
                prop_assert_eq!(non.eval(x).unwrap(), r);
            }
            for &x in v.knots() {
                prop_assert_eq!(uni.locate(x).unwrap(), non.locate(x).unwrap());
            }
        }

        #[test]
        fn located_index_is_monotone(
            (a, b, n) in interval_strategy(),
            mut xs in prop::collection::vec(0.0f64..=1.0, 2..64),
        ) {
            xs.sort_by(f64::total_cmp);
            let v = CpwlFunction::new(partition::uniform(a, b, n).unwrap(), vec![0.0; n + 1]).unwrap();
            let t = LutTable::from_cpwl(&v, OobPolicy::Strict);
            let idx: Vec<usize> = xs.iter().map(|s| t.locate(a + s * (b - a)).unwrap()).collect();
            prop_assert!(idx.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn midpoint_is_mean_of_endpoint_values(
            (a, b, n) in interval_strategy(),
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..=n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let t = LutTable::uniform(a, b, values.clone(), OobPolicy::Strict).unwrap();
            let i = rng.random_range(0..n);
            let (lo, hi) = (t.knot(i), t.knot(i + 1));
            let got = t.eval(0.5 * (lo + hi)).unwrap();
            let want = 0.5 * (values[i] + values[i + 1]);
            // the midpoint itself carries one rounding of x
            let slack = 1e-15 * want.abs().max(values[i].abs()).max(values[i + 1].abs())
                + (values[i + 1] - values[i]).abs() * f64::EPSILON * (lo.abs() + hi.abs()) / (hi - lo);
            prop_assert!((got - want).abs() <= slack, "got {got}, want {want}");
        }
    }
}
