//! Parsers for the colon-separated flag values.

use cpwl::analysis::{Method, PartitionKind};
use cpwl::OobPolicy;

fn number(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{what} `{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{what} `{s}` is not finite"))
    }
}

/// `a:b` with `a < b`.
pub fn interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("invalid interval `{s}`: expected a:b"))?;
    let (a, b) = (number(a, "interval start")?, number(b, "interval end")?);
    if a < b {
        Ok((a, b))
    } else {
        Err(format!("invalid interval `{s}`: need a < b"))
    }
}

/// Parsed `--grid` points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Parsed `--sweep` sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep(pub Vec<usize>);

/// Parsed comma-separated `--segments` list.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentList(pub Vec<usize>);

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    grid(s).map(Grid)
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    sweep(s).map(Sweep)
}

pub fn parse_segment_list(s: &str) -> Result<SegmentList, String> {
    segment_list(s).map(SegmentList)
}

/// `a:b:n`: `n` equispaced points from `a` to `b` inclusive.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let mut parts = s.split(':');
    let (Some(a), Some(b), Some(n), None) =
        (parts.next(), parts.next(), parts.next(), parts.next())
    else {
        return Err(format!("invalid grid `{s}`: expected a:b:n"));
    };
    let (a, b) = (number(a, "grid start")?, number(b, "grid end")?);
    let n: usize = n
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("invalid grid `{s}`: n must be a positive integer"))?;
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|k| {
            if k + 1 == n {
                b
            } else {
                a + (b - a) * (k as f64 / (n - 1) as f64)
            }
        })
        .collect())
}

/// `n0:n1` with `1 <= n0 <= n1`, expanded to the powers of two in range.
/// A range without powers of two is valid and yields nothing.
pub fn sweep(s: &str) -> Result<Vec<usize>, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("invalid sweep `{s}`: expected n0:n1"))?;
    let parse = |v: &str| -> Result<usize, String> {
        v.trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("invalid sweep `{s}`: bounds must be positive integers"))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("invalid sweep `{s}`: range must be ascending"));
    }
    Ok((0..usize::BITS)
        .map(|k| 1usize << k)
        .filter(|n| (lo..=hi).contains(n))
        .collect())
}

/// Comma-separated positive segment counts.
pub fn segment_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("invalid segment count `{v}`"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PartitionArg {
    Uniform,
    Optimized,
}

impl From<PartitionArg> for PartitionKind {
    fn from(p: PartitionArg) -> Self {
        match p {
            PartitionArg::Uniform => PartitionKind::Uniform,
            PartitionArg::Optimized => PartitionKind::Optimized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Interp,
    Proj,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Interp => Method::Interpolant,
            MethodArg::Proj => Method::Projection,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OobArg {
    Strict,
    Clamp,
}

impl From<OobArg> for OobPolicy {
    fn from(o: OobArg) -> Self {
        match o {
            OobArg::Strict => OobPolicy::Strict,
            OobArg::Clamp => OobPolicy::Clamp,
        }
    }
}
