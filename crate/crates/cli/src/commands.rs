use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};

use anyhow::Context;
use cpwl::analysis::{self, Variant};
use cpwl::lut::{LutKind, LutTable, OobPolicy};
use cpwl::{bench as timing, funcs, tableio, FunctionSpec};

use crate::{BenchArgs, BuildArgs, DomainArgs, EvalArgs, Failure, ReportArgs};

/// Full-precision formatting: 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Resolves the function flags and the interval.
fn resolve(d: &DomainArgs) -> Result<(FunctionSpec, f64, f64), Failure> {
    let fs = match (&d.source.function, &d.source.expr) {
        (Some(name), _) => funcs::builtin(name),
        (None, Some(src)) => funcs::parse_expression(src),
        (None, None) => unreachable!("clap requires one function source"),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if !(d.tol > 0.0 && d.tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tol must be positive, got {}",
            d.tol
        )));
    }
    let (a, b) = d.interval.unwrap_or_else(|| fs.domain());
    Ok((fs, a, b))
}

pub fn build(args: BuildArgs) -> Result<(), Failure> {
    let (fs, a, b) = resolve(&args.domain)?;
    let n = args.segments as usize;
    let variant = Variant::new(args.partition.into(), args.method.into());
    let tol = args.domain.tol;
    let p = variant
        .partition(&fs, a, b, n)
        .context("building the partition")?;
    let v = variant.approximate(&fs, &p, tol).context("approximating")?;
    let measured = analysis::measure(&fs, &v, tol).context("measuring the L2 error")?;
    let predicted = variant
        .predicted(&fs, a, b, n)
        .context("computing the prediction")?;

    let table = LutTable::from_cpwl(&v, args.oob.into());
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let sink = BufWriter::new(file);
    if args.f32 {
        tableio::write_table_f32(&table, sink)
    } else {
        tableio::write_table(&table, sink)
    }
    .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "measured={} predicted={}",
        num(measured.measured_l2),
        num(predicted)
    );
    Ok(())
}

fn read_abscissas(path: &std::path::Path) -> Result<Vec<f64>, Failure> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut xs = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let x: f64 = line
            .parse()
            .with_context(|| format!("{}:{}: `{line}` is not a number", path.display(), k + 1))?;
        xs.push(x);
    }
    Ok(xs)
}

pub fn eval(args: EvalArgs) -> Result<(), Failure> {
    let file =
        File::open(&args.table).with_context(|| format!("opening {}", args.table.display()))?;
    let mut table = tableio::read_table(BufReader::new(file))
        .with_context(|| format!("reading {}", args.table.display()))?;
    if let Some(oob) = args.oob {
        table = table.with_policy(oob.into());
    }
    let xs = match (args.x, &args.input, args.grid) {
        (Some(x), _, _) => vec![x],
        (_, Some(path), _) => read_abscissas(path)?,
        (_, _, Some(grid)) => grid.0,
        _ => unreachable!("clap requires one point source"),
    };
    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    for x in xs {
        let y = table.eval(x).map_err(anyhow::Error::from)?;
        writeln!(out, "{}", num(y))?;
    }
    out.flush()?;
    Ok(())
}

pub fn report(args: ReportArgs) -> Result<(), Failure> {
    let (fs, a, b) = resolve(&args.domain)?;
    let recs =
        analysis::convergence_sweep(&fs, a, b, &args.sweep.0, &Variant::ALL, args.domain.tol)
            .context("running the sweep")?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => {
            Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    writeln!(out, "n,variant,measured,predicted")?;
    for r in recs {
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            r.variant,
            num(r.measured),
            num(r.predicted)
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn bench(args: BenchArgs) -> Result<(), Failure> {
    let (fs, a, b) = resolve(&args.domain)?;
    if args.points < timing::MIN_POINTS || args.reps < timing::MIN_REPS {
        return Err(Failure::Usage(format!(
            "bench needs --points >= {} and --reps >= {}",
            timing::MIN_POINTS,
            timing::MIN_REPS
        )));
    }
    let tol = args.domain.tol;
    let mut tables = Vec::new();
    for &n in &args.segments.0 {
        for kind in [
            analysis::PartitionKind::Uniform,
            analysis::PartitionKind::Optimized,
        ] {
            let variant = Variant::new(kind, args.method.into());
            let p = variant
                .partition(&fs, a, b, n)
                .context("building the partition")?;
            let v = variant.approximate(&fs, &p, tol).context("approximating")?;
            tables.push(LutTable::from_cpwl(&v, OobPolicy::Strict));
        }
    }
    let results = timing::run_bench(&fs, &tables, args.points, args.reps, args.seed)
        .context("benchmarking")?;

    let mut out = BufWriter::new(io::stdout().lock());
    if args.csv {
        writeln!(
            out,
            "variant,mean_ns,median_ns,std_dev_ns,repetitions,checksum"
        )?;
        for r in &results {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.variant,
                num(r.mean_ns),
                num(r.median_ns),
                num(r.std_dev_ns),
                r.repetitions,
                num(r.checksum)
            )?;
        }
    } else {
        writeln!(
            out,
            "{:<18} {:>10} {:>10} {:>10} {:>5} {:>24}",
            "variant", "mean ns", "median ns", "std dev", "reps", "checksum"
        )?;
        for r in &results {
            writeln!(
                out,
                "{:<18} {:>10.3} {:>10.3} {:>10.3} {:>5} {:>24}",
                r.variant,
                r.mean_ns,
                r.median_ns,
                r.std_dev_ns,
                r.repetitions,
                num(r.checksum)
            )?;
        }
        // trend summary: the uniform path should not depend on N, the search path should
        let medians = |kind: LutKind| -> (Vec<f64>, Vec<f64>) {
            results[1..]
                .iter()
                .zip(&tables)
                .filter(|(_, t)| t.kind() == kind)
                .map(|(r, t)| (t.n_segments() as f64, r.median_ns))
                .unzip()
        };
        let (_, uni) = medians(LutKind::Uniform);
        let (n_non, non) = medians(LutKind::Nonuniform);
        if uni.len() >= 2 {
            let ratio = uni.iter().cloned().fold(f64::MIN, f64::max)
                / uni.iter().cloned().fold(f64::MAX, f64::min);
            writeln!(out, "uniform median max/min across N: {ratio:.3}")?;
        }
        if non.len() >= 2 {
            writeln!(
                out,
                "nonuniform Spearman(N, median): {:.3}",
                timing::spearman(&n_non, &non)
            )?;
        }
    }
    out.flush()?;
    Ok(())
}
