//! Cross-module properties: build, measure, tabulate, serialize.

use cpwl::analysis::{self, Variant};
use cpwl::lut::{LutTable, OobPolicy};
use cpwl::{funcs, partition, quad, tableio};

const TOL: f64 = quad::DEFAULT_TOL;

#[test]
fn projection_never_worse_than_interpolant() {
    for (name, a, b) in [
        ("gaussian", 0.0, 8.0),
        ("lorentzian", 0.0, 6.0),
        ("bessel_j0", 0.0, 20.0),
    ] {
        let fs = funcs::builtin(name).unwrap();
        for n in [8usize, 32, 128] {
            for p in [
                partition::uniform(a, b, n).unwrap(),
                partition::optimized(&fs, a, b, n).unwrap(),
            ] {
                let interp = cpwl::approx::interpolant(&fs, &p).unwrap();
                let proj = cpwl::approx::project(&fs, &p, TOL).unwrap();
                let ei = analysis::measure(&fs, &interp, TOL).unwrap().measured_l2;
                let ep = analysis::measure(&fs, &proj, TOL).unwrap().measured_l2;
                assert!(
                    ep <= ei * (1.0 + 1e-9),
                    "{name} N={n}: proj {ep} > interp {ei}"
                );
            }
        }
    }
}

#[test]
fn interpolant_error_below_per_interval_bound() {
    let fs = funcs::builtin("gaussian").unwrap();
    for n in [16usize, 64, 256] {
        let p = partition::optimized(&fs, 0.0, 8.0, n).unwrap();
        let v = cpwl::approx::interpolant(&fs, &p).unwrap();
        let rep = analysis::measure(&fs, &v, TOL).unwrap();
        let bounds = analysis::interval_bounds(&fs, &p).unwrap();
        for (i, (e, bound)) in rep.per_interval.iter().zip(&bounds).enumerate() {
            assert!(
                *e <= bound * (1.0 + 1e-9) + 1e-14,
                "N={n} interval {i}: {e} > {bound}"
            );
        }
    }
}

#[test]
fn optimized_partition_equalizes_interval_errors() {
    let fs = funcs::builtin("gaussian").unwrap();
    let p = partition::optimized(&fs, 0.0, 8.0, 512).unwrap();
    let bounds = analysis::interval_bounds(&fs, &p).unwrap();
    let c = analysis::equalization_constant(&fs, &p).unwrap();
    let scale = 120f64.sqrt();
    let near = bounds
        .iter()
        .map(|e| e * scale)
        .filter(|&e| e <= 3.0 * c && e >= c / 3.0)
        .count();
    assert!(
        near as f64 >= 0.9 * bounds.len() as f64,
        "{near} of {}",
        bounds.len()
    );
}

#[test]
fn table_round_trip_preserves_evaluation() {
    let fs = funcs::builtin("lorentzian").unwrap();
    for variant in Variant::ALL {
        let p = variant.partition(&fs, 0.0, 6.0, 100).unwrap();
        let v = variant.approximate(&fs, &p, TOL).unwrap();
        let table = LutTable::from_cpwl(&v, OobPolicy::Strict);
        let mut buf = Vec::new();
        tableio::write_table(&table, &mut buf).unwrap();
        let back = tableio::read_table(buf.as_slice()).unwrap();
        for k in 0..=600 {
            let x = 6.0 * k as f64 / 600.0;
            assert_eq!(
                back.eval(x).unwrap().to_bits(),
                v.eval(x).unwrap().to_bits(),
                "{variant} x={x}"
            );
        }
    }
}
