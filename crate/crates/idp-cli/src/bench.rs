//! The benchmark suite: generate planted instances over a size ladder, time
//! the solver, and report per-size medians with a fitted growth exponent.

use idp::format::{BenchRecord, BenchReport};
use idp::gen::{gen_random, GenError, GenParams};
use idp::interval::solve_interval;
use idp::circular::solve_circular;
use idp::{Instance, Kind};
use std::time::Instant;

pub struct BenchArgs {
    pub kinds: Vec<Kind>,
    pub sizes: Vec<usize>,
    pub reps: u32,
    pub density: f64,
    pub k: usize,
    pub seed: u64,
}

/// Runs the suite sequentially (one solver invocation at a time, so the
/// timings reflect the single-threaded algorithm) and returns the report.
pub fn run_bench(args: &BenchArgs) -> Result<BenchReport, GenError> {
    let mut records = Vec::new();
    for &kind in &args.kinds {
        for (i, &n) in args.sizes.iter().enumerate() {
            let params = GenParams {
                kind,
                n,
                density: args.density,
                k: args.k,
                max_req: match kind {
                    Kind::Interval => 3,
                    Kind::Circular => 1,
                },
                planted: true,
                seed: args.seed.wrapping_add(i as u64),
            };
            let g = gen_random(&params)?;
            let mut samples: Vec<u128> = Vec::with_capacity(args.reps as usize);
            for _ in 0..args.reps {
                let t0 = Instant::now();
                let out = match kind {
                    Kind::Interval => solve_interval(&g.inst),
                    Kind::Circular => solve_circular(&g.inst),
                };
                samples.push(t0.elapsed().as_nanos());
                assert!(out.is_yes(), "planted instances are solvable by construction");
            }
            records.push(BenchRecord {
                kind,
                n: n as u64,
                m: edge_count(&g.inst),
                k: args.k as u64,
                reps: args.reps,
                median_ns: median(&mut samples) as u64,
            });
        }
    }
    let exponent = fitted_exponent(&records);
    Ok(BenchReport { records, exponent })
}

/// Edge count from the geometry: summed span lengths count every vertex's
/// own two endpoints plus two shared points per adjacent pair.
fn edge_count(inst: &Instance) -> u64 {
    let rep = inst.rep();
    let total: u64 = (0..inst.n()).map(|v| rep.span_len(v) as u64).sum();
    (total - 2 * inst.n() as u64) / 2
}

fn median(samples: &mut [u128]) -> u128 {
    samples.sort_unstable();
    let n = samples.len();
    if n % 2 == 1 { samples[n / 2] } else { (samples[n / 2 - 1] + samples[n / 2]) / 2 }
}

/// Least-squares slope of log time against log size over all records, the
/// growth exponent of the measured suite; absent with fewer than two points.
fn fitted_exponent(records: &[BenchRecord]) -> Option<f64> {
    if records.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.median_ns as f64).ln()))
        .collect();
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let num: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    if den == 0.0 {
        return None;
    }
    Some(num / den)
}
