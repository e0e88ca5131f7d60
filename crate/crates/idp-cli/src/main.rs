//! Command-line front end: solve instances, cross-check them against the
//! exhaustive oracle, verify solutions, generate instances, and benchmark.
//!
//! Exit codes: 0 for a yes answer (or a passing verify), 1 for a no answer
//! (or a failing verify), 2 for malformed input, flags, or out-of-bounds
//! requests.

mod bench;

use bench::{run_bench, BenchArgs};
use clap::{Parser, Subcommand, ValueEnum};
use idp::circular::solve_circular;
use idp::format::{emit_bench, emit_instance, emit_solution, parse_instance, parse_solution, NamedInstance};
use idp::gen::{gen_random, GenParams};
use idp::interval::solve_interval;
use idp::oracle::{brute_solve, verify_mutually_induced, BruteLimits, Violation};
use idp::{Kind, NoCertificate, Outcome};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "idp", version, about = "Induced disjoint paths on interval and circular-arc graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file (`-` for stdin); prints the solution text.
    Solve {
        /// Instance file, or `-` to read stdin.
        file: String,
        /// On a `no` answer, also explain the refusing step on stderr.
        #[arg(long)]
        certify: bool,
    },
    /// Decide a small instance by exhaustive search (no certificates).
    Oracle {
        /// Instance file, or `-` to read stdin.
        file: String,
        /// Maximum vertex count the search will accept.
        #[arg(long, default_value_t = BruteLimits::default().max_n)]
        max_n: usize,
        /// Maximum summed requirement the search will accept.
        #[arg(long, default_value_t = BruteLimits::default().max_total_req)]
        max_total_req: u32,
        /// Cap on enumerated paths per pair.
        #[arg(long, default_value_t = BruteLimits::default().path_cap)]
        path_cap: usize,
    },
    /// Check a solution file against an instance file.
    Verify {
        /// Instance file, or `-` to read stdin.
        instance: String,
        /// Solution file in the text format.
        solution: String,
    },
    /// Generate an instance deterministically from a seed.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Number of terminal pairs.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Target average number of ranges open at an endpoint (~ m/n).
        #[arg(long, default_value_t = 4.0)]
        density: f64,
        /// Largest per-pair requirement to sample (interval kind only).
        #[arg(long, default_value_t = 1)]
        max_req: u32,
        /// Plant vertex-disjoint corridors so the instance is solvable.
        #[arg(long)]
        planted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the planted path system to this file (requires --planted).
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Time the solver over a planted size ladder; prints a TSV report.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchKind::Both)]
        kind: BenchKind,
        /// Instance sizes to measure.
        #[arg(long, value_delimiter = ',',
              default_values_t = [10_000usize, 20_000, 40_000, 80_000, 160_000, 320_000, 640_000, 1_000_000])]
        sizes: Vec<usize>,
        /// Timing repetitions per size (defaults to $IDP_BENCH_REPS or 5).
        #[arg(long)]
        reps: Option<u32>,
        #[arg(long, default_value_t = 4.0)]
        density: f64,
        /// Terminal pairs per instance.
        #[arg(long, default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = 0xb31c)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Interval,
    Circular,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Interval => Kind::Interval,
            KindArg::Circular => Kind::Circular,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BenchKind {
    Interval,
    Circular,
    Both,
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Solve { file, certify } => cmd_solve(&file, certify),
        Cmd::Oracle { file, max_n, max_total_req, path_cap } => {
            cmd_oracle(&file, BruteLimits { max_n, max_total_req, path_cap })
        }
        Cmd::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Cmd::Gen { kind, n, k, density, max_req, planted, seed, witness_out } => cmd_gen(
            GenParams { kind: kind.into(), n, density, k, max_req, planted, seed },
            witness_out.as_deref(),
        ),
        Cmd::Bench { kind, sizes, reps, density, k, seed } => {
            let kinds = match kind {
                BenchKind::Interval => vec![Kind::Interval],
                BenchKind::Circular => vec![Kind::Circular],
                BenchKind::Both => vec![Kind::Interval, Kind::Circular],
            };
            let reps = reps
                .or_else(|| std::env::var("IDP_BENCH_REPS").ok().and_then(|v| v.parse().ok()))
                .unwrap_or(5)
                .max(1);
            cmd_bench(BenchArgs { kinds, sizes, reps, density, k, seed })
        }
    }
}

const INVALID: u8 = 2;

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INVALID)
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load_instance(path: &str) -> Result<NamedInstance, String> {
    let text = read_input(path)?;
    parse_instance(&text).map_err(|e| format!("{path}: {e}"))
}

fn solve_any(named: &NamedInstance) -> Outcome {
    match named.inst.kind() {
        Kind::Interval => solve_interval(&named.inst),
        Kind::Circular => solve_circular(&named.inst),
    }
}

fn cmd_solve(file: &str, certify: bool) -> ExitCode {
    let named = match load_instance(file) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let out = solve_any(&named);
    print!("{}", emit_solution(&out, &named));
    match out {
        Outcome::Yes(_) => ExitCode::SUCCESS,
        Outcome::No(cert) => {
            if certify {
                eprintln!("certificate: {}", certificate_detail(&cert, &named));
            }
            ExitCode::from(1)
        }
    }
}

fn certificate_detail(cert: &NoCertificate, named: &NamedInstance) -> String {
    match *cert {
        NoCertificate::Step2 { pair } => format!(
            "step=2 pair={}: the pair needs two or more paths but its representatives are not adjacent",
            pair + 1
        ),
        NoCertificate::Step6 { vertex } => format!(
            "step=6 vertex={}: the vertex represents terminals of three or more unserved pairs",
            named.names[vertex as usize]
        ),
        NoCertificate::Step7 =>
            "step=7: the unserved pairs cannot be laid out consecutively along the ground order"
                .into(),
        NoCertificate::Step5Plus { pair } => format!(
            "step=5+ pair={}: no live path joins the last unserved pair's representatives",
            pair + 1
        ),
        NoCertificate::Step10 { pair } => format!(
            "step=10 pair={}: the candidate spans cannot meet the pair's quota",
            pair + 1
        ),
        NoCertificate::Step10Star =>
            "step=10*: fewer pairwise-disjoint candidate spans than unserved pairs".into(),
    }
}

fn cmd_oracle(file: &str, limits: BruteLimits) -> ExitCode {
    let named = match load_instance(file) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    match brute_solve(&named.inst, &limits) {
        Err(e) => fail(format!("{file}: {e} (n <= {}, summed requirement <= {})", limits.max_n, limits.max_total_req)),
        Ok(Some(sol)) => {
            print!("{}", emit_solution(&Outcome::Yes(sol), &named));
            ExitCode::SUCCESS
        }
        Ok(None) => {
            // Exhaustive search proves the refusal but names no step.
            println!("no");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify(instance: &str, solution: &str) -> ExitCode {
    let named = match load_instance(instance) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let text = match read_input(solution) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let outcome = match parse_solution(&text, &named) {
        Ok(v) => v,
        Err(e) => return fail(format!("{solution}: {e}")),
    };
    let sol = match outcome {
        Outcome::No(_) => {
            return fail("the solution file answers `no`; only `yes` path systems can be checked")
        }
        Outcome::Yes(s) => s,
    };
    let violations = verify_mutually_induced(&named.inst, &sol.paths);
    if violations.is_empty() {
        println!("ok");
        return ExitCode::SUCCESS;
    }
    for v in &violations {
        println!("violation: {}", violation_detail(v, &named));
    }
    ExitCode::from(1)
}

fn violation_detail(v: &Violation, named: &NamedInstance) -> String {
    let name = |v: u32| named.names[v as usize].clone();
    match *v {
        Violation::NotAPath { path } => {
            format!("path {} is not a simple path of known vertices", path + 1)
        }
        Violation::WrongEndpoints { path } => {
            format!("path {} does not join its pair's representatives", path + 1)
        }
        Violation::InnerChord { path, u, v } => {
            format!("path {} has a chord between {} and {}", path + 1, name(u), name(v))
        }
        Violation::IllegalSharedVertex { path_a, path_b, vertex } => format!(
            "paths {} and {} share vertex {} beyond a common end",
            path_a + 1,
            path_b + 1,
            name(vertex)
        ),
        Violation::IllegalAdjacency { path_a, inner, path_b, vertex } => format!(
            "inner vertex {} of path {} is adjacent to vertex {} of path {}",
            name(inner),
            path_a + 1,
            name(vertex),
            path_b + 1
        ),
        Violation::QuotaMismatch { pair, expected, got } => {
            format!("pair {} needs {} paths but the file provides {}", pair + 1, expected, got)
        }
    }
}

fn cmd_gen(params: GenParams, witness_out: Option<&std::path::Path>) -> ExitCode {
    if witness_out.is_some() && !params.planted {
        return fail("--witness-out requires --planted");
    }
    let g = match gen_random(&params) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let named = NamedInstance::numbered(g.inst);
    if let Some(path) = witness_out {
        let witness = g.witness.expect("planted generation records its witness");
        let text = emit_solution(&Outcome::Yes(witness), &named);
        if let Err(e) = std::fs::write(path, text) {
            return fail(format!("writing {}: {e}", path.display()));
        }
    }
    print!("{}", emit_instance(&named));
    ExitCode::SUCCESS
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    match run_bench(&args) {
        Ok(report) => {
            print!("{}", emit_bench(&report));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
