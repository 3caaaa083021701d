use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lonlab::basin_mapper::DEFAULT_EXHAUSTIVE_CAP;
use lonlab::experiment::{analyze, analyze_seeded, exit_code, run_sweep, SweepConfig};
use lonlab::verify::{run_verify, Fault, VerifyOptions};
use lonlab::{Error, Landscape};

#[derive(Parser)]
#[command(name = "lonlab", version, about = "Local optima networks of NK landscapes")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a landscape descriptor.
    Generate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze one landscape and write its report and CSV exports.
    Analyze {
        #[arg(long, conflicts_with_all = ["n", "k", "seed"])]
        landscape: Option<PathBuf>,
        #[arg(long, required_unless_present = "landscape")]
        n: Option<u32>,
        #[arg(long, required_unless_present = "landscape")]
        k: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Analyze many seeded instances per (n, k) and aggregate.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long = "k-list", alias = "k", value_delimiter = ',', required = true)]
        k_list: Vec<u32>,
        #[arg(long, default_value_t = 30)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Compare the fast pipeline against the naive oracles.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, hide = true, value_parser = ["drop-edge"])]
        inject_fault: Option<String>,
    },
}

#[derive(Args)]
struct Cap {
    #[arg(long = "max-exhaustive-n", default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    max_exhaustive_n: u32,
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(&err) as u8)
}

fn run(cmd: Cmd) -> ExitCode {
    match cmd {
        Cmd::Generate { n, k, seed, out } => {
            match Landscape::new(n, k, seed).and_then(|l| l.save_json(&out)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Cmd::Analyze {
            landscape,
            n,
            k,
            seed,
            out,
            cap,
        } => {
            let analysis = match landscape {
                Some(path) => Landscape::load_json(&path).and_then(|l| analyze(l, cap.max_exhaustive_n)),
                None => analyze_seeded(n.unwrap(), k.unwrap(), seed.unwrap_or(0), cap.max_exhaustive_n),
            };
            let analysis = match analysis {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            if let Err(e) = analysis.write_outputs(&out) {
                return fail(e);
            }
            let r = &analysis.report;
            eprintln!(
                "n={} k={} seed={}: {} optima, {} edges in {:.2?}",
                r.n, r.k, r.seed, r.network.n_v, r.network.n_e, r.duration
            );
            ExitCode::SUCCESS
        }
        Cmd::Sweep {
            n,
            k_list,
            instances,
            base_seed,
            out,
            cap,
        } => {
            let config = SweepConfig {
                ns: n,
                ks: k_list,
                instances,
                base_seed,
                max_exhaustive_n: cap.max_exhaustive_n,
                out_dir: Some(out),
            };
            let result = match run_sweep(&config) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            for g in &result.groups {
                eprintln!("n={} k={}: {} instances", g.n, g.k, g.reports.len());
            }
            match result.failures.first() {
                None => ExitCode::SUCCESS,
                Some(first) => {
                    for f in &result.failures {
                        eprintln!("failed n={} k={} seed={}: {}", f.n, f.k, f.seed, f.error);
                    }
                    ExitCode::from(first.exit_code as u8)
                }
            }
        }
        Cmd::Verify {
            max_n,
            seeds,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                max_n,
                seeds,
                fault: inject_fault.map(|_| Fault::DropEdge),
            };
            let report = match run_verify(&opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            for r in &report.results {
                println!("{r}");
            }
            let failed = report.failed_checks().len();
            println!("{} checks, {} failed", report.results.len(), failed);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| run(cli.cmd)),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        None => run(cli.cmd),
    }
}
