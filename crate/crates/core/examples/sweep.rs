//! Seeded multi-instance sweep with aggregated means and standard
//! deviations. Writes the full output tree when a directory is given.
//!
//! ```bash
//! cargo run --release --example sweep -- sweep_out
//! ```

use std::path::PathBuf;

use lonlab::{run_sweep, SweepConfig};

fn main() -> lonlab::Result<()> {
    let mut config = SweepConfig::new(vec![12], vec![2, 4, 8, 11], 10);
    config.base_seed = 100;
    config.out_dir = std::env::args().nth(1).map(PathBuf::from);

    let result = run_sweep(&config)?;
    for g in &result.groups {
        let a = g.aggregate.as_ref().expect("at least one instance");
        let n_v = a.metric("n_v");
        let c = a.metric("clustering");
        println!(
            "n={} k={:>2}: n_v {:>7.1} ± {:>5.1}   C {:.4} ± {:.4}   global basin {:.4}",
            a.n,
            a.k,
            n_v.mean.unwrap(),
            n_v.std.unwrap(),
            c.mean.unwrap_or(f64::NAN),
            c.std.unwrap_or(f64::NAN),
            a.mean("global_opt_relative_size"),
        );
    }
    for f in &result.failures {
        eprintln!("failed n={} k={} seed={}: {}", f.n, f.k, f.seed, f.error);
    }
    Ok(())
}
