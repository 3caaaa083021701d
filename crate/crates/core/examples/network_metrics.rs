//! Network statistics of LONs as epistasis grows.

use lonlab::{analyze_seeded, cumulative_degree_distribution};

fn main() -> lonlab::Result<()> {
    let n = 14;
    println!("{:>3} {:>6} {:>8} {:>7} {:>7} {:>8} {:>6} {:>8}", "K", "n_v", "n_e", "C", "C_r", "z", "l", "a");
    for k in [2, 4, 6, 8, 10, 13] {
        let s = analyze_seeded(n, k, 0, 24)?.report.network;
        let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
        println!(
            "{k:>3} {:>6} {:>8} {:>7} {:>7.4} {:>8.2} {:>6} {:>8}",
            s.n_v,
            s.n_e,
            show(s.clustering),
            s.clustering_random,
            s.mean_degree,
            show(s.mean_path_length),
            show(s.assortativity)
        );
    }

    let a = analyze_seeded(n, 6, 0, 24)?;
    let dist = cumulative_degree_distribution(&a.lon.graph);
    println!("\ncumulative degree distribution, K=6:");
    for k in (0..=dist.max_degree().unwrap_or(0)).step_by(10) {
        println!("  P(deg >= {k:>3}) = {:.3}", dist.fraction(k));
    }
    Ok(())
}
