//! Exhaustive basins of attraction: every configuration is mapped to the
//! optimum its climb ends at.

use lonlab::{compute_basins, Landscape};

fn main() -> lonlab::Result<()> {
    let landscape = Landscape::new(14, 5, 11)?;
    let basins = compute_basins(&landscape)?;

    println!("{} local optima over {} configurations", basins.optimum_count(), landscape.size());
    let global = basins.global_optimum();
    println!(
        "global optimum {:014b}: fitness {:.6}, basin {} ({:.2}% of the space)",
        global.config,
        global.fitness,
        global.basin_size,
        100.0 * global.basin_size as f64 / landscape.size() as f64
    );

    let mut by_size: Vec<_> = basins.optima().iter().collect();
    by_size.sort_by_key(|o| std::cmp::Reverse(o.basin_size));
    println!("largest basins:");
    for o in by_size.iter().take(5) {
        println!("  id {:>4}  config {:014b}  fitness {:.6}  size {}", o.id, o.config, o.fitness, o.basin_size);
    }

    let total: u64 = basins.basin_sizes().sum();
    assert_eq!(total, landscape.size() as u64);

    basins.write_nodes_csv(std::io::stdout().lock(), None)?;
    Ok(())
}
