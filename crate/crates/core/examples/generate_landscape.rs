//! Builds an NK landscape, prints a few fitness values, and writes its
//! JSON descriptor.
//!
//! ```bash
//! cargo run --example generate_landscape -- 16 4 7 landscape.json
//! ```

use std::path::PathBuf;

use lonlab::Landscape;

fn main() -> lonlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(12, |a| a.parse().expect("n"));
    let k = args.get(1).map_or(3, |a| a.parse().expect("k"));
    let seed = args.get(2).map_or(1, |a| a.parse().expect("seed"));

    let landscape = Landscape::new(n, k, seed)?;
    println!("NK landscape n={n} k={k} seed={seed}: {} configurations", landscape.size());
    for config in [0u32, 1, (1 << n) - 1] {
        println!("  f({config:0width$b}) = {:.6}", landscape.fitness(config), width = n as usize);
    }

    let table = landscape.fitness_table();
    let (lo, hi) = table
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &f| (lo.min(f), hi.max(f)));
    println!("  fitness range [{lo:.6}, {hi:.6}]");

    if let Some(path) = args.get(3).map(PathBuf::from) {
        landscape.save_json(&path)?;
        let reloaded = Landscape::load_json(&path)?;
        assert_eq!(reloaded, landscape);
        println!("wrote {}", path.display());
    }
    Ok(())
}
