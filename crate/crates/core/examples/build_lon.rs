//! Local optima network of a small landscape, written as CSV.
//!
//! ```bash
//! cargo run --example build_lon -- out_dir
//! ```

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use lonlab::{build_lon, compute_basins, Landscape};

fn main() -> lonlab::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    let landscape = Landscape::new(12, 2, 5)?;
    let basins = compute_basins(&landscape)?;
    let lon = build_lon(&basins);

    println!("{} nodes, {} edges", lon.node_count(), lon.edge_count());
    for (&(a, b), pairs) in lon.graph.edges().iter().zip(lon.boundary_pairs()).take(10) {
        println!("  {a} -- {b}  ({pairs} boundary pairs)");
    }

    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        lon.graph.write_edges_csv(BufWriter::new(File::create(dir.join("edges.csv"))?))?;
        basins.write_nodes_csv(BufWriter::new(File::create(dir.join("nodes.csv"))?), Some(&lon.degrees()))?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
