//! # lonlab
//!
//! Exhaustive local optima networks of NK landscapes: landscape generation,
//! best-improvement basins of attraction, basin adjacency networks, network
//! and basin statistics, and seeded multi-instance sweeps.
//!
//! ## Examples
//!
//! One runnable example per capability:
//!
//! ```bash
//! cargo run --release --example generate_landscape
//! cargo run --release --example hill_climb
//! cargo run --release --example basins
//! cargo run --release --example build_lon
//! cargo run --release --example network_metrics
//! cargo run --release --example basin_analysis
//! cargo run --release --example sweep
//! cargo run --release --example verify
//! ```
//!
//! ## Quick start
//!
//! ```
//! use lonlab::{analyze, Landscape};
//!
//! let l = Landscape::new(10, 3, 7).unwrap();
//! let a = analyze(l, 24).unwrap();
//! assert_eq!(a.report.network.n_v, a.basins.optimum_count());
//! ```

pub mod basin_mapper;
pub mod basin_stats;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod graph_metrics;
pub mod landscape;
pub mod lon_builder;
pub mod numfmt;
pub mod oracle;
pub mod verify;

pub use basin_mapper::{compute_basins, compute_basins_capped, local_search, BasinMap, Optimum};
pub use basin_stats::{basin_report, ols_fit, BasinReport, RegressionFit};
pub use error::{Error, Result};
pub use experiment::{
    analyze, analyze_seeded, run_sweep, AggregateReport, Analysis, InstanceReport, SweepConfig,
    SweepResult,
};
pub use graph::SimpleGraph;
pub use graph_metrics::{cumulative_degree_distribution, network_stats, NetworkStats};
pub use landscape::{Configuration, Fitness, Landscape, NeighborhoodModel};
pub use lon_builder::{build_lon, LocalOptimaNetwork};
pub use verify::{run_verify, VerifyOptions, VerifyReport};
