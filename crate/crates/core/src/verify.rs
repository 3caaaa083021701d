//! Cross-checks the optimized pipeline against the naive oracles.

use std::fmt;

use crate::basin_mapper::compute_basins;
use crate::basin_stats::basin_report;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph_metrics::network_stats;
use crate::landscape::Landscape;
use crate::lon_builder::build_lon;
use crate::oracle::{
    compare_basin_reports, compare_network_stats, naive_basin_report, naive_basins,
    naive_edges_from_ids, naive_network_stats,
};

pub const MAX_VERIFY_N: u32 = 10;
pub const GRAPH_TOLERANCE: f64 = 1e-9;
pub const FIT_TOLERANCE: f64 = 1e-12;

/// Deliberate corruption of the fast path, used to show the harness can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Drop the last LON edge before comparison.
    DropEdge,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: u32,
    pub seeds: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 8,
            seeds: 5,
            fault: None,
        }
    }
}

pub const CHECKS: [&str; 4] = ["basins", "lon_edges", "graph_metrics", "ols_fits"];

/// Outcome of one named check over all seeds of one `(n, k)`.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check: &'static str,
    pub n: u32,
    pub k: u32,
    pub seeds: u64,
    /// First mismatch, with its seed.
    pub failure: Option<(u64, String)>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS {:<13} n={:<2} k={:<2} seeds={}",
                self.check, self.n, self.k, self.seeds
            ),
            Some((seed, msg)) => write!(
                f,
                "FAIL {:<13} n={:<2} k={:<2} seed={}: {}",
                self.check, self.n, self.k, seed, msg
            ),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failure.is_none())
    }

    pub fn failed_checks(&self) -> Vec<&CheckResult> {
        self.results
            .iter()
            .filter(|r| r.failure.is_some())
            .collect()
    }
}

/// Returns one message per failing check for a single landscape, in
/// `CHECKS` order; `None` means the check passed.
pub fn verify_landscape(l: &Landscape, fault: Option<Fault>) -> Result<[Option<String>; 4]> {
    let basins = compute_basins(l)?;
    let mut lon = build_lon(&basins);
    if fault == Some(Fault::DropEdge) && lon.graph.edge_count() > 0 {
        let mut edges = lon.graph.edges().to_vec();
        edges.pop();
        lon.graph = SimpleGraph::from_edges(lon.graph.node_count(), edges)?;
    }

    let (naive_optima, naive_ids) = naive_basins(l);
    let fast_optima: Vec<u32> = basins.optima().iter().map(|o| o.config).collect();
    let basin_check = if fast_optima != naive_optima {
        Some(format!(
            "optima differ: {} fast vs {} naive",
            fast_optima.len(),
            naive_optima.len()
        ))
    } else {
        (0..naive_ids.len())
            .find(|&s| basins.assignment()[s] != naive_ids[s])
            .map(|s| {
                format!(
                    "config {s}: id {} vs {}",
                    basins.assignment()[s],
                    naive_ids[s]
                )
            })
    };

    let naive_edges = naive_edges_from_ids(&naive_ids);
    let edge_check = (lon.graph.edges() != naive_edges.as_slice()).then(|| {
        format!(
            "{} fast edges vs {} naive edges",
            lon.graph.edge_count(),
            naive_edges.len()
        )
    });

    let naive_graph = SimpleGraph::from_edges(naive_optima.len(), naive_edges)?;
    let graph_check = compare_network_stats(
        &network_stats(&lon.graph),
        &naive_network_stats(&naive_graph),
        GRAPH_TOLERANCE,
    )
    .err();

    let fit_check = compare_basin_reports(
        &basin_report(&basins, &lon),
        &naive_basin_report(l),
        FIT_TOLERANCE,
    )
    .err();

    Ok([basin_check, edge_check, graph_check, fit_check])
}

/// Runs every check for `1 <= n <= max_n`, every valid `k`, and seeds
/// `0..seeds`.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.max_n > MAX_VERIFY_N {
        return Err(Error::InvalidParameters(format!(
            "max_n must be at most {MAX_VERIFY_N}"
        )));
    }
    let mut report = VerifyReport::default();
    for n in 1..=opts.max_n {
        for k in 0..n {
            let mut failures: [Option<(u64, String)>; 4] = Default::default();
            for seed in 0..opts.seeds {
                let l = Landscape::new(n, k, seed)?;
                for (slot, outcome) in failures.iter_mut().zip(verify_landscape(&l, opts.fault)?) {
                    if slot.is_none() {
                        *slot = outcome.map(|m| (seed, m));
                    }
                }
            }
            for (check, failure) in CHECKS.into_iter().zip(failures) {
                report.results.push(CheckResult {
                    check,
                    n,
                    k,
                    seeds: opts.seeds,
                    failure,
                });
            }
        }
    }
    Ok(report)
}
