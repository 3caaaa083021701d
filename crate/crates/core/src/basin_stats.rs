//! Basin analyses and the least-squares fits behind them.
//!
//! All fits regress a natural log on a linear predictor:
//! cumulative degree counts on degree, cumulative basin counts on basin
//! size, basin size on optimum fitness, and basin size on degree.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::basin_mapper::BasinMap;
use crate::error::{Error, Result};
use crate::graph_metrics::{cumulative_degree_distribution, DegreeDistribution};
use crate::lon_builder::LocalOptimaNetwork;
use crate::numfmt::g17;

/// Ordinary least-squares line `y = alpha + beta x` with Pearson `rho`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    /// `None` when `y` has zero variance.
    pub rho: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub point_count: usize,
}

/// Closed-form OLS with centered sums, accumulated in input order.
pub fn ols_fit(points: &[(f64, f64)]) -> Result<RegressionFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit("fewer than two points"));
    }
    let n = points.len() as f64;
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - x_mean, y - y_mean);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::DegenerateFit("zero variance in x"));
    }
    if points.iter().all(|p| p.1 == points[0].1) {
        return Ok(RegressionFit {
            rho: None,
            alpha: y_mean,
            beta: 0.0,
            point_count: points.len(),
        });
    }
    let beta = sxy / sxx;
    let rho = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    Ok(RegressionFit {
        rho: Some(rho),
        alpha: y_mean - beta * x_mean,
        beta,
        point_count: points.len(),
    })
}

/// Points `(k, ln count(degree >= k))` for every `k` with a nonzero count.
pub fn degree_distribution_points(dist: &DegreeDistribution) -> Vec<(f64, f64)> {
    dist.cumulative_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= 1)
        .map(|(k, &c)| (k as f64, (c as f64).ln()))
        .collect()
}

pub fn fit_degree_distribution(dist: &DegreeDistribution) -> Result<RegressionFit> {
    ols_fit(&degree_distribution_points(dist))
}

/// One row of `basin_sizes.csv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasinSizeCount {
    pub size: u64,
    /// Basins of exactly this size.
    pub count: usize,
    /// Basins of at least this size.
    pub cumulative_count: usize,
}

/// Distinct basin sizes in ascending order with exact and cumulative counts.
pub fn basin_size_distribution(basins: &BasinMap) -> Vec<BasinSizeCount> {
    let mut sizes: Vec<u64> = basins.basin_sizes().collect();
    sizes.sort_unstable();
    let total = sizes.len();
    let mut rows: Vec<BasinSizeCount> = Vec::new();
    for (i, &size) in sizes.iter().enumerate() {
        match rows.last_mut() {
            Some(row) if row.size == size => row.count += 1,
            _ => rows.push(BasinSizeCount {
                size,
                count: 1,
                cumulative_count: total - i,
            }),
        }
    }
    rows
}

pub fn write_basin_sizes_csv<W: Write>(rows: &[BasinSizeCount], mut w: W) -> std::io::Result<()> {
    writeln!(w, "size,count,cumulative_count")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.size, r.count, r.cumulative_count)?;
    }
    Ok(())
}

/// Regresses `ln(#basins with size >= s)` on `s` over distinct sizes.
pub fn fit_basin_size_distribution(basins: &BasinMap) -> Result<RegressionFit> {
    let points: Vec<(f64, f64)> = basin_size_distribution(basins)
        .iter()
        .map(|r| (r.size as f64, (r.cumulative_count as f64).ln()))
        .collect();
    ols_fit(&points)
}

/// Regresses `ln(basin size)` on optimum fitness.
pub fn fit_fitness_vs_size(basins: &BasinMap) -> Result<RegressionFit> {
    let points: Vec<(f64, f64)> = basins
        .optima()
        .iter()
        .map(|o| (o.fitness, (o.basin_size as f64).ln()))
        .collect();
    ols_fit(&points)
}

/// Regresses `ln(basin size)` on LON degree.
pub fn fit_degree_vs_size(basins: &BasinMap, lon: &LocalOptimaNetwork) -> Result<RegressionFit> {
    let points: Vec<(f64, f64)> = basins
        .optima()
        .iter()
        .map(|o| {
            (
                lon.graph.degree(o.id as usize) as f64,
                (o.basin_size as f64).ln(),
            )
        })
        .collect();
    ols_fit(&points)
}

/// Writes `fitness_size.csv`: `id,fitness,basin_size,degree`.
pub fn write_fitness_size_csv<W: Write>(
    basins: &BasinMap,
    lon: &LocalOptimaNetwork,
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "id,fitness,basin_size,degree")?;
    for o in basins.optima() {
        writeln!(
            w,
            "{},{},{},{}",
            o.id,
            g17(o.fitness),
            o.basin_size,
            lon.graph.degree(o.id as usize)
        )?;
    }
    Ok(())
}

/// Basin statistics of one instance. Degenerate fits are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasinReport {
    pub global_opt_relative_size: f64,
    pub degree_distribution_fit: Option<RegressionFit>,
    pub size_distribution_fit: Option<RegressionFit>,
    pub fitness_size_fit: Option<RegressionFit>,
    pub degree_size_fit: Option<RegressionFit>,
}

pub fn basin_report(basins: &BasinMap, lon: &LocalOptimaNetwork) -> BasinReport {
    let global = basins.global_optimum();
    let total = (1u64 << basins.n()) as f64;
    BasinReport {
        global_opt_relative_size: global.basin_size as f64 / total,
        degree_distribution_fit: fit_degree_distribution(&cumulative_degree_distribution(&lon.graph))
            .ok(),
        size_distribution_fit: fit_basin_size_distribution(basins).ok(),
        fitness_size_fit: fit_fitness_vs_size(basins).ok(),
        degree_size_fit: fit_degree_vs_size(basins, lon).ok(),
    }
}
