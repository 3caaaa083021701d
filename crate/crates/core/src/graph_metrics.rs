//! Network statistics of a local optima network: clustering, path length,
//! degree assortativity and the cumulative degree distribution.
//!
//! Undefined statistics are `None` and serialize as `null`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;
use crate::numfmt::g17;

/// Table-style summary of one network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkStats {
    pub n_v: usize,
    pub n_e: usize,
    pub mean_degree: f64,
    pub clustering: Option<f64>,
    /// Expected clustering of a random graph with the same size and mean
    /// degree, `mean_degree / n_v`.
    pub clustering_random: f64,
    pub mean_path_length: Option<f64>,
    pub assortativity: Option<f64>,
    pub component_count: usize,
}

/// Mean of the per-node clustering coefficients `2 E_i / (k_i (k_i - 1))`.
/// Nodes with fewer than two neighbors count as 0.
pub fn clustering_coefficient(g: &SimpleGraph) -> Option<f64> {
    let n = g.node_count();
    if n == 0 {
        return None;
    }
    let local = local_clustering(g);
    Some(local.iter().sum::<f64>() / n as f64)
}

/// Per-node clustering coefficients.
pub fn local_clustering(g: &SimpleGraph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |mark, i| {
                let nbrs = g.neighbors(i);
                let k = nbrs.len();
                if k < 2 {
                    return 0.0;
                }
                for &j in nbrs {
                    mark[j as usize] = true;
                }
                let mut links = 0usize;
                for &j in nbrs {
                    links += g.neighbors(j as usize).iter().filter(|&&x| mark[x as usize]).count();
                }
                for &j in nbrs {
                    mark[j as usize] = false;
                }
                // Each neighbor-neighbor edge was seen from both ends.
                links as f64 / (k * (k - 1)) as f64
            },
        )
        .collect()
}

/// Shortest-path summary over connected pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathTotals {
    /// Sum of distances over ordered connected pairs of distinct nodes.
    pub distance_sum: u64,
    /// Number of ordered connected pairs of distinct nodes.
    pub pair_count: u64,
}

impl PathTotals {
    pub fn mean(&self) -> Option<f64> {
        (self.pair_count > 0).then(|| self.distance_sum as f64 / self.pair_count as f64)
    }
}

const LANES: usize = 4;
const BATCH: usize = 64 * LANES;
type Lanes = [u64; LANES];

/// Unweighted all-pairs BFS, 256 sources at a time as bit lanes.
pub fn path_totals(g: &SimpleGraph) -> PathTotals {
    let n = g.node_count();
    let batches: Vec<usize> = (0..n).step_by(BATCH).collect();
    let partial: Vec<(u64, u64)> = batches
        .into_par_iter()
        .map(|start| batch_bfs(g, start, (start + BATCH).min(n)))
        .collect();
    let (distance_sum, pair_count) = partial
        .into_iter()
        .fold((0, 0), |(d, p), (bd, bp)| (d + bd, p + bp));
    PathTotals {
        distance_sum,
        pair_count,
    }
}

fn batch_bfs(g: &SimpleGraph, start: usize, end: usize) -> (u64, u64) {
    let n = g.node_count();
    let mut visited: Vec<Lanes> = vec![[0; LANES]; n];
    let mut frontier: Vec<Lanes> = vec![[0; LANES]; n];
    let mut next: Vec<Lanes> = vec![[0; LANES]; n];
    let mut full: Lanes = [0; LANES];
    for src in start..end {
        let bit = src - start;
        visited[src][bit / 64] |= 1 << (bit % 64);
        frontier[src][bit / 64] |= 1 << (bit % 64);
        full[bit / 64] |= 1 << (bit % 64);
    }
    // Nodes already reached from every source in the batch can be skipped.
    let mut open: Vec<u32> = (0..n as u32).filter(|&v| visited[v as usize] != full).collect();

    let mut distance_sum = 0u64;
    let mut pair_count = 0u64;
    let mut level = 0u64;
    loop {
        level += 1;
        let mut reached = 0u64;
        for &v in &open {
            let v = v as usize;
            let mut acc: Lanes = [0; LANES];
            for &u in g.neighbors(v) {
                let f = &frontier[u as usize];
                for l in 0..LANES {
                    acc[l] |= f[l];
                }
            }
            let seen = &mut visited[v];
            let mut fresh = 0u32;
            for l in 0..LANES {
                acc[l] &= !seen[l];
                seen[l] |= acc[l];
                fresh += acc[l].count_ones();
            }
            next[v] = acc;
            reached += fresh as u64;
        }
        if reached == 0 {
            break;
        }
        distance_sum += level * reached;
        pair_count += reached;
        for &v in &open {
            frontier[v as usize] = next[v as usize];
        }
        // A closed node keeps its last frontier; every bit in it is already
        // visited at all of its neighbors, so re-sending it is harmless.
        open.retain(|&v| visited[v as usize] != full);
    }
    (distance_sum, pair_count)
}

/// Mean shortest-path length over connected pairs of distinct nodes.
pub fn mean_path_length(g: &SimpleGraph) -> Option<f64> {
    if g.node_count() < 2 {
        return None;
    }
    path_totals(g).mean()
}

/// Number of connected components (isolated nodes count as components).
pub fn component_count(g: &SimpleGraph) -> usize {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u as usize);
                }
            }
        }
    }
    components
}

/// Degree assortativity: Pearson correlation of the degrees at either end
/// of an edge, each edge counted in both directions.
///
/// The sums are exact integers, so the result does not depend on edge order.
pub fn assortativity(g: &SimpleGraph) -> Option<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return None;
    }
    let deg = g.degrees();
    let (mut prod, mut sum, mut sq) = (0i128, 0i128, 0i128);
    for &(a, b) in g.edges() {
        let (j, k) = (deg[a as usize] as i128, deg[b as usize] as i128);
        prod += j * k;
        sum += j + k;
        sq += j * j + k * k;
    }
    // Numerator and denominator scaled by 4 M^2.
    let num = 4 * m * prod - sum * sum;
    let den = 2 * m * sq - sum * sum;
    (den != 0).then(|| num as f64 / den as f64)
}

/// Fraction of nodes with degree at least `k`, for `k = 0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeDistribution {
    pub degrees: Vec<usize>,
    /// `cumulative_counts[k]` = number of nodes with degree >= k.
    pub cumulative_counts: Vec<usize>,
}

impl DegreeDistribution {
    pub fn node_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.cumulative_counts.len().checked_sub(1)
    }

    pub fn fraction(&self, k: usize) -> f64 {
        let count = self.cumulative_counts.get(k).copied().unwrap_or(0);
        count as f64 / self.node_count() as f64
    }

    /// Writes `degree_cumulative.csv` with header `k,count,fraction`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,count,fraction")?;
        for (k, &count) in self.cumulative_counts.iter().enumerate() {
            writeln!(w, "{k},{count},{}", g17(self.fraction(k)))?;
        }
        Ok(())
    }
}

pub fn cumulative_degree_distribution(g: &SimpleGraph) -> DegreeDistribution {
    let degrees = g.degrees();
    let Some(&max) = degrees.iter().max() else {
        return DegreeDistribution {
            degrees,
            cumulative_counts: Vec::new(),
        };
    };
    let mut histogram = vec![0usize; max + 1];
    for &d in &degrees {
        histogram[d] += 1;
    }
    let mut cumulative_counts = vec![0usize; max + 1];
    let mut running = 0;
    for k in (0..=max).rev() {
        running += histogram[k];
        cumulative_counts[k] = running;
    }
    DegreeDistribution {
        degrees,
        cumulative_counts,
    }
}

pub fn network_stats(g: &SimpleGraph) -> NetworkStats {
    let n_v = g.node_count();
    let n_e = g.edge_count();
    let mean_degree = if n_v == 0 {
        0.0
    } else {
        2.0 * n_e as f64 / n_v as f64
    };
    NetworkStats {
        n_v,
        n_e,
        mean_degree,
        clustering: clustering_coefficient(g),
        clustering_random: if n_v == 0 { 0.0 } else { mean_degree / n_v as f64 },
        mean_path_length: mean_path_length(g),
        assortativity: assortativity(g),
        component_count: component_count(g),
    }
}
