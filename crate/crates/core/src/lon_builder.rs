//! Local optima network: one node per optimum, an edge wherever two basins
//! touch across a single bit flip.

use rayon::prelude::*;

use crate::basin_mapper::{BasinMap, Optimum};
use crate::graph::SimpleGraph;

/// Undirected, unweighted LON with per-node optimum annotations.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOptimaNetwork {
    pub graph: SimpleGraph,
    /// Node annotations, indexed by optimum id.
    pub nodes: Vec<Optimum>,
    /// Number of Hamming-1 configuration pairs straddling each edge,
    /// parallel to `graph.edges()`. Not exported.
    boundary_pairs: Vec<u64>,
}

impl LocalOptimaNetwork {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.graph.degrees()
    }

    pub fn boundary_pairs(&self) -> &[u64] {
        &self.boundary_pairs
    }
}

const CHUNK: usize = 1 << 12;

/// Sorts `(edge, count)` records and merges duplicates.
fn coalesce(mut records: Vec<((u32, u32), u64)>) -> Vec<((u32, u32), u64)> {
    records.sort_unstable_by_key(|r| r.0);
    let mut out: Vec<((u32, u32), u64)> = Vec::with_capacity(records.len());
    for (edge, count) in records {
        match out.last_mut() {
            Some((last, c)) if *last == edge => *c += count,
            _ => out.push((edge, count)),
        }
    }
    out
}

/// Scans every Hamming-1 pair `(s, t)`, `s < t`, and links the optima of
/// the two basins whenever they differ. Isolated optima remain as nodes.
pub fn build_lon(basins: &BasinMap) -> LocalOptimaNetwork {
    let n = basins.n();
    let assignment = basins.assignment();

    let per_chunk: Vec<Vec<((u32, u32), u64)>> = assignment
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(chunk, ids)| {
            let base = chunk * CHUNK;
            let mut records = Vec::new();
            for (offset, &a) in ids.iter().enumerate() {
                let s = base + offset;
                for i in 0..n {
                    let t = s ^ (1usize << i);
                    if t > s {
                        let b = assignment[t];
                        if a != b {
                            records.push(((a.min(b), a.max(b)), 1));
                        }
                    }
                }
            }
            coalesce(records)
        })
        .collect();

    let merged = coalesce(per_chunk.into_iter().flatten().collect());
    let (edges, boundary_pairs): (Vec<_>, Vec<_>) = merged.into_iter().unzip();

    LocalOptimaNetwork {
        graph: SimpleGraph::from_sorted_unique(basins.optimum_count(), edges),
        nodes: basins.optima().to_vec(),
        boundary_pairs,
    }
}
