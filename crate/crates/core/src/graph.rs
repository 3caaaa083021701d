//! Undirected simple graph stored as a sorted edge list plus adjacency lists.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    node_count: usize,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl SimpleGraph {
    /// Builds a graph from arbitrary pairs. Pairs are normalized to
    /// `(min, max)` and deduplicated; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::InvalidParameters(format!("self-loop on node {a}")));
            }
            if a as usize >= node_count || b as usize >= node_count {
                return Err(Error::InvalidParameters(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_unique(node_count, edges))
    }

    /// `edges` must already be sorted, unique, in range, with `src < dst`.
    pub(crate) fn from_sorted_unique(node_count: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0usize; node_count];
        for &(a, b) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut adjacency: Vec<Vec<u32>> = degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(a, b) in &edges {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        SimpleGraph {
            node_count,
            edges,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(src, dst)` pairs with `src < dst`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbor ids of `node`.
    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    /// Writes `edges.csv`: header `src_id,dst_id`, rows in lexicographic order.
    pub fn write_edges_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "src_id,dst_id")?;
        for &(a, b) in &self.edges {
            writeln!(w, "{a},{b}")?;
        }
        Ok(())
    }
}

/// Reads the rows of an `edges.csv` file.
pub fn read_edges_csv<R: BufRead>(r: R) -> Result<Vec<(u32, u32)>> {
    let mut lines = r.lines();
    let header = lines.next().transpose()?;
    if header.as_deref().map(str::trim) != Some("src_id,dst_id") {
        return Err(Error::Parse("missing `src_id,dst_id` header".into()));
    }
    let mut edges = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse = |s: Option<&str>| -> Result<u32> {
            s.and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge row {}: {line:?}", lineno + 2)))
        };
        let mut fields = line.split(',');
        let a = parse(fields.next())?;
        let b = parse(fields.next())?;
        edges.push((a, b));
    }
    Ok(edges)
}
