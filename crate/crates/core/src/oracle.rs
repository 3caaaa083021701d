//! Slow reference implementations used to cross-check the fast pipeline.
//!
//! Nothing here shares code with the optimized path beyond the landscape's
//! fitness function and the graph container: climbs are re-run from every
//! start, edges come from an all-pairs configuration scan, graph metrics use
//! dense adjacency matrices, and fits use raw-sum textbook formulas in exact rational arithmetic.

use num::{BigRational, Signed, ToPrimitive, Zero};

use crate::basin_stats::{BasinReport, RegressionFit};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph_metrics::NetworkStats;
use crate::landscape::{Configuration, Landscape};

/// Simulates the climb from every start with an explicit argmax over the
/// neighbor list. Returns the endpoint per start configuration.
pub fn naive_basin_endpoints(l: &Landscape) -> Vec<Configuration> {
    let n = l.n();
    (0..1u32 << n)
        .map(|start| {
            let mut s = start;
            loop {
                let candidates: Vec<(Configuration, f64)> = (0..n)
                    .map(|i| s ^ (1 << i))
                    .map(|t| (t, l.fitness(t)))
                    .collect();
                let mut arg = 0;
                for (idx, c) in candidates.iter().enumerate() {
                    if c.1 > candidates[arg].1 {
                        arg = idx;
                    }
                }
                if l.fitness(s) < candidates[arg].1 {
                    s = candidates[arg].0;
                } else {
                    break s;
                }
            }
        })
        .collect()
}

/// Optima in ascending configuration order plus the per-start optimum id.
pub fn naive_basins(l: &Landscape) -> (Vec<Configuration>, Vec<u32>) {
    let ends = naive_basin_endpoints(l);
    let mut optima = ends.clone();
    optima.sort_unstable();
    optima.dedup();
    let ids = ends
        .iter()
        .map(|e| optima.binary_search(e).unwrap() as u32)
        .collect();
    (optima, ids)
}

/// LON edges from a scan over every pair of configurations.
pub fn naive_lon_edges(l: &Landscape) -> Vec<(u32, u32)> {
    let (_, ids) = naive_basins(l);
    naive_edges_from_ids(&ids)
}

pub fn naive_edges_from_ids(ids: &[u32]) -> Vec<(u32, u32)> {
    let size = ids.len();
    let mut edges = Vec::new();
    for s in 0..size {
        for t in s + 1..size {
            if (s ^ t).count_ones() == 1 && ids[s] != ids[t] {
                let (a, b) = (ids[s].min(ids[t]), ids[s].max(ids[t]));
                if !edges.contains(&(a, b)) {
                    edges.push((a, b));
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn dense(g: &SimpleGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for &(i, j) in g.edges() {
        a[i as usize][j as usize] = true;
        a[j as usize][i as usize] = true;
    }
    a
}

/// Quadratic/cubic-time recomputation of every network statistic.
pub fn naive_network_stats(g: &SimpleGraph) -> NetworkStats {
    let n = g.node_count();
    let a = dense(g);
    let deg: Vec<usize> = a.iter().map(|row| row.iter().filter(|&&x| x).count()).collect();
    let n_e = deg.iter().sum::<usize>() / 2;

    let clustering = (n > 0).then(|| {
        let mut total = 0.0;
        for i in 0..n {
            if deg[i] < 2 {
                continue;
            }
            let mut triangles = 0usize;
            for j in 0..n {
                for k in j + 1..n {
                    if a[i][j] && a[i][k] && a[j][k] {
                        triangles += 1;
                    }
                }
            }
            total += 2.0 * triangles as f64 / (deg[i] * (deg[i] - 1)) as f64;
        }
        total / n as f64
    });

    // Distances from successive boolean powers of the adjacency matrix.
    let mut dist: Vec<Vec<Option<u64>>> = vec![vec![None; n]; n];
    let mut reach = a.clone();
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    let mut power = 1u64;
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] && dist[i][j].is_none() {
                    dist[i][j] = Some(power);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for m in 0..n {
                if reach[i][m] {
                    for j in 0..n {
                        if a[m][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        reach = next;
        power += 1;
    }
    let (mut sum, mut pairs) = (0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            if let Some(d) = dist[i][j] {
                sum += d;
                pairs += 1;
            }
        }
    }
    let mean_path_length = (n >= 2 && pairs > 0).then(|| sum as f64 / pairs as f64);
    let component_count = (0..n)
        .filter(|&i| (0..i).all(|j| dist[i][j].is_none()))
        .count();

    // Pearson correlation over both orientations of every edge.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                xs.push(deg[i] as f64);
                ys.push(deg[j] as f64);
            }
        }
    }
    let assortativity = if xs.is_empty() {
        None
    } else {
        let m = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt())
    };

    let mean_degree = if n == 0 { 0.0 } else { 2.0 * n_e as f64 / n as f64 };
    NetworkStats {
        n_v: n,
        n_e,
        mean_degree,
        clustering,
        clustering_random: if n == 0 { 0.0 } else { mean_degree / n as f64 },
        mean_path_length,
        assortativity,
        component_count,
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn close_opt(name: &str, a: Option<f64>, b: Option<f64>, tol: f64) -> std::result::Result<(), String> {
    match (a, b) {
        (None, None) => Ok(()),
        (Some(x), Some(y)) if close(x, y, tol) => Ok(()),
        _ => Err(format!("{name}: {a:?} vs {b:?}")),
    }
}

pub fn compare_network_stats(
    a: &NetworkStats,
    b: &NetworkStats,
    tol: f64,
) -> std::result::Result<(), String> {
    if (a.n_v, a.n_e, a.component_count) != (b.n_v, b.n_e, b.component_count) {
        return Err(format!(
            "counts: ({}, {}, {}) vs ({}, {}, {})",
            a.n_v, a.n_e, a.component_count, b.n_v, b.n_e, b.component_count
        ));
    }
    close_opt("mean_degree", Some(a.mean_degree), Some(b.mean_degree), tol)?;
    close_opt("clustering", a.clustering, b.clustering, tol)?;
    close_opt("clustering_random", Some(a.clustering_random), Some(b.clustering_random), tol)?;
    close_opt("mean_path_length", a.mean_path_length, b.mean_path_length, tol)?;
    close_opt("assortativity", a.assortativity, b.assortativity, tol)
}

/// OLS from raw sums `n Sxy - Sx Sy` etc., evaluated in exact rational
/// arithmetic over the f64 inputs and rounded once at the end.
pub fn naive_ols(points: &[(f64, f64)]) -> Result<RegressionFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit("fewer than two points"));
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::DegenerateFit("zero variance in x"));
    }
    let q = |v: f64| BigRational::from_float(v).expect("finite input");
    let n = BigRational::from_integer(points.len().into());
    let (mut sx, mut sy) = (BigRational::zero(), BigRational::zero());
    let (mut sxx, mut syy, mut sxy) = (BigRational::zero(), BigRational::zero(), BigRational::zero());
    for &(x, y) in points {
        let (x, y) = (q(x), q(y));
        sxx += &x * &x;
        syy += &y * &y;
        sxy += &x * &y;
        sx += x;
        sy += y;
    }
    if points.iter().all(|p| p.1 == points[0].1) {
        return Ok(RegressionFit {
            rho: None,
            alpha: (sy / n).to_f64().unwrap(),
            beta: 0.0,
            point_count: points.len(),
        });
    }
    let xvar = &n * &sxx - &sx * &sx;
    let yvar = &n * &syy - &sy * &sy;
    let cov = &n * &sxy - &sx * &sy;
    let beta = &cov / &xvar;
    let alpha = (&sy - &beta * &sx) / &n;
    let rho_sq = (&cov * &cov / (xvar * yvar)).to_f64().unwrap();
    let rho = if cov.is_negative() { -rho_sq.sqrt() } else { rho_sq.sqrt() };
    Ok(RegressionFit {
        rho: Some(rho),
        alpha: alpha.to_f64().unwrap(),
        beta: beta.to_f64().unwrap(),
        point_count: points.len(),
    })
}

/// Basin report recomputed from naive basins and edges.
pub fn naive_basin_report(l: &Landscape) -> BasinReport {
    let (optima, ids) = naive_basins(l);
    let edges = naive_edges_from_ids(&ids);
    let mut size = vec![0u64; optima.len()];
    for &id in &ids {
        size[id as usize] += 1;
    }
    let mut degree = vec![0usize; optima.len()];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    let fitness: Vec<f64> = optima.iter().map(|&o| l.fitness(o)).collect();

    let global = (0..1u32 << l.n())
        .fold(0u32, |best, s| if l.fitness(s) > l.fitness(best) { s } else { best });
    let global_id = optima.binary_search(&global).expect("global max is a local optimum");

    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let deg_points: Vec<(f64, f64)> = (0..=max_deg)
        .map(|k| (k as f64, degree.iter().filter(|&&d| d >= k).count()))
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k, (c as f64).ln()))
        .collect();

    let mut distinct = size.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let size_points: Vec<(f64, f64)> = distinct
        .iter()
        .map(|&s| (s as f64, (size.iter().filter(|&&x| x >= s).count() as f64).ln()))
        .collect();

    let fit_points: Vec<(f64, f64)> = fitness
        .iter()
        .zip(&size)
        .map(|(&f, &s)| (f, (s as f64).ln()))
        .collect();
    let degree_points: Vec<(f64, f64)> = degree
        .iter()
        .zip(&size)
        .map(|(&d, &s)| (d as f64, (s as f64).ln()))
        .collect();

    BasinReport {
        global_opt_relative_size: size[global_id] as f64 / (1u64 << l.n()) as f64,
        degree_distribution_fit: naive_ols(&deg_points).ok(),
        size_distribution_fit: naive_ols(&size_points).ok(),
        fitness_size_fit: naive_ols(&fit_points).ok(),
        degree_size_fit: naive_ols(&degree_points).ok(),
    }
}

fn compare_fit(
    name: &str,
    a: &Option<RegressionFit>,
    b: &Option<RegressionFit>,
    tol: f64,
) -> std::result::Result<(), String> {
    match (a, b) {
        (None, None) => Ok(()),
        (Some(x), Some(y)) => {
            if x.point_count != y.point_count {
                return Err(format!("{name}.point_count: {} vs {}", x.point_count, y.point_count));
            }
            close_opt(&format!("{name}.rho"), x.rho, y.rho, tol)?;
            close_opt(&format!("{name}.alpha"), Some(x.alpha), Some(y.alpha), tol)?;
            close_opt(&format!("{name}.beta"), Some(x.beta), Some(y.beta), tol)
        }
        _ => Err(format!("{name}: {a:?} vs {b:?}")),
    }
}

pub fn compare_basin_reports(
    a: &BasinReport,
    b: &BasinReport,
    tol: f64,
) -> std::result::Result<(), String> {
    if a.global_opt_relative_size != b.global_opt_relative_size {
        return Err(format!(
            "global_opt_relative_size: {} vs {}",
            a.global_opt_relative_size, b.global_opt_relative_size
        ));
    }
    compare_fit("degree_distribution_fit", &a.degree_distribution_fit, &b.degree_distribution_fit, tol)?;
    compare_fit("size_distribution_fit", &a.size_distribution_fit, &b.size_distribution_fit, tol)?;
    compare_fit("fitness_size_fit", &a.fitness_size_fit, &b.fitness_size_fit, tol)?;
    compare_fit("degree_size_fit", &a.degree_size_fit, &b.degree_size_fit, tol)
}

/// Basin map with consecutive blocks of the given sizes; only the optimum
/// table is meaningful.
#[cfg(test)]
pub(crate) fn basin_map_from_sizes(blocks: &[(u64, f64)], n: u32) -> crate::basin_mapper::BasinMap {
    use crate::basin_mapper::{BasinMap, Optimum};
    let mut assignment = Vec::new();
    let mut optima = Vec::new();
    for (id, &(size, fitness)) in blocks.iter().enumerate() {
        optima.push(Optimum {
            id: id as u32,
            config: assignment.len() as u32,
            fitness,
            basin_size: size,
        });
        assignment.extend(std::iter::repeat_n(id as u32, size as usize));
    }
    BasinMap::from_parts(n, assignment, optima)
}
