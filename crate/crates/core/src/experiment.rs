//! Per-instance pipeline, on-disk outputs, and multi-instance sweeps.
//!
//! One instance runs basins -> LON -> network statistics -> basin
//! statistics. A sweep runs seeds `base_seed, base_seed + 1, ...` for every
//! `(n, k)` pair and aggregates per-metric means and sample standard
//! deviations.
//!
//! Output layout for a sweep:
//!
//! ```text
//! out/
//!   aggregate.json  aggregate.csv
//!   degree_fit.csv  basin_size_fit.csv  fitness_size_fit.csv
//!   degree_size_fit.csv  global_basin.csv  failures.csv
//!   <n>_<k>_<seed>/
//!     landscape.json  report.json
//!     nodes.csv  edges.csv  degree_cumulative.csv
//!     basin_sizes.csv  fitness_size.csv
//! ```

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basin_mapper::{compute_basins_capped, BasinMap, DEFAULT_EXHAUSTIVE_CAP};
use crate::basin_stats::{
    basin_report, basin_size_distribution, write_basin_sizes_csv, write_fitness_size_csv,
    BasinReport, RegressionFit,
};
use crate::error::{Error, Result};
use crate::graph_metrics::{cumulative_degree_distribution, network_stats, NetworkStats};
use crate::landscape::Landscape;
use crate::lon_builder::{build_lon, LocalOptimaNetwork};
use crate::numfmt::g17;

/// Every statistic for one `(n, k, seed)` instance. Equality ignores
/// `duration`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceReport {
    pub n: u32,
    pub k: u32,
    pub seed: u64,
    #[serde(flatten)]
    pub network: NetworkStats,
    #[serde(flatten)]
    pub basins: BasinReport,
    /// Wall-clock time of the analysis. Not serialized, so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub duration: Duration,
}

impl PartialEq for InstanceReport {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.k, self.seed) == (other.n, other.k, other.seed)
            && self.network == other.network
            && self.basins == other.basins
    }
}

/// Full in-memory result of analyzing one landscape.
pub struct Analysis {
    pub landscape: Landscape,
    pub basins: BasinMap,
    pub lon: LocalOptimaNetwork,
    pub report: InstanceReport,
}

pub fn analyze(landscape: Landscape, max_exhaustive_n: u32) -> Result<Analysis> {
    let started = Instant::now();
    let basins = compute_basins_capped(&landscape, max_exhaustive_n)?;
    let lon = build_lon(&basins);
    let network = network_stats(&lon.graph);
    let basin_stats = basin_report(&basins, &lon);
    let report = InstanceReport {
        n: landscape.n(),
        k: landscape.k(),
        seed: landscape.seed(),
        network,
        basins: basin_stats,
        duration: started.elapsed(),
    };
    Ok(Analysis {
        landscape,
        basins,
        lon,
        report,
    })
}

pub fn analyze_seeded(n: u32, k: u32, seed: u64, max_exhaustive_n: u32) -> Result<Analysis> {
    if n > max_exhaustive_n {
        return Err(Error::Capacity {
            n,
            cap: max_exhaustive_n,
        });
    }
    analyze(Landscape::new(n, k, seed)?, max_exhaustive_n)
}

pub const INSTANCE_FILES: [&str; 7] = [
    "landscape.json",
    "report.json",
    "nodes.csv",
    "edges.csv",
    "degree_cumulative.csv",
    "basin_sizes.csv",
    "fitness_size.csv",
];

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

impl Analysis {
    /// Writes the instance files into `dir`. On failure, files already
    /// written are removed.
    pub fn write_outputs(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let result = self.write_all(dir);
        if result.is_err() {
            for name in INSTANCE_FILES {
                let _ = fs::remove_file(dir.join(name));
            }
        }
        result
    }

    fn write_all(&self, dir: &Path) -> Result<()> {
        self.landscape.save_json(&dir.join("landscape.json"))?;
        write_json(&dir.join("report.json"), &self.report)?;

        let degrees = self.lon.degrees();
        let mut w = create(&dir.join("nodes.csv"))?;
        self.basins.write_nodes_csv(&mut w, Some(&degrees))?;
        w.flush()?;

        let mut w = create(&dir.join("edges.csv"))?;
        self.lon.graph.write_edges_csv(&mut w)?;
        w.flush()?;

        let mut w = create(&dir.join("degree_cumulative.csv"))?;
        cumulative_degree_distribution(&self.lon.graph).write_csv(&mut w)?;
        w.flush()?;

        let mut w = create(&dir.join("basin_sizes.csv"))?;
        write_basin_sizes_csv(&basin_size_distribution(&self.basins), &mut w)?;
        w.flush()?;

        let mut w = create(&dir.join("fitness_size.csv"))?;
        write_fitness_size_csv(&self.basins, &self.lon, &mut w)?;
        w.flush()?;
        Ok(())
    }
}

/// Named scalar extracted from an instance report; `None` marks an
/// undefined statistic.
pub type MetricFn = fn(&InstanceReport) -> Option<f64>;

fn fit_field(fit: &Option<RegressionFit>, field: fn(&RegressionFit) -> Option<f64>) -> Option<f64> {
    fit.as_ref().and_then(field)
}

/// Every aggregated metric, in output order.
pub const METRICS: &[(&str, MetricFn)] = &[
    ("n_v", |r| Some(r.network.n_v as f64)),
    ("n_e", |r| Some(r.network.n_e as f64)),
    ("clustering", |r| r.network.clustering),
    ("clustering_random", |r| Some(r.network.clustering_random)),
    ("mean_degree", |r| Some(r.network.mean_degree)),
    ("mean_path_length", |r| r.network.mean_path_length),
    ("assortativity", |r| r.network.assortativity),
    ("component_count", |r| Some(r.network.component_count as f64)),
    ("global_opt_relative_size", |r| Some(r.basins.global_opt_relative_size)),
    ("degree_fit_rho", |r| fit_field(&r.basins.degree_distribution_fit, |f| f.rho)),
    ("degree_fit_alpha", |r| fit_field(&r.basins.degree_distribution_fit, |f| Some(f.alpha))),
    ("degree_fit_beta", |r| fit_field(&r.basins.degree_distribution_fit, |f| Some(f.beta))),
    ("size_fit_rho", |r| fit_field(&r.basins.size_distribution_fit, |f| f.rho)),
    ("size_fit_alpha", |r| fit_field(&r.basins.size_distribution_fit, |f| Some(f.alpha))),
    ("size_fit_beta", |r| fit_field(&r.basins.size_distribution_fit, |f| Some(f.beta))),
    ("fitness_fit_rho", |r| fit_field(&r.basins.fitness_size_fit, |f| f.rho)),
    ("fitness_fit_alpha", |r| fit_field(&r.basins.fitness_size_fit, |f| Some(f.alpha))),
    ("fitness_fit_beta", |r| fit_field(&r.basins.fitness_size_fit, |f| Some(f.beta))),
    ("degree_size_fit_rho", |r| fit_field(&r.basins.degree_size_fit, |f| f.rho)),
    ("degree_size_fit_alpha", |r| fit_field(&r.basins.degree_size_fit, |f| Some(f.alpha))),
    ("degree_size_fit_beta", |r| fit_field(&r.basins.degree_size_fit, |f| Some(f.beta))),
];

/// Mean and sample standard deviation of one metric over instances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: Option<f64>,
    /// `(count - 1)` denominator; 0 when only one value is available.
    pub std: Option<f64>,
    pub count: usize,
    /// Instances where the metric was undefined.
    pub excluded: usize,
}

impl MetricSummary {
    pub fn from_values(values: &[Option<f64>]) -> Self {
        let defined: Vec<f64> = values.iter().flatten().copied().collect();
        let count = defined.len();
        let excluded = values.len() - count;
        if count == 0 {
            return MetricSummary {
                mean: None,
                std: None,
                count,
                excluded,
            };
        }
        let mean = defined.iter().sum::<f64>() / count as f64;
        let std = if count == 1 {
            0.0
        } else {
            let ss: f64 = defined.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (count - 1) as f64).sqrt()
        };
        MetricSummary {
            mean: Some(mean),
            std: Some(std),
            count,
            excluded,
        }
    }

    /// Standard error of the mean.
    pub fn standard_error(&self) -> Option<f64> {
        match (self.std, self.count) {
            (Some(s), c) if c > 0 => Some(s / (c as f64).sqrt()),
            _ => None,
        }
    }
}

/// Aggregate of all instances for one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub n: u32,
    pub k: u32,
    pub instance_count: usize,
    /// Set when `instance_count == 1`: standard deviations are reported as
    /// 0 rather than undefined.
    pub std_placeholder: bool,
    pub metrics: BTreeMap<String, MetricSummary>,
}

impl AggregateReport {
    pub fn from_reports(n: u32, k: u32, reports: &[InstanceReport]) -> Self {
        let metrics = METRICS
            .iter()
            .map(|(name, f)| {
                let values: Vec<Option<f64>> = reports.iter().map(f).collect();
                (name.to_string(), MetricSummary::from_values(&values))
            })
            .collect();
        AggregateReport {
            n,
            k,
            instance_count: reports.len(),
            std_placeholder: reports.len() == 1,
            metrics,
        }
    }

    pub fn metric(&self, name: &str) -> &MetricSummary {
        self.metrics
            .get(name)
            .unwrap_or_else(|| panic!("unknown metric {name}"))
    }

    pub fn mean(&self, name: &str) -> f64 {
        self.metric(name).mean.unwrap_or(f64::NAN)
    }
}

/// Sweep parameters.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub ns: Vec<u32>,
    pub ks: Vec<u32>,
    pub instances: usize,
    pub base_seed: u64,
    pub max_exhaustive_n: u32,
    /// When set, per-instance directories and aggregate files are written here.
    pub out_dir: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(ns: Vec<u32>, ks: Vec<u32>, instances: usize) -> Self {
        SweepConfig {
            ns,
            ks,
            instances,
            base_seed: 0,
            max_exhaustive_n: DEFAULT_EXHAUSTIVE_CAP,
            out_dir: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceFailure {
    pub n: u32,
    pub k: u32,
    pub seed: u64,
    pub error: String,
    pub exit_code: i32,
}

/// Results for one `(n, k)` pair.
#[derive(Clone, Debug)]
pub struct GroupResult {
    pub n: u32,
    pub k: u32,
    /// Successful instances in seed order.
    pub reports: Vec<InstanceReport>,
    pub aggregate: Option<AggregateReport>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub groups: Vec<GroupResult>,
    pub failures: Vec<InstanceFailure>,
}

impl SweepResult {
    pub fn group(&self, n: u32, k: u32) -> Option<&GroupResult> {
        self.groups.iter().find(|g| g.n == n && g.k == k)
    }
}

/// Directory name of one instance inside a sweep output.
pub fn instance_dir_name(n: u32, k: u32, seed: u64) -> String {
    format!("{n}_{k}_{seed}")
}

/// Process exit code for an error: 1 usage, 2 capacity, 4 I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 2,
        Error::Io(_) => 4,
        Error::Json(e) if e.is_io() => 4,
        _ => 1,
    }
}

/// Runs every instance of the sweep and aggregates per `(n, k)`.
///
/// Instance `i` of a group uses seed `base_seed + i`, independent of every
/// other instance. Failed instances are recorded and the sweep continues.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    if config.instances == 0 {
        return Err(Error::InvalidParameters("instances must be at least 1".into()));
    }
    if let Some(dir) = &config.out_dir {
        fs::create_dir_all(dir)?;
    }
    let jobs: Vec<(u32, u32, u64)> = config
        .ns
        .iter()
        .flat_map(|&n| {
            config.ks.iter().flat_map(move |&k| {
                (0..config.instances as u64).map(move |i| (n, k, config.base_seed.wrapping_add(i)))
            })
        })
        .collect();

    let outcomes: Vec<std::result::Result<InstanceReport, InstanceFailure>> = jobs
        .par_iter()
        .map(|&(n, k, seed)| {
            let run = || -> Result<InstanceReport> {
                let analysis = analyze_seeded(n, k, seed, config.max_exhaustive_n)?;
                if let Some(dir) = &config.out_dir {
                    analysis.write_outputs(&dir.join(instance_dir_name(n, k, seed)))?;
                }
                Ok(analysis.report)
            };
            run().map_err(|e| InstanceFailure {
                n,
                k,
                seed,
                exit_code: exit_code(&e),
                error: e.to_string(),
            })
        })
        .collect();

    let mut groups: Vec<GroupResult> = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        let (n, k) = match &outcome {
            Ok(r) => (r.n, r.k),
            Err(f) => (f.n, f.k),
        };
        if groups.last().is_none_or(|g| (g.n, g.k) != (n, k)) {
            groups.push(GroupResult {
                n,
                k,
                reports: Vec::new(),
                aggregate: None,
            });
        }
        match outcome {
            Ok(r) => groups.last_mut().unwrap().reports.push(r),
            Err(f) => failures.push(f),
        }
    }
    for g in &mut groups {
        if !g.reports.is_empty() {
            g.aggregate = Some(AggregateReport::from_reports(g.n, g.k, &g.reports));
        }
    }
    let result = SweepResult { groups, failures };
    if let Some(dir) = &config.out_dir {
        write_sweep_outputs(&result, dir)?;
    }
    Ok(result)
}

fn opt(v: Option<f64>) -> String {
    v.map(g17).unwrap_or_default()
}

/// Column order of `aggregate.csv`.
pub const AGGREGATE_COLUMNS: [&str; 15] = [
    "n", "k", "n_v_mean", "n_v_std", "n_e_mean", "n_e_std", "C_mean", "C_std", "Cr_mean",
    "z_mean", "z_std", "l_mean", "l_std", "a_mean", "a_std",
];

pub fn write_sweep_outputs(result: &SweepResult, dir: &Path) -> Result<()> {
    let aggregates: Vec<&AggregateReport> =
        result.groups.iter().filter_map(|g| g.aggregate.as_ref()).collect();
    write_json(&dir.join("aggregate.json"), &aggregates)?;

    let mut w = create(&dir.join("aggregate.csv"))?;
    writeln!(w, "{}", AGGREGATE_COLUMNS.join(","))?;
    for a in &aggregates {
        let m = |name: &str| a.metric(name);
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            a.n,
            a.k,
            opt(m("n_v").mean),
            opt(m("n_v").std),
            opt(m("n_e").mean),
            opt(m("n_e").std),
            opt(m("clustering").mean),
            opt(m("clustering").std),
            opt(m("clustering_random").mean),
            opt(m("mean_degree").mean),
            opt(m("mean_degree").std),
            opt(m("mean_path_length").mean),
            opt(m("mean_path_length").std),
            opt(m("assortativity").mean),
            opt(m("assortativity").std),
        )?;
    }
    w.flush()?;

    for (file, prefix) in [
        ("degree_fit.csv", "degree_fit"),
        ("basin_size_fit.csv", "size_fit"),
        ("fitness_size_fit.csv", "fitness_fit"),
        ("degree_size_fit.csv", "degree_size_fit"),
    ] {
        let mut w = create(&dir.join(file))?;
        writeln!(w, "n,k,rho_mean,rho_std,alpha_mean,alpha_std,beta_mean,beta_std,excluded")?;
        for a in &aggregates {
            let rho = a.metric(&format!("{prefix}_rho"));
            let alpha = a.metric(&format!("{prefix}_alpha"));
            let beta = a.metric(&format!("{prefix}_beta"));
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                a.n,
                a.k,
                opt(rho.mean),
                opt(rho.std),
                opt(alpha.mean),
                opt(alpha.std),
                opt(beta.mean),
                opt(beta.std),
                alpha.excluded
            )?;
        }
        w.flush()?;
    }

    let mut w = create(&dir.join("global_basin.csv"))?;
    writeln!(w, "n,k,relative_size_mean,relative_size_std")?;
    for a in &aggregates {
        let m = a.metric("global_opt_relative_size");
        writeln!(w, "{},{},{},{}", a.n, a.k, opt(m.mean), opt(m.std))?;
    }
    w.flush()?;

    let mut w = create(&dir.join("failures.csv"))?;
    writeln!(w, "n,k,seed,error")?;
    for f in &result.failures {
        writeln!(w, "{},{},{},\"{}\"", f.n, f.k, f.seed, f.error.replace('"', "'"))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_instance_has_zero_std() {
        let s = MetricSummary::from_values(&[Some(3.5)]);
        assert_eq!((s.mean, s.std, s.count), (Some(3.5), Some(0.0), 1));
        let r = analyze_seeded(8, 3, 1, 24).unwrap().report;
        let a = AggregateReport::from_reports(8, 3, std::slice::from_ref(&r));
        assert!(a.std_placeholder);
        assert_eq!(a.metric("n_v").mean, Some(r.network.n_v as f64));
        assert_eq!(a.metric("n_v").std, Some(0.0));
    }

    #[test]
    fn sample_std_and_exclusions() {
        let s = MetricSummary::from_values(&[Some(1.0), None, Some(3.0), Some(5.0)]);
        assert_eq!(s.mean, Some(3.0));
        assert_eq!(s.std, Some(2.0));
        assert_eq!((s.count, s.excluded), (3, 1));
        let empty = MetricSummary::from_values(&[None, None]);
        assert_eq!((empty.mean, empty.std, empty.excluded), (None, None, 2));
    }

    #[test]
    fn report_json_field_names() {
        let r = analyze_seeded(6, 2, 3, 24).unwrap().report;
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for key in [
            "n", "k", "seed", "n_v", "n_e", "mean_degree", "clustering", "clustering_random",
            "mean_path_length", "assortativity", "component_count", "global_opt_relative_size",
            "degree_distribution_fit", "size_distribution_fit", "fitness_size_fit", "degree_size_fit",
        ] {
            assert!(keys.iter().any(|k| k == key), "missing {key}");
        }
        assert_eq!(keys.len(), 16);
        let back: InstanceReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.network, r.network);
        assert_eq!(back.basins, r.basins);
    }

    #[test]
    fn capacity_and_parameter_errors() {
        assert!(matches!(analyze_seeded(20, 2, 0, 16), Err(Error::Capacity { .. })));
        assert_eq!(exit_code(&analyze_seeded(20, 2, 0, 16).err().unwrap()), 2);
        assert_eq!(exit_code(&analyze_seeded(8, 8, 0, 16).err().unwrap()), 1);
    }

    #[test]
    fn sweep_records_failures_and_continues() {
        let cfg = SweepConfig::new(vec![6], vec![2, 6], 2);
        let res = run_sweep(&cfg).unwrap();
        assert_eq!(res.failures.len(), 2);
        assert!(res.failures.iter().all(|f| f.k == 6 && f.exit_code == 1));
        let g = res.group(6, 2).unwrap();
        assert_eq!(g.reports.len(), 2);
        assert_eq!(g.reports[1].seed, 1);
        assert_eq!(g.aggregate.as_ref().unwrap().instance_count, 2);
    }
}
