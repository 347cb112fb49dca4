use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Method, Overrides, Param};
use super::HarnessError;
use crate::construct::{certify, ConstructError, ConstructionResult, PhaseStats};
use crate::dense::{
    clique_union_baseline, dense_clique_size, dense_lower_construct, path_power_construct, path_power_defaults,
    DenseLowerOptions, DEFAULT_CLIQUE_BUDGET,
};
use crate::graph::{gen_gnp, spanning_forest, Graph, RngSeed};
use crate::sparse::{sparse_construct, SparseOptions, DEFAULT_TILE_BUDGET};
use crate::theory::{dense_params, gamma_c, log_base, sparse_limit, GAMMA_TOL};

/// Version of the summary JSON layout.
pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 11] = [
    "n",
    "param",
    "method",
    "seed",
    "edges",
    "edges_per_vertex",
    "edges_over_nlogn",
    "certified",
    "runtime_ms",
    "theory_center",
    "theory_radius",
];

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in graph cell `cell`; every method in a cell sees
/// the same graph for a given trial.
pub fn trial_seed(master: u64, cell: usize, trial: usize) -> u64 {
    splitmix(splitmix(splitmix(master) ^ cell as u64) ^ trial as u64)
}

/// The graph of a trial: `G(n, p)` drawn from stream 0 of `seed`.
pub fn trial_graph(n: usize, param: &Param, seed: u64) -> Result<Graph, HarnessError> {
    Ok(gen_gnp(n, param.probability(n), RngSeed::new(seed, 0))?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    pub n: usize,
    pub param: String,
    pub method: Method,
    pub seed: u64,
    pub edges: usize,
    pub edges_per_vertex: f64,
    /// `edges / (n log_{1/p} n)`; for `p = n^{−α}` this is `α · edges / n`.
    pub edges_over_nlogn: f64,
    pub certified: bool,
    pub runtime_ms: f64,
    /// Predicted edge count: `γ n log_{1/p} n` for constant `p`, the limit
    /// of `X_n / n` times `n` for `p = n^{−α}`.
    pub theory_center: Option<f64>,
    /// Half-width of the dense prediction interval; empty for `p = n^{−α}`.
    pub theory_radius: Option<f64>,
    pub phase_stats: PhaseStats,
}

/// `(center, radius)` of the edge-count prediction.
pub fn theory_columns(n: usize, param: &Param) -> (Option<f64>, Option<f64>) {
    match param {
        Param::P(p) => match dense_params(n as u64, *p) {
            Ok(d) => (Some(d.prediction_center), Some(d.prediction_radius)),
            Err(_) => (None, None),
        },
        Param::Alpha(a) => {
            if a.to_f64() >= 1.0 {
                let c = (n as f64).powf(1.0 - a.to_f64());
                let center = gamma_c(c, GAMMA_TOL).ok().map(|s| (1.0 - s.gamma) * n as f64);
                (center, None)
            } else {
                (sparse_limit(*a).ok().map(|s| s.limit * n as f64), None)
            }
        }
    }
}

fn dense_options(p: f64, o: &Overrides) -> DenseLowerOptions {
    DenseLowerOptions {
        p: Some(p),
        k: o.k,
        v_fraction: o.v_fraction,
        complete_forest: o.complete_forest.unwrap_or(true),
        ..DenseLowerOptions::default()
    }
}

/// Runs one method on one graph.
pub fn run_method(
    g: &Graph,
    method: Method,
    param: &Param,
    o: &Overrides,
) -> Result<ConstructionResult, ConstructError> {
    let n = g.n();
    let forest = o.complete_forest.unwrap_or(true);
    let need_p = || match param {
        Param::P(p) => Ok(*p),
        Param::Alpha(_) => Err(ConstructError::Parameter(format!("{method} needs a constant p"))),
    };
    match method {
        Method::DenseLb => dense_lower_construct(g, &dense_options(need_p()?, o)),
        Method::CliqueUnion => {
            // same clique size as dense-lb on the same instance
            let p = need_p()?;
            let v = match o.v_fraction {
                Some(f) => (f * n as f64).floor() as usize,
                None => (n as f64 / (n as f64).ln()).floor() as usize,
            };
            let k = dense_clique_size(v.max(1), p, o.k);
            clique_union_baseline(g, k, DEFAULT_CLIQUE_BUDGET, forest)
        }
        Method::PathPower => {
            let (m, k) = path_power_defaults(n, need_p()?);
            path_power_construct(g, o.m.unwrap_or(m), o.k.unwrap_or(k), forest)
        }
        Method::Sparse => {
            let Param::Alpha(a) = param else {
                return Err(ConstructError::Parameter("sparse needs alpha".into()));
            };
            let opts = SparseOptions {
                size: o.gadget_j,
                tile_budget: o.tile_budget.unwrap_or(DEFAULT_TILE_BUDGET),
                cascade: o.cascade.unwrap_or(true),
                complete_forest: forest,
            };
            sparse_construct(g, *a, &opts)
        }
        Method::Forest => {
            let f = spanning_forest(g);
            let stats = PhaseStats {
                forest_edges_added: Some(f.len()),
                ..PhaseStats::default()
            };
            certify(g, "forest", f.edges().to_vec(), None, stats)
        }
    }
}

fn record(n: usize, param: &Param, method: Method, seed: u64, r: ConstructionResult, ms: f64) -> TrialRecord {
    let nf = n as f64;
    let log = match param {
        Param::P(p) => log_base(nf, *p),
        Param::Alpha(a) => 1.0 / a.to_f64(),
    };
    let (center, radius) = theory_columns(n, param);
    TrialRecord {
        n,
        param: param.to_string(),
        method,
        seed,
        edges: r.achieved_edges,
        edges_per_vertex: r.achieved_edges as f64 / nf,
        edges_over_nlogn: r.achieved_edges as f64 / (nf * log),
        certified: r.certified,
        runtime_ms: ms,
        theory_center: center,
        theory_radius: radius,
        phase_stats: r.phase_stats,
    }
}

/// All methods of one `(cell, trial)` on a shared graph.
fn run_trial(
    cfg: &ExperimentConfig,
    n: usize,
    param: &Param,
    cell: usize,
    trial: usize,
) -> Result<Vec<TrialRecord>, HarnessError> {
    let seed = trial_seed(cfg.master_seed, cell, trial);
    let g = trial_graph(n, param, seed)?;
    let mut out = Vec::new();
    for &method in cfg.methods.iter().filter(|m| m.accepts(param)) {
        let start = Instant::now();
        let r = run_method(&g, method, param, &cfg.overrides).map_err(|source| HarnessError::Trial {
            n,
            param: param.to_string(),
            method,
            seed,
            source,
        })?;
        if !r.certified {
            return Err(HarnessError::Trial {
                n,
                param: param.to_string(),
                method,
                seed,
                source: ConstructError::Parameter("result not certified".into()),
            });
        }
        out.push(record(n, param, method, seed, r, start.elapsed().as_secs_f64() * 1e3));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stat {
    fn of(xs: impl Iterator<Item = f64> + Clone) -> Self {
        let count = xs.clone().count().max(1) as f64;
        Self {
            mean: xs.clone().sum::<f64>() / count,
            min: xs.clone().fold(f64::INFINITY, f64::min),
            max: xs.fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellSummary {
    pub n: usize,
    pub param: String,
    pub method: Method,
    pub trials: usize,
    pub edges: Stat,
    pub edges_per_vertex: Stat,
    pub edges_over_nlogn: Stat,
    pub runtime_ms: Stat,
    pub all_certified: bool,
    pub theory_center: Option<f64>,
    pub theory_radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentSummary {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub cells: Vec<CellSummary>,
}

impl ExperimentSummary {
    pub fn cell(&self, n: usize, param: &str, method: Method) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.n == n && c.param == param && c.method == method)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> ExperimentSummary {
    let mut cells = Vec::new();
    for (n, param) in cfg.graph_cells() {
        let key = param.to_string();
        for &method in cfg.methods.iter().filter(|m| m.accepts(&param)) {
            let rs: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.n == n && r.param == key && r.method == method)
                .collect();
            if rs.is_empty() {
                continue;
            }
            cells.push(CellSummary {
                n,
                param: key.clone(),
                method,
                trials: rs.len(),
                edges: Stat::of(rs.iter().map(|r| r.edges as f64)),
                edges_per_vertex: Stat::of(rs.iter().map(|r| r.edges_per_vertex)),
                edges_over_nlogn: Stat::of(rs.iter().map(|r| r.edges_over_nlogn)),
                runtime_ms: Stat::of(rs.iter().map(|r| r.runtime_ms)),
                all_certified: rs.iter().all(|r| r.certified),
                theory_center: rs[0].theory_center,
                theory_radius: rs[0].theory_radius,
            });
        }
    }
    ExperimentSummary {
        schema_version: SUMMARY_SCHEMA_VERSION,
        config: cfg.clone(),
        cells,
    }
}

/// Runs every `(cell, trial)` on a bounded worker pool and aggregates. The
/// first failing trial aborts the run and names its seed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    cfg.validate()?;
    let cells = cfg.graph_cells();
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..cfg.seeds).map(move |t| (c, t)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| HarnessError::Config(e.to_string()))?;
    let results: Vec<Result<Vec<TrialRecord>, HarnessError>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(c, t)| run_trial(cfg, cells[c].0, &cells[c].1, c, t))
            .collect()
    });
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    let summary = summarize(cfg, &records);
    Ok(ExperimentOutput { records, summary })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per record under [`CSV_COLUMNS`]; an empty slice yields the header alone.
pub fn write_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_COLUMNS)?;
    for r in records {
        out.write_record([
            r.n.to_string(),
            r.param.clone(),
            r.method.to_string(),
            r.seed.to_string(),
            r.edges.to_string(),
            r.edges_per_vertex.to_string(),
            r.edges_over_nlogn.to_string(),
            r.certified.to_string(),
            format!("{:.3}", r.runtime_ms),
            opt(r.theory_center),
            opt(r.theory_radius),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Runs the experiment and writes the CSV and summary files named in the config.
pub fn run_experiment_to_files(cfg: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let out = run_experiment(cfg)?;
    if let Some(path) = &cfg.csv {
        write_csv(&out.records, std::fs::File::create(path)?)?;
    }
    if let Some(path) = &cfg.summary {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(file, &out.summary)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::Alpha;

    fn small() -> ExperimentConfig {
        let mut c = ExperimentConfig::new(vec![Method::DenseLb, Method::CliqueUnion, Method::Forest]);
        c.ns = vec![64, 128];
        c.ps = vec![0.5];
        c.seeds = 2;
        c.master_seed = 7;
        c.threads = Some(2);
        c
    }

    #[test]
    fn records_and_cells() {
        let out = run_experiment(&small()).unwrap();
        assert_eq!(out.records.len(), 2 * 2 * 3);
        assert_eq!(out.summary.cells.len(), 2 * 3);
        assert!(out.records.iter().all(|r| r.certified));
        let c = out.summary.cell(128, "p=0.5", Method::DenseLb).unwrap();
        assert_eq!(c.trials, 2);
        assert!(c.edges.min <= c.edges.mean && c.edges.mean <= c.edges.max);
    }

    #[test]
    fn deterministic_replay() {
        let a = run_experiment(&small()).unwrap();
        let mut cfg = small();
        cfg.threads = Some(1);
        let b = run_experiment(&cfg).unwrap();
        let key = |r: &TrialRecord| {
            (
                r.n,
                r.param.clone(),
                r.method.name(),
                r.seed,
                r.edges,
                r.phase_stats.clone(),
            )
        };
        assert_eq!(
            a.records.iter().map(key).collect::<Vec<_>>(),
            b.records.iter().map(key).collect::<Vec<_>>()
        );
        // a single record replays from its seed alone
        let r = &a.records[3];
        let g = trial_graph(r.n, &Param::P(0.5), r.seed).unwrap();
        let again = run_method(&g, r.method, &Param::P(0.5), &Overrides::default()).unwrap();
        assert_eq!(again.achieved_edges, r.edges);
    }

    #[test]
    fn empty_grid_gives_header_only() {
        let cfg = ExperimentConfig::new(vec![Method::DenseLb]);
        let out = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&out.records, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", CSV_COLUMNS.join(",")));
    }

    #[test]
    fn sparse_cells_skip_dense_methods() {
        let mut c = ExperimentConfig::new(vec![Method::DenseLb, Method::Sparse]);
        c.ns = vec![300];
        c.alphas = vec!["0.45".parse::<Alpha>().unwrap()];
        let out = run_experiment(&c).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].method, Method::Sparse);
        assert_eq!(out.records[0].param, "alpha=9/20");
        assert!(out.records[0].theory_center.is_some());
    }

    #[test]
    fn seeds_differ_across_cells_and_trials() {
        let s: Vec<u64> = (0..3).flat_map(|c| (0..3).map(move |t| trial_seed(1, c, t))).collect();
        let mut d = s.clone();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), s.len());
    }
}
