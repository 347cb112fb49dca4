use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chordal_core::graph::{read_edge_list, write_edge_list, Graph};
use chordal_core::harness::{
    run_experiment_to_files, run_method, trial_graph, verify_suite, write_csv, ExperimentConfig, Method, Overrides,
    Param, VerifyLevel,
};
use chordal_core::oracle::{max_chordal_exact, OracleOptions};
use chordal_core::sparse::{build_fj, power_path_gadget, square_path_gadget};
use chordal_core::theory::{
    dense_params, gamma_c, gamma_solve, sparse_limit, Alpha, DenseReport, TheoryReport, GAMMA_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const SEED_ENV: &str = "CHORDAL_SEED";

#[derive(Parser)]
#[command(name = "chordal", version, about = "Large chordal subgraphs of random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predicted parameters for constant p, or the limit for p = n^-alpha.
    Theory {
        #[arg(long, required_unless_present = "alpha")]
        n: Option<u64>,
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Solve for gamma(p), or sum the component series gamma(c) at p = c/n.
    Gamma {
        #[arg(long, conflicts_with = "c", required_unless_present = "c")]
        p: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = GAMMA_TOL)]
        tol: f64,
    },
    /// Run one construction and print a certified result as JSON.
    Construct(ConstructArgs),
    /// Build a gadget and print it as JSON.
    Gadget(GadgetArgs),
    /// Exact maximum chordal subgraph of a small graph.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Run a grid of trials, writing CSV rows and a summary JSON.
    Experiment(ExperimentArgs),
    /// Run the invariant battery; exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Flip one bit of one tree code; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct ParamArgs {
    #[arg(long)]
    p: Option<f64>,
    /// Exponent in p = n^-alpha, as a fraction or decimal.
    #[arg(long)]
    alpha: Option<Alpha>,
}

impl ParamArgs {
    fn param(&self) -> Param {
        match (self.p, self.alpha) {
            (Some(p), _) => Param::P(p),
            (None, Some(a)) => Param::Alpha(a),
            (None, None) => unreachable!("clap requires one of --p and --alpha"),
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[command(flatten)]
    param: ParamArgs,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Read the host graph instead of sampling it.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    v_fraction: Option<f64>,
    #[arg(long)]
    gadget_j: Option<usize>,
    #[arg(long)]
    tile_budget: Option<u64>,
    #[arg(long)]
    no_cascade: bool,
    #[arg(long)]
    no_forest: bool,
    /// Write the chordal subgraph as an edge list.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetFamily {
    Fj,
    SquarePath,
    PowerPath,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long, value_enum, default_value_t = GadgetFamily::Fj)]
    family: GadgetFamily,
    /// alpha for F_j; a value above 1 is read as 1/alpha.
    #[arg(long)]
    alpha: Option<Alpha>,
    /// Index j of F_j or of the path power.
    #[arg(long)]
    j: Option<usize>,
    /// k of the square path, or the power of the path power.
    #[arg(long)]
    k: Option<usize>,
    /// Number of chained copies of the square path.
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON configuration; flags given alongside it replace its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    ps: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<Alpha>,
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<Method>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
        .map_err(|e: chordal_core::harness::HarnessError| e.to_string())
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    let out = io::stdout();
    let mut out = out.lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_edge_list(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn write_graph(g: &Graph, path: &PathBuf) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    write_edge_list(g, &mut w)?;
    w.flush()?;
    Ok(())
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{SEED_ENV}={s:?}"))?)),
        Err(_) => Ok(None),
    }
}

fn construct(a: ConstructArgs) -> Result<()> {
    let param = a.param.param();
    let g = match (&a.input, a.n) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(n)) => trial_graph(n, &param, a.seed)?,
        (None, None) => bail!("need --n or --in"),
    };
    let o = Overrides {
        k: a.k,
        m: a.m,
        v_fraction: a.v_fraction,
        gadget_j: a.gadget_j,
        tile_budget: a.tile_budget,
        cascade: a.no_cascade.then_some(false),
        complete_forest: a.no_forest.then_some(false),
    };
    let r = run_method(&g, a.method, &param, &o)?;
    if let Some(path) = &a.emit {
        write_graph(&r.subgraph.to_graph(), path)?;
    }
    let mut v = json!({
        "method": a.method,
        "n": g.n(),
        "seed": a.seed,
        "edges": r.achieved_edges,
        "certified": r.certified,
        "phaseStats": r.phase_stats,
    });
    match param {
        Param::P(p) => v["p"] = json!(p),
        Param::Alpha(al) => {
            v["alpha"] = json!(al);
            v["tilesPlaced"] = json!(r.phase_stats.tiles_placed);
            v["gadget"] = json!(r.phase_stats.gadget);
            v["forestEdgesAdded"] = json!(r.phase_stats.forest_edges_added);
        }
    }
    print_json(&v)
}

fn gadget(a: GadgetArgs) -> Result<()> {
    let gd = match a.family {
        GadgetFamily::Fj => {
            let Some(mut alpha) = a.alpha else {
                bail!("F_j needs --alpha")
            };
            if alpha.to_f64() > 1.0 {
                alpha = alpha.recip();
            }
            build_fj(alpha, a.j.unwrap_or(1))?
        }
        GadgetFamily::SquarePath => square_path_gadget(a.k.unwrap_or(1), a.copies)?,
        GadgetFamily::PowerPath => {
            let (Some(k), Some(j)) = (a.k, a.j) else {
                bail!("power path needs --k and --j")
            };
            power_path_gadget(k, j)?
        }
    };
    if let Some(path) = &a.emit {
        write_graph(&gd.graph, path)?;
    }
    print_json(&gd)
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let mut cfg = match &a.config {
        Some(path) => {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            serde_json::from_reader(BufReader::new(f)).with_context(|| format!("parsing {}", path.display()))?
        }
        None => ExperimentConfig::new(Vec::new()),
    };
    if !a.ns.is_empty() {
        cfg.ns = a.ns;
    }
    if !a.ps.is_empty() {
        cfg.ps = a.ps;
    }
    if !a.alphas.is_empty() {
        cfg.alphas = a.alphas;
    }
    if !a.methods.is_empty() {
        cfg.methods = a.methods;
    }
    cfg.seeds = a.seeds.unwrap_or(cfg.seeds);
    cfg.master_seed = a.master_seed.unwrap_or(cfg.master_seed);
    if let Some(s) = env_seed()? {
        cfg.master_seed = s;
    }
    cfg.csv = a.csv.or(cfg.csv);
    cfg.summary = a.summary.or(cfg.summary);
    cfg.threads = a.threads.or(cfg.threads);
    let to_stdout = cfg.csv.is_none();
    let out = run_experiment_to_files(&cfg)?;
    if to_stdout {
        write_csv(&out.records, io::stdout().lock())?;
    }
    if cfg.summary.is_none() {
        let mut err = io::stderr().lock();
        serde_json::to_writer_pretty(&mut err, &out.summary)?;
        writeln!(err)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { n, param, seed, out } => {
            let g = trial_graph(n, &param.param(), seed)?;
            match out {
                Some(path) => write_graph(&g, &path)?,
                None => {
                    let mut w = BufWriter::new(io::stdout().lock());
                    write_edge_list(&g, &mut w)?;
                    w.flush()?;
                }
            }
        }
        Command::Theory { n, param } => {
            let report = match param.param() {
                Param::P(p) => {
                    let n = n.context("--n is required with --p")?;
                    TheoryReport::Dense(DenseReport::from(&dense_params(n, p)?))
                }
                Param::Alpha(a) => TheoryReport::Sparse(sparse_limit(a)?),
            };
            print_json(&report)?;
        }
        Command::Gamma { p, c, tol } => match (p, c) {
            (Some(p), _) => print_json(&gamma_solve(p, tol)?)?,
            (None, Some(c)) => {
                let s = gamma_c(c, tol)?;
                print_json(&json!({ "series": s, "edgesPerVertex": 1.0 - s.gamma }))?;
            }
            (None, None) => unreachable!("clap requires one of --p and --c"),
        },
        Command::Construct(a) => construct(a)?,
        Command::Gadget(a) => gadget(a)?,
        Command::Oracle {
            input,
            budget,
            max_edges,
        } => {
            let g = read_graph(&input)?;
            let d = OracleOptions::default();
            let opts = OracleOptions {
                max_edges: max_edges.unwrap_or(d.max_edges),
                node_budget: budget.unwrap_or(d.node_budget),
            };
            print_json(&max_chordal_exact(&g, &opts)?)?;
        }
        Command::Experiment(a) => experiment(a)?,
        Command::Verify {
            level,
            seed,
            inject_fault,
        } => {
            let level = match level {
                Level::Quick => VerifyLevel::Quick,
                Level::Full => VerifyLevel::Full,
            };
            let report = verify_suite(level, seed, inject_fault);
            print_json(&report)?;
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().map(io::Error::kind).or_else(|| {
            c.downcast_ref::<serde_json::Error>()
                .and_then(serde_json::Error::io_error_kind)
        }) == Some(io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
