//! `hrg` — command-line shell over the library: generate graphs, answer
//! shortest-path queries, run validators, and drive the scaling and
//! search-space experiments. All data goes to files or stdout, all
//! diagnostics to stderr. Exit codes: 0 success, 1 runtime error, 2
//! usage error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use hrg::analysis::{self, InnerDiskOutcome, ScalingMetric};
use hrg::experiment::{self, ExperimentConfig, StrategyKind};
use hrg::generate;
use hrg::geometry::ModelParams;
use hrg::io as graph_io;
use hrg::search::{bidirectional_bfs, AlternationStrategy, SearchOutcome};
use hrg::{HrgError, Result};

#[derive(Parser)]
#[command(name = "hrg", version, about = "Hyperbolic random graphs and bidirectional BFS")]
struct Cli {
    /// Worker threads (overrides the HRG_THREADS environment variable;
    /// default: hardware parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Increase log verbosity (-v info, -vv debug)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it to a binary graph file
    Generate(GenerateArgs),
    /// Answer one shortest-path query on a stored graph
    Query(QueryArgs),
    /// Run a structural validator on a stored graph
    Validate(ValidateArgs),
    /// Scaling driver: measure maxdeg/sector growth over a list of n
    Scaling(ScalingArgs),
    /// Batched search-space measurement over (alpha, n) cells
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Radial dispersion, strictly inside (0.5, 1)
    #[arg(long)]
    alpha: f64,
    /// Disk-radius offset C (R = 2 ln n + C)
    #[arg(long = "C", conflicts_with = "avg_degree")]
    offset_c: Option<f64>,
    /// Calibrate C for this target average degree
    #[arg(long)]
    avg_degree: Option<f64>,
    /// RNG seed
    #[arg(long)]
    seed: u64,
    /// Output graph file
    #[arg(long)]
    out: PathBuf,
    /// Use the quadratic reference builder instead of the grid builder
    #[arg(long)]
    naive: bool,
    /// Also export a plain-text edge list ("u v" per line)
    #[arg(long)]
    edge_list: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    /// Graph file produced by `hrg generate`
    #[arg(long)]
    graph: PathBuf,
    /// Source vertex id
    #[arg(long)]
    source: u32,
    /// Target vertex id
    #[arg(long)]
    target: u32,
    /// Alternation strategy: greedy|roundrobin|oracle
    #[arg(long)]
    strategy: String,
    /// Inner-disk radius for the oracle strategy
    #[arg(long, conflicts_with = "rho_auto")]
    rho: Option<f64>,
    /// Derive the oracle inner-disk radius from the graph parameters
    #[arg(long)]
    rho_auto: bool,
    /// Emit the outcome as a JSON document
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Graph file produced by `hrg generate`
    #[arg(long)]
    graph: PathBuf,
    /// powerlaw|maxdeg|sector|innerdisk|width|diameter
    #[arg(long)]
    check: String,
    /// Emit the result as a JSON document
    #[arg(long)]
    json: bool,
    /// Inner-disk radius override (innerdisk, width)
    #[arg(long)]
    rho: Option<f64>,
    /// Sector width override in radians (sector)
    #[arg(long)]
    width: Option<f64>,
    /// Number of random sector placements (sector)
    #[arg(long, default_value_t = 100)]
    sectors: usize,
    /// Start vertex (width); when absent a batch of random starts is used
    #[arg(long)]
    source: Option<u32>,
    /// Number of random starts for the batch width check
    #[arg(long, default_value_t = 100)]
    starts: usize,
    /// exact|estimate (diameter)
    #[arg(long, default_value = "estimate")]
    mode: String,
    /// Double sweeps for the diameter estimate
    #[arg(long, default_value_t = 20)]
    sweeps: usize,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    check_seed: u64,
}

#[derive(Args)]
struct ScalingArgs {
    /// maxdeg|sector
    #[arg(long)]
    metric: String,
    #[arg(long)]
    alpha: f64,
    /// Comma-separated list of n values
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Graphs per n
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    #[arg(long, default_value_t = 8.0)]
    avg_degree: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output CSV (columns: n, alpha, seed, metric, value)
    #[arg(long)]
    out: PathBuf,
    /// Print the fitted exponent as JSON to stdout
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Comma-separated alphas, each strictly inside (0.5, 1)
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    /// Comma-separated n values
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    /// Graphs per (alpha, n) cell
    #[arg(long, default_value_t = 5)]
    graphs: usize,
    /// Start-destination pairs per graph
    #[arg(long, default_value_t = 10_000)]
    pairs: usize,
    /// greedy|roundrobin|oracle
    #[arg(long, default_value = "greedy")]
    strategy: String,
    /// Master seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 8.0)]
    avg_degree: f64,
    /// Per-pair records CSV
    #[arg(long)]
    out: PathBuf,
    /// Per-cell summary JSON
    #[arg(long)]
    summary: PathBuf,
    /// Optional (alpha, x_theory, x_measured) CSV for plotting
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Runtime(HrgError),
}

impl From<HrgError> for CliError {
    fn from(e: HrgError) -> Self {
        CliError::Runtime(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("HRG_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    // The flag wins over the environment variable.
    if let Some(threads) = flag.or(from_env) {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
}

fn run(command: Command) -> std::result::Result<(), CliError> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Query(args) => cmd_query(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Scaling(args) => cmd_scaling(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

fn create_output(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_generate(args: GenerateArgs) -> std::result::Result<(), CliError> {
    let params = match (args.offset_c, args.avg_degree) {
        (Some(c), None) => ModelParams::with_offset(args.n, args.alpha, c, args.seed)?,
        (None, Some(target)) => {
            generate::params_for_average_degree(args.n, args.alpha, target, args.seed)?
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --C and --avg-degree is required".into(),
            ))
        }
    };
    let graph = if args.naive {
        generate::generate_naive(&params)?
    } else {
        generate::generate_fast(&params)?
    };
    graph_io::write_graph(&graph, &mut create_output(&args.out)?)?;
    if let Some(edge_list) = &args.edge_list {
        let mut w = create_output(edge_list)?;
        graph_io::write_edge_list(&graph, &mut w)?;
        w.flush().map_err(HrgError::from)?;
    }
    eprintln!(
        "generated n={} m={} avg_degree={:.3} max_degree={} C={:.4} -> {}",
        graph.n(),
        graph.m(),
        graph.average_degree(),
        graph.max_degree(),
        graph.params().offset(),
        args.out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct QueryReport<'a> {
    source: u32,
    target: u32,
    strategy: &'a str,
    rho: Option<f64>,
    #[serde(flatten)]
    outcome: &'a SearchOutcome,
}

fn cmd_query(args: QueryArgs) -> std::result::Result<(), CliError> {
    let kind = StrategyKind::parse(&args.strategy)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let graph = graph_io::read_graph_from_path(&args.graph)?;
    let (strategy, rho) = match kind {
        StrategyKind::Oracle => {
            let rho = if args.rho_auto {
                analysis::inner_disk_radius(graph.params())
            } else {
                args.rho.ok_or_else(|| {
                    CliError::Usage(
                        "the oracle strategy needs --rho VALUE or --rho-auto".into(),
                    )
                })?
            };
            (AlternationStrategy::GeometricOracle { rho }, Some(rho))
        }
        StrategyKind::Greedy => (AlternationStrategy::Greedy, None),
        StrategyKind::RoundRobin => (AlternationStrategy::RoundRobin, None),
    };
    let outcome = bidirectional_bfs(&graph, args.source, args.target, strategy)?;
    if args.json {
        let report = QueryReport {
            source: args.source,
            target: args.target,
            strategy: kind.name(),
            rho,
            outcome: &outcome,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        match outcome.distance {
            Some(d) => println!(
                "distance {d}, meeting vertex {}, path {:?}",
                outcome.meeting_vertex.unwrap(),
                outcome.path
            ),
            None => println!("unreachable"),
        }
        println!(
            "cost forward {} ({} layers), cost backward {} ({} layers)",
            outcome.cost_forward,
            outcome.layers_forward,
            outcome.cost_backward,
            outcome.layers_backward
        );
    }
    Ok(())
}

fn print_check(json: bool, doc: serde_json::Value, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("{human}");
    }
}

fn cmd_validate(args: ValidateArgs) -> std::result::Result<(), CliError> {
    let graph = graph_io::read_graph_from_path(&args.graph)?;
    let params = *graph.params();
    match args.check.as_str() {
        "powerlaw" => {
            let fit = analysis::fit_power_law(graph.degrees())?;
            let expected = 2.0 * params.alpha() + 1.0;
            print_check(
                args.json,
                json!({
                    "check": "powerlaw",
                    "beta": fit.beta,
                    "tail_count": fit.tail_count,
                    "expected_beta": expected,
                }),
                format!(
                    "powerlaw: beta {:.4} (expected 2a+1 = {expected:.4}, tail {} vertices)",
                    fit.beta, fit.tail_count
                ),
            );
        }
        "maxdeg" => {
            let reference = 1.0 / (2.0 * params.alpha());
            print_check(
                args.json,
                json!({
                    "check": "maxdeg",
                    "max_degree": graph.max_degree(),
                    "n": graph.n(),
                    "reference_exponent": reference,
                }),
                format!(
                    "maxdeg: {} on n = {} (reference growth n^{reference:.4})",
                    graph.max_degree(),
                    graph.n()
                ),
            );
        }
        "sector" => {
            let width = args
                .width
                .unwrap_or_else(|| analysis::scaling_sector_width(graph.n(), params.alpha()));
            let max =
                analysis::max_sector_degree_sum(&graph, width, args.sectors, args.check_seed);
            print_check(
                args.json,
                json!({
                    "check": "sector",
                    "width": width,
                    "sectors": args.sectors,
                    "max_sector_degree_sum": max,
                    "handshake_total": 2 * graph.m() as u64,
                }),
                format!(
                    "sector: max degree sum {max} over {} sectors of width {width:.6}",
                    args.sectors
                ),
            );
        }
        "innerdisk" => {
            let rho = args
                .rho
                .unwrap_or_else(|| analysis::inner_disk_radius(&params));
            let outcome = analysis::inner_disk_check(&graph, rho);
            let (status, vertex) = match outcome {
                InnerDiskOutcome::Witness { vertex } => ("witness", Some(vertex)),
                InnerDiskOutcome::VacuousEmptyInnerDisk => ("vacuous_empty_inner_disk", None),
                InnerDiskOutcome::NoCandidate => ("no_candidate", None),
                InnerDiskOutcome::VerificationFailed { candidate, .. } => {
                    ("verification_failed", Some(candidate))
                }
            };
            print_check(
                args.json,
                json!({
                    "check": "innerdisk",
                    "rho": rho,
                    "status": status,
                    "vertex": vertex,
                }),
                format!("innerdisk: {status} (rho {rho:.4}, vertex {vertex:?})"),
            );
        }
        "width" => {
            let rho = args
                .rho
                .unwrap_or_else(|| analysis::inner_disk_radius(&params));
            if let Some(source) = args.source {
                let w = analysis::phase_one_width(&graph, source, rho)?;
                print_check(
                    args.json,
                    json!({
                        "check": "width",
                        "rho": rho,
                        "source": source,
                        "width": w.width,
                        "start_in_inner_disk": w.start_in_inner_disk,
                    }),
                    format!("width: {:.6} rad from vertex {source}", w.width),
                );
            } else {
                use rand::Rng as _;
                let mut rng = hrg::rng::rng_from_seed(args.check_seed);
                let mut widths: Vec<f64> = Vec::with_capacity(args.starts);
                for _ in 0..args.starts {
                    let s = rng.random_range(0..graph.n()) as u32;
                    widths.push(analysis::phase_one_width(&graph, s, rho)?.width);
                }
                widths.sort_by(f64::total_cmp);
                let median = widths[widths.len() / 2];
                let max = *widths.last().unwrap();
                print_check(
                    args.json,
                    json!({
                        "check": "width",
                        "rho": rho,
                        "starts": args.starts,
                        "median_width": median,
                        "max_width": max,
                    }),
                    format!(
                        "width: median {median:.6} rad, max {max:.6} rad over {} starts",
                        args.starts
                    ),
                );
            }
        }
        "diameter" => match args.mode.as_str() {
            "exact" => {
                let d = analysis::diameter_exact(&graph)?;
                print_check(
                    args.json,
                    json!({"check": "diameter", "mode": "exact", "diameter": d}),
                    format!("diameter: exactly {d}"),
                );
            }
            "estimate" => {
                let d = analysis::diameter_estimate(&graph, args.sweeps, args.check_seed);
                print_check(
                    args.json,
                    json!({"check": "diameter", "mode": "estimate", "lower_bound": d}),
                    format!("diameter: at least {d} ({} double sweeps)", args.sweeps),
                );
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown diameter mode `{other}` (expected exact|estimate)"
                )))
            }
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown check `{other}` \
                 (expected powerlaw|maxdeg|sector|innerdisk|width|diameter)"
            )))
        }
    }
    Ok(())
}

fn cmd_scaling(args: ScalingArgs) -> std::result::Result<(), CliError> {
    let metric =
        ScalingMetric::parse(&args.metric).map_err(|e| CliError::Usage(e.to_string()))?;
    let measurements = analysis::scaling_measurements(
        metric,
        args.alpha,
        &args.n_list,
        args.seeds,
        args.avg_degree,
        args.seed,
    )?;
    let mut w = create_output(&args.out)?;
    writeln!(w, "n,alpha,seed,metric,value").map_err(HrgError::from)?;
    for m in &measurements {
        writeln!(w, "{},{},{},{},{}", m.n, m.alpha, m.seed, metric.name(), m.value)
            .map_err(HrgError::from)?;
    }
    w.flush().map_err(HrgError::from)?;
    let fit = analysis::fit_mean_by_n(&measurements)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "metric": metric.name(),
                "alpha": args.alpha,
                "exponent": fit.exponent,
                "r_squared": fit.r_squared,
            }))
            .expect("serializable")
        );
    } else {
        eprintln!(
            "{}: fitted exponent {:.4} (r^2 {:.4}) -> {}",
            metric.name(),
            fit.exponent,
            fit.r_squared,
            args.out.display()
        );
    }
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> std::result::Result<(), CliError> {
    let strategy =
        StrategyKind::parse(&args.strategy).map_err(|e| CliError::Usage(e.to_string()))?;
    let config = ExperimentConfig {
        alphas: args.alphas,
        ns: args.ns,
        graphs_per_cell: args.graphs,
        pairs_per_graph: args.pairs,
        strategy,
        master_seed: args.seed,
        avg_degree: args.avg_degree,
        audit_stride: 100,
    };
    let result = experiment::run_experiment(&config)?;
    let mut csv = create_output(&args.out)?;
    experiment::write_records_csv(&result.records, &mut csv)?;
    csv.flush().map_err(HrgError::from)?;
    let mut summary = create_output(&args.summary)?;
    experiment::write_summary_json(&result.summary, &mut summary)?;
    summary.flush().map_err(HrgError::from)?;
    if let Some(plot) = &args.plot_data {
        let mut w = create_output(plot)?;
        experiment::write_plot_data(&result.summary, &mut w)?;
        w.flush().map_err(HrgError::from)?;
    }
    for cell in &result.summary.cells {
        eprintln!(
            "cell alpha={} n={}: x_measured {:.4} (theory {:.4}, m_mean {:.0})",
            cell.alpha, cell.n, cell.x_measured, cell.x_theory, cell.m_mean
        );
    }
    eprintln!(
        "wrote {} records -> {}, {} cells -> {}",
        result.records.len(),
        args.out.display(),
        result.summary.cells.len(),
        args.summary.display()
    );
    Ok(())
}
