//! Batched search-space measurement: generate graphs per (α, n) cell,
//! sample start–destination pairs from the largest component, run the
//! bidirectional search, and aggregate normalized exponents
//! `x = ln(max over pairs of max-side cost) / ln m` per graph and cell.
//!
//! Runs are deterministic for a fixed config and master seed: per-graph
//! sub-seeds derive from (alpha index, n index, graph index), records are
//! emitted in (cell, graph, pair) order, and pair queries are read-only
//! over the shared graph, so worker count never changes the output.

use std::collections::HashSet;
use std::io::Write;

use log::warn;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::inner_disk_radius;
use crate::error::{HrgError, Result};
use crate::generate;
use crate::geometry::ModelParams;
use crate::graph::{HrgGraph, LargestComponent, VertexId};
use crate::rng::{derive_seed, rng_from_seed};
use crate::search::{AlternationStrategy, BidirectionalSearcher};

/// Strategy selector for batch runs; the geometric strategy derives its
/// inner-disk radius from each graph's own parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Greedy,
    RoundRobin,
    Oracle,
}

impl StrategyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Greedy => "greedy",
            StrategyKind::RoundRobin => "roundrobin",
            StrategyKind::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(StrategyKind::Greedy),
            "roundrobin" => Ok(StrategyKind::RoundRobin),
            "oracle" => Ok(StrategyKind::Oracle),
            other => Err(HrgError::InvalidParameter(format!(
                "unknown strategy `{other}` (expected greedy|roundrobin|oracle)"
            ))),
        }
    }

    pub fn for_graph(&self, graph: &HrgGraph) -> AlternationStrategy {
        match self {
            StrategyKind::Greedy => AlternationStrategy::Greedy,
            StrategyKind::RoundRobin => AlternationStrategy::RoundRobin,
            StrategyKind::Oracle => AlternationStrategy::GeometricOracle {
                rho: inner_disk_radius(graph.params()),
            },
        }
    }
}

/// The exponent of the theoretical search-space bound,
/// `max(2 − 1/α, 1/(2α))`. The maximum-degree term shares the `1/(2α)`
/// exponent and is absorbed by the middle term.
pub fn theoretical_exponent(alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.5 && alpha < 1.0) {
        return Err(HrgError::InvalidParameter(format!(
            "alpha must lie strictly inside (0.5, 1), got {alpha}"
        )));
    }
    Ok((2.0 - 1.0 / alpha).max(1.0 / (2.0 * alpha)))
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub graphs_per_cell: usize,
    pub pairs_per_graph: usize,
    pub strategy: StrategyKind,
    pub master_seed: u64,
    pub avg_degree: f64,
    /// Every `audit_stride`-th pair of each graph gets its distance
    /// re-checked against a full BFS (stride 100 = the default 1% audit).
    pub audit_stride: usize,
}

impl ExperimentConfig {
    pub fn new(alphas: Vec<f64>, ns: Vec<usize>) -> Self {
        Self {
            alphas,
            ns,
            graphs_per_cell: 5,
            pairs_per_graph: 10_000,
            strategy: StrategyKind::Greedy,
            master_seed: 42,
            avg_degree: 8.0,
            audit_stride: 100,
        }
    }
}

/// One (graph, pair) measurement row.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
    pub m: usize,
    pub s: VertexId,
    pub t: VertexId,
    pub strategy: &'static str,
    pub distance: u32,
    pub cost_forward: u64,
    pub cost_backward: u64,
    pub max_side_cost: u64,
}

/// Per-cell aggregate.
#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub alpha: f64,
    pub m_mean: f64,
    pub x_measured: f64,
    pub x_theory: f64,
    pub x_per_graph: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSummary {
    pub cells: Vec<CellSummary>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub records: Vec<ExperimentRecord>,
    pub summary: ExperimentSummary,
}

const PAIR_SEED_TAG: u64 = 0x7061_6972;

/// Samples `count` ordered start–destination pairs (s ≠ t) uniformly
/// from the component, without replacement while fewer than half of all
/// ordered pairs are requested, with replacement (and a warning)
/// otherwise.
fn sample_pairs(comp: &LargestComponent, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let k = comp.len();
    debug_assert!(k >= 2);
    let available = k * (k - 1);
    let mut rng = rng_from_seed(seed);
    let mut pairs = Vec::with_capacity(count);
    if count <= available / 2 {
        let mut seen = HashSet::with_capacity(count * 2);
        while pairs.len() < count {
            let s = comp.vertices[rng.random_range(0..k)];
            let t = comp.vertices[rng.random_range(0..k)];
            if s != t && seen.insert((s, t)) {
                pairs.push((s, t));
            }
        }
    } else {
        warn!(
            "requested {count} pairs from a component with only {available} ordered pairs; \
             sampling with replacement"
        );
        while pairs.len() < count {
            let s = comp.vertices[rng.random_range(0..k)];
            let t = comp.vertices[rng.random_range(0..k)];
            if s != t {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    if config.alphas.is_empty() || config.ns.is_empty() {
        return Err(HrgError::InvalidParameter(
            "experiment needs at least one alpha and one n".into(),
        ));
    }
    if config.graphs_per_cell == 0 || config.pairs_per_graph == 0 {
        return Err(HrgError::InvalidParameter(
            "graphs_per_cell and pairs_per_graph must be positive".into(),
        ));
    }
    for &alpha in &config.alphas {
        theoretical_exponent(alpha)?;
    }

    let mut records = Vec::new();
    let mut cells = Vec::new();
    for (ai, &alpha) in config.alphas.iter().enumerate() {
        for (ni, &n) in config.ns.iter().enumerate() {
            let offset = generate::calibrate_offset(n, alpha, config.avg_degree)?;
            let mut x_per_graph = Vec::new();
            let mut m_sum = 0usize;
            for g_idx in 0..config.graphs_per_cell {
                let seed = derive_seed(config.master_seed, &[ai as u64, ni as u64, g_idx as u64]);
                let params = ModelParams::with_offset(n, alpha, offset, seed)?;
                let graph = generate::generate_fast(&params)?;
                let comp = graph.largest_component();
                if comp.len() < 2 {
                    warn!(
                        "cell (alpha={alpha}, n={n}) graph {g_idx}: largest component has \
                         {} vertices, skipping",
                        comp.len()
                    );
                    continue;
                }
                let pairs = sample_pairs(
                    &comp,
                    config.pairs_per_graph,
                    derive_seed(seed, &[PAIR_SEED_TAG]),
                );
                let strategy = config.strategy.for_graph(&graph);
                let audit_stride = config.audit_stride.max(1);
                let rows: Result<Vec<ExperimentRecord>> = pairs
                    .par_iter()
                    .enumerate()
                    .map_init(
                        || BidirectionalSearcher::new(&graph),
                        |searcher, (idx, &(s, t))| {
                            let out = searcher.search(s, t, strategy)?;
                            let distance = out.distance.ok_or_else(|| {
                                HrgError::InvalidParameter(format!(
                                    "pair ({s}, {t}) sampled from one component \
                                     but found unreachable"
                                ))
                            })?;
                            if idx % audit_stride == 0 {
                                let tree = crate::search::bfs(&graph, s)?;
                                if tree.dist[t as usize] != distance {
                                    return Err(HrgError::InvalidParameter(format!(
                                        "audit mismatch for pair ({s}, {t}): bidirectional \
                                         {distance}, BFS {}",
                                        tree.dist[t as usize]
                                    )));
                                }
                            }
                            let total_layers =
                                (out.layers_forward + out.layers_backward) as u64;
                            debug_assert!(
                                out.total_cost() <= 2 * graph.m() as u64 * total_layers.max(1)
                            );
                            Ok(ExperimentRecord {
                                n,
                                alpha,
                                seed,
                                m: graph.m(),
                                s,
                                t,
                                strategy: config.strategy.name(),
                                distance,
                                cost_forward: out.cost_forward,
                                cost_backward: out.cost_backward,
                                max_side_cost: out.max_side_cost(),
                            })
                        },
                    )
                    .collect();
                let rows = rows?;
                let graph_max = rows.iter().map(|r| r.max_side_cost).max().unwrap_or(0);
                if graph_max >= 1 && graph.m() >= 2 {
                    x_per_graph.push((graph_max as f64).ln() / (graph.m() as f64).ln());
                }
                m_sum += graph.m();
                records.extend(rows);
            }
            if x_per_graph.is_empty() {
                warn!("cell (alpha={alpha}, n={n}): no usable graphs, cell skipped");
                continue;
            }
            let graphs = x_per_graph.len() as f64;
            cells.push(CellSummary {
                n,
                alpha,
                m_mean: m_sum as f64 / graphs,
                x_measured: x_per_graph.iter().sum::<f64>() / graphs,
                x_theory: theoretical_exponent(alpha)?,
                x_per_graph,
            });
        }
    }
    Ok(ExperimentResult {
        records,
        summary: ExperimentSummary { cells },
    })
}

pub const RECORDS_CSV_HEADER: &str = "n,alpha,seed,m,s,t,strategy,distance,cost_fwd,cost_bwd,max_side_cost";

pub fn write_records_csv<W: Write>(records: &[ExperimentRecord], w: &mut W) -> Result<()> {
    writeln!(w, "{RECORDS_CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.alpha,
            r.seed,
            r.m,
            r.s,
            r.t,
            r.strategy,
            r.distance,
            r.cost_forward,
            r.cost_backward,
            r.max_side_cost
        )?;
    }
    Ok(())
}

pub fn write_summary_json<W: Write>(summary: &ExperimentSummary, w: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, summary)
        .map_err(|e| HrgError::InvalidParameter(format!("summary serialization: {e}")))?;
    writeln!(w)?;
    Ok(())
}

/// Plot-data exporter: one `(alpha, x_theory, x_measured)` triple per
/// cell, CSV with a header line.
pub fn write_plot_data<W: Write>(summary: &ExperimentSummary, w: &mut W) -> Result<()> {
    writeln!(w, "alpha,x_theory,x_measured")?;
    for cell in &summary.cells {
        writeln!(w, "{},{},{}", cell.alpha, cell.x_theory, cell.x_measured)?;
    }
    Ok(())
}
