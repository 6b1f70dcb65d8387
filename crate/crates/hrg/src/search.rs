//! Unidirectional BFS, bidirectional BFS with pluggable alternation
//! strategies, exact search-cost accounting, and shortest-path
//! reconstruction.
//!
//! Exploration is strictly layer-by-layer: a strategy picks a side
//! before each step, the chosen side expands its whole current frontier,
//! and the step is charged the degree sum of that frontier. After every
//! step the freshly created layer is scanned for vertices already
//! settled by the other side; the distance is the minimum of
//! `dist_s(v) + dist_t(v)` over those vertices.

use serde::Serialize;

use crate::error::{HrgError, Result};
use crate::graph::{HrgGraph, VertexId, NO_VERTEX};

/// Rule deciding which search performs the next exploration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlternationStrategy {
    /// Expand the side whose next step is cheaper (forward on ties).
    Greedy,
    /// Strict alternation, forward first.
    RoundRobin,
    /// Two-phase geometric rule: each side runs until it has explored one
    /// full layer beyond the first layer containing a vertex of radius at
    /// most `rho`, then the sides alternate until the searches meet.
    GeometricOracle { rho: f64 },
}

impl AlternationStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            AlternationStrategy::Greedy => "greedy",
            AlternationStrategy::RoundRobin => "roundrobin",
            AlternationStrategy::GeometricOracle { .. } => "oracle",
        }
    }
}

/// Distance and parent arrays of a full BFS; `NO_VERTEX` marks
/// unreachable vertices (and the root's parent).
#[derive(Debug, Clone)]
pub struct BfsTree {
    pub dist: Vec<u32>,
    pub parent: Vec<u32>,
}

/// Full breadth-first search from `s`.
pub fn bfs(graph: &HrgGraph, s: VertexId) -> Result<BfsTree> {
    graph.check_vertex(s)?;
    let n = graph.n();
    let mut dist = vec![NO_VERTEX; n];
    let mut parent = vec![NO_VERTEX; n];
    let mut frontier = vec![s];
    let mut next = Vec::new();
    dist[s as usize] = 0;
    let mut level = 0u32;
    while !frontier.is_empty() {
        level += 1;
        next.clear();
        for &v in &frontier {
            for &w in graph.neighbors(v) {
                if dist[w as usize] == NO_VERTEX {
                    dist[w as usize] = level;
                    parent[w as usize] = v;
                    next.push(w);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    Ok(BfsTree { dist, parent })
}

/// Result of a bidirectional shortest-path query.
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    /// Shortest-path length in edges; `None` when `s` and `t` are in
    /// different components.
    pub distance: Option<u32>,
    /// Vertex sequence from `s` to `t`; empty when unreachable.
    pub path: Vec<VertexId>,
    /// The settled-by-both vertex the path runs through.
    pub meeting_vertex: Option<VertexId>,
    /// Total degree-sum cost charged to the forward search.
    pub cost_forward: u64,
    /// Total degree-sum cost charged to the backward search.
    pub cost_backward: u64,
    /// Exploration steps performed by the forward search.
    pub layers_forward: u32,
    /// Exploration steps performed by the backward search.
    pub layers_backward: u32,
    /// Cost of each forward exploration step, in order.
    pub per_layer_costs_forward: Vec<u64>,
    /// Cost of each backward exploration step, in order.
    pub per_layer_costs_backward: Vec<u64>,
    /// For the geometric strategy: index of the first forward layer
    /// containing an inner-disk vertex, if one was found.
    pub inner_trigger_forward: Option<u32>,
    /// Same for the backward side.
    pub inner_trigger_backward: Option<u32>,
}

impl SearchOutcome {
    pub fn total_cost(&self) -> u64 {
        self.cost_forward + self.cost_backward
    }

    pub fn max_side_cost(&self) -> u64 {
        self.cost_forward.max(self.cost_backward)
    }
}

struct Side {
    dist: Vec<u32>,
    parent: Vec<u32>,
    stamp: Vec<u32>,
    frontier: Vec<VertexId>,
    scratch: Vec<VertexId>,
    frontier_cost: u64,
    layers_done: u32,
    per_layer_costs: Vec<u64>,
    trigger: Option<u32>,
    stopped: bool,
}

impl Side {
    fn with_capacity(n: usize) -> Self {
        Side {
            dist: vec![0; n],
            parent: vec![0; n],
            stamp: vec![0; n],
            frontier: Vec::new(),
            scratch: Vec::new(),
            frontier_cost: 0,
            layers_done: 0,
            per_layer_costs: Vec::new(),
            trigger: None,
            stopped: false,
        }
    }

    #[inline]
    fn visited(&self, v: VertexId, epoch: u32) -> bool {
        self.stamp[v as usize] == epoch
    }

    #[inline]
    fn visit(&mut self, v: VertexId, dist: u32, parent: u32, epoch: u32) {
        self.stamp[v as usize] = epoch;
        self.dist[v as usize] = dist;
        self.parent[v as usize] = parent;
    }
}

/// A reusable bidirectional-BFS engine. Holds per-query state (visited
/// stamps, frontiers) so repeated queries against the same graph avoid
/// re-allocating; one searcher serves one query at a time, any number of
/// searchers may run concurrently against the same graph.
pub struct BidirectionalSearcher<'g> {
    graph: &'g HrgGraph,
    sides: [Side; 2],
    epoch: u32,
}

const FORWARD: usize = 0;
const BACKWARD: usize = 1;

impl<'g> BidirectionalSearcher<'g> {
    pub fn new(graph: &'g HrgGraph) -> Self {
        let n = graph.n();
        Self {
            graph,
            sides: [Side::with_capacity(n), Side::with_capacity(n)],
            epoch: 0,
        }
    }

    pub fn search(
        &mut self,
        s: VertexId,
        t: VertexId,
        strategy: AlternationStrategy,
    ) -> Result<SearchOutcome> {
        self.graph.check_vertex(s)?;
        self.graph.check_vertex(t)?;
        if s == t {
            return Ok(SearchOutcome {
                distance: Some(0),
                path: vec![s],
                meeting_vertex: Some(s),
                cost_forward: 0,
                cost_backward: 0,
                layers_forward: 0,
                layers_backward: 0,
                per_layer_costs_forward: Vec::new(),
                per_layer_costs_backward: Vec::new(),
                inner_trigger_forward: None,
                inner_trigger_backward: None,
            });
        }

        if self.epoch == u32::MAX {
            for side in &mut self.sides {
                side.stamp.fill(0);
            }
            self.epoch = 0;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let rho = match strategy {
            AlternationStrategy::GeometricOracle { rho } => Some(rho),
            _ => None,
        };

        for (side, root) in self.sides.iter_mut().zip([s, t]) {
            side.frontier.clear();
            side.frontier.push(root);
            side.frontier_cost = self.graph.degree(root) as u64;
            side.layers_done = 0;
            side.per_layer_costs.clear();
            side.trigger = None;
            side.stopped = false;
            side.visit(root, 0, NO_VERTEX, epoch);
            if let Some(rho) = rho {
                if self.graph.coord(root).radius() <= rho {
                    side.trigger = Some(0);
                }
            }
        }

        let mut rr_turn = FORWARD;
        let mut meeting: Option<(u32, VertexId)> = None;
        'outer: loop {
            if self.sides[FORWARD].frontier.is_empty()
                && self.sides[BACKWARD].frontier.is_empty()
            {
                break;
            }
            let scheduled = match strategy {
                AlternationStrategy::Greedy => {
                    if self.sides[FORWARD].frontier_cost <= self.sides[BACKWARD].frontier_cost {
                        FORWARD
                    } else {
                        BACKWARD
                    }
                }
                AlternationStrategy::RoundRobin => {
                    let turn = rr_turn;
                    rr_turn ^= 1;
                    turn
                }
                AlternationStrategy::GeometricOracle { .. } => {
                    match (self.sides[FORWARD].stopped, self.sides[BACKWARD].stopped) {
                        (true, false) => BACKWARD,
                        (false, true) => FORWARD,
                        _ => {
                            let turn = rr_turn;
                            rr_turn ^= 1;
                            turn
                        }
                    }
                }
            };
            let active = if self.sides[scheduled].frontier.is_empty() {
                1 - scheduled
            } else {
                scheduled
            };

            // Expand the whole current frontier of the active side.
            let (this, other) = if active == FORWARD {
                let (a, b) = self.sides.split_at_mut(1);
                (&mut a[0], &mut b[0])
            } else {
                let (a, b) = self.sides.split_at_mut(1);
                (&mut b[0], &mut a[0])
            };
            this.per_layer_costs.push(this.frontier_cost);
            let new_level = this.layers_done + 1;
            this.scratch.clear();
            for fi in 0..this.frontier.len() {
                let v = this.frontier[fi];
                for &w in self.graph.neighbors(v) {
                    if !this.visited(w, epoch) {
                        this.visit(w, new_level, v, epoch);
                        this.scratch.push(w);
                    }
                }
            }
            std::mem::swap(&mut this.frontier, &mut this.scratch);
            this.layers_done = new_level;
            this.frontier_cost = this
                .frontier
                .iter()
                .map(|&v| self.graph.degree(v) as u64)
                .sum();

            // Meeting test over the layer just created.
            for &v in &this.frontier {
                if other.visited(v, epoch) {
                    let sum = this.dist[v as usize] + other.dist[v as usize];
                    meeting = Some(match meeting {
                        None => (sum, v),
                        Some(best) => best.min((sum, v)),
                    });
                }
            }
            if meeting.is_some() {
                break 'outer;
            }

            if let Some(rho) = rho {
                if this.trigger.is_none()
                    && this
                        .frontier
                        .iter()
                        .any(|&v| self.graph.coord(v).radius() <= rho)
                {
                    this.trigger = Some(new_level);
                }
                if let Some(k) = this.trigger {
                    if this.layers_done >= k + 1 {
                        this.stopped = true;
                    }
                }
            }
        }

        let outcome = match meeting {
            None => SearchOutcome {
                distance: None,
                path: Vec::new(),
                meeting_vertex: None,
                cost_forward: self.sides[FORWARD].per_layer_costs.iter().sum(),
                cost_backward: self.sides[BACKWARD].per_layer_costs.iter().sum(),
                layers_forward: self.sides[FORWARD].layers_done,
                layers_backward: self.sides[BACKWARD].layers_done,
                per_layer_costs_forward: self.sides[FORWARD].per_layer_costs.clone(),
                per_layer_costs_backward: self.sides[BACKWARD].per_layer_costs.clone(),
                inner_trigger_forward: self.sides[FORWARD].trigger,
                inner_trigger_backward: self.sides[BACKWARD].trigger,
            },
            Some((distance, v)) => {
                let path = self.reconstruct_path(s, t, v);
                debug_assert_eq!(path.len() as u32, distance + 1);
                SearchOutcome {
                    distance: Some(distance),
                    path,
                    meeting_vertex: Some(v),
                    cost_forward: self.sides[FORWARD].per_layer_costs.iter().sum(),
                    cost_backward: self.sides[BACKWARD].per_layer_costs.iter().sum(),
                    layers_forward: self.sides[FORWARD].layers_done,
                    layers_backward: self.sides[BACKWARD].layers_done,
                    per_layer_costs_forward: self.sides[FORWARD].per_layer_costs.clone(),
                    per_layer_costs_backward: self.sides[BACKWARD].per_layer_costs.clone(),
                    inner_trigger_forward: self.sides[FORWARD].trigger,
                    inner_trigger_backward: self.sides[BACKWARD].trigger,
                }
            }
        };
        Ok(outcome)
    }

    fn reconstruct_path(&self, s: VertexId, t: VertexId, meeting: VertexId) -> Vec<VertexId> {
        let mut head = Vec::new();
        let mut v = meeting;
        while v != s {
            head.push(v);
            v = self.sides[FORWARD].parent[v as usize];
        }
        head.push(s);
        head.reverse();
        let mut v = meeting;
        while v != t {
            v = self.sides[BACKWARD].parent[v as usize];
            head.push(v);
        }
        head
    }
}

/// One-shot bidirectional query; allocates a fresh searcher.
pub fn bidirectional_bfs(
    graph: &HrgGraph,
    s: VertexId,
    t: VertexId,
    strategy: AlternationStrategy,
) -> Result<SearchOutcome> {
    BidirectionalSearcher::new(graph).search(s, t, strategy)
}

/// Exact minimum total exploration cost over every alternation schedule
/// that terminates with a valid meeting.
///
/// Exploration cost depends only on how many layers each side explored,
/// never on their interleaving, and whether a step terminates depends
/// only on the resulting (forward layers, backward layers) state and the
/// side that stepped. The minimum over all `2^L` schedules therefore
/// reduces to a reachability sweep over that state grid, which is what
/// runs here.
pub fn enumerate_strategy_costs(
    graph: &HrgGraph,
    s: VertexId,
    t: VertexId,
    max_layers: u32,
) -> Result<u64> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if s == t {
        return Ok(0);
    }
    let from_s = bfs(graph, s)?;
    if from_s.dist[t as usize] == NO_VERTEX {
        return Err(HrgError::UnreachablePair { s, t });
    }
    let from_t = bfs(graph, t)?;
    let d = from_s.dist[t as usize];
    if d > max_layers {
        return Err(HrgError::MaxLayersExceeded {
            s,
            t,
            distance: d,
            max_layers,
        });
    }
    let d = d as usize;

    // Per-layer degree sums and, per layer of one side, the minimum
    // distance of its vertices to the other endpoint.
    let mut cost_f = vec![0u64; d];
    let mut cost_b = vec![0u64; d];
    let mut min_dt = vec![u32::MAX; d + 1]; // over forward layer i
    let mut min_ds = vec![u32::MAX; d + 1]; // over backward layer j
    for v in 0..graph.n() {
        let ds = from_s.dist[v];
        let dt = from_t.dist[v];
        if ds != NO_VERTEX && (ds as usize) < d {
            cost_f[ds as usize] += graph.degree(v as u32) as u64;
        }
        if dt != NO_VERTEX && (dt as usize) < d {
            cost_b[dt as usize] += graph.degree(v as u32) as u64;
        }
        if ds != NO_VERTEX && (ds as usize) <= d && dt != NO_VERTEX {
            min_dt[ds as usize] = min_dt[ds as usize].min(dt);
        }
        if dt != NO_VERTEX && (dt as usize) <= d && ds != NO_VERTEX {
            min_ds[dt as usize] = min_ds[dt as usize].min(ds);
        }
    }
    let mut pref_f = vec![0u64; d + 1];
    let mut pref_b = vec![0u64; d + 1];
    for i in 0..d {
        pref_f[i + 1] = pref_f[i] + cost_f[i];
        pref_b[i + 1] = pref_b[i] + cost_b[i];
    }

    let width = d + 1;
    let mut reachable = vec![false; width * width];
    reachable[0] = true;
    let mut stack = vec![(0usize, 0usize)];
    let mut best: Option<u64> = None;
    while let Some((i, j)) = stack.pop() {
        // Forward step: creates forward layer i+1.
        if i + 1 <= d {
            let cost = pref_f[i + 1] + pref_b[j];
            if min_dt[i + 1] as usize <= j {
                best = Some(best.map_or(cost, |b| b.min(cost)));
            } else if !reachable[(i + 1) * width + j] {
                reachable[(i + 1) * width + j] = true;
                stack.push((i + 1, j));
            }
        }
        // Backward step: creates backward layer j+1.
        if j + 1 <= d {
            let cost = pref_f[i] + pref_b[j + 1];
            if min_ds[j + 1] as usize <= i {
                best = Some(best.map_or(cost, |b| b.min(cost)));
            } else if !reachable[i * width + (j + 1)] {
                reachable[i * width + (j + 1)] = true;
                stack.push((i, j + 1));
            }
        }
    }
    best.ok_or_else(|| {
        HrgError::InvalidParameter(format!(
            "no terminating schedule found for ({s}, {t}); this is a bug"
        ))
    })
}
