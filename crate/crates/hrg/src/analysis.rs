//! Statistical validators for the structural properties of the model:
//! power-law exponent fit, max-degree scaling, sector degree sums, the
//! inner-disk domination check, first-phase search width, and diameter.
//!
//! Everything here reads an immutable graph; randomized measurements
//! (sector placements, sweep starts) draw their randomness from explicit
//! seeds so results are independent of scheduling.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use std::f64::consts::TAU;

use crate::error::{HrgError, Result};
use crate::generate;
use crate::geometry::{angular_distance, ModelParams};
use crate::graph::{HrgGraph, VertexId, NO_VERTEX};
use crate::rng::{derive_seed, rng_from_seed};

/// Inner-disk radius `(ln n − ln ln n)/α` used by the two-phase
/// geometric strategy and the domination check. Meaningful for n ≥ 3.
pub fn inner_disk_radius(params: &ModelParams) -> f64 {
    let ln_n = (params.n() as f64).ln();
    (ln_n - ln_n.ln()) / params.alpha()
}

/// Minimum degree a vertex needs to enter the power-law tail fit.
pub const POWER_LAW_K_FLOOR: u32 = 10;

/// Minimum number of tail vertices for a fit.
pub const POWER_LAW_MIN_TAIL: usize = 1000;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PowerLawFit {
    /// Estimated exponent of the degree-distribution tail.
    pub beta: f64,
    /// Number of vertices with degree >= the fixed floor.
    pub tail_count: usize,
}

/// Discrete maximum-likelihood power-law exponent over degrees at least
/// [`POWER_LAW_K_FLOOR`]:
/// `β̂ = 1 + m (Σ ln(k_i / (k_floor − ½)))⁻¹`
/// (the continuous-approximation MLE with the half-step shift, accurate
/// to well under a percent for floors this large).
pub fn fit_power_law(degrees: &[u32]) -> Result<PowerLawFit> {
    let floor = POWER_LAW_K_FLOOR;
    let tail: Vec<u32> = degrees.iter().copied().filter(|&d| d >= floor).collect();
    if tail.len() < POWER_LAW_MIN_TAIL {
        return Err(HrgError::InsufficientData(format!(
            "{} vertices with degree >= {floor}, need {POWER_LAW_MIN_TAIL}",
            tail.len()
        )));
    }
    let first = tail[0];
    if tail.iter().all(|&d| d == first) {
        return Err(HrgError::InsufficientData(
            "degenerate degree tail: all tail degrees equal".into(),
        ));
    }
    let shift = floor as f64 - 0.5;
    let log_sum: f64 = tail.iter().map(|&d| (d as f64 / shift).ln()).sum();
    Ok(PowerLawFit {
        beta: 1.0 + tail.len() as f64 / log_sum,
        tail_count: tail.len(),
    })
}

/// A sector of the disk: angular interval of the given width starting at
/// `start_angle` (wrapping past 2π), restricted to the radial band
/// `[r_lo, r_hi]` (inclusive on both ends).
#[derive(Debug, Clone, Copy)]
pub struct SectorSpec {
    pub start_angle: f64,
    pub width: f64,
    pub r_lo: f64,
    pub r_hi: f64,
}

impl SectorSpec {
    pub fn new(start_angle: f64, width: f64, r_lo: f64, r_hi: f64) -> Result<Self> {
        if !(width > 0.0 && width <= TAU) {
            return Err(HrgError::InvalidParameter(format!(
                "sector width must lie in (0, 2π], got {width}"
            )));
        }
        if !(r_lo.is_finite() && r_hi.is_finite() && 0.0 <= r_lo && r_lo <= r_hi) {
            return Err(HrgError::InvalidParameter(format!(
                "invalid radial band [{r_lo}, {r_hi}]"
            )));
        }
        Ok(Self {
            start_angle,
            width,
            r_lo,
            r_hi,
        })
    }

    /// Full radial band of the given graph's disk.
    pub fn full_band(start_angle: f64, width: f64, disk_radius: f64) -> Result<Self> {
        Self::new(start_angle, width, 0.0, disk_radius)
    }

    #[inline]
    pub fn contains(&self, angle: f64, radius: f64) -> bool {
        if radius < self.r_lo || radius > self.r_hi {
            return false;
        }
        let mut offset = (angle - self.start_angle).rem_euclid(TAU);
        if offset >= TAU {
            offset = 0.0;
        }
        offset < self.width
    }
}

/// Exact sum of degrees over the vertices inside the sector.
pub fn sector_degree_sum(graph: &HrgGraph, sector: &SectorSpec) -> u64 {
    graph
        .coords()
        .iter()
        .zip(graph.degrees())
        .filter(|(p, _)| sector.contains(p.angle(), p.radius()))
        .map(|(_, &d)| d as u64)
        .sum()
}

/// Maximum of [`sector_degree_sum`] over `count` full-band sectors of
/// the given width placed at uniformly random start angles.
pub fn max_sector_degree_sum(graph: &HrgGraph, width: f64, count: usize, seed: u64) -> u64 {
    let disk_radius = graph.params().disk_radius();
    let mut rng = rng_from_seed(seed);
    let starts: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * TAU).collect();
    starts
        .par_iter()
        .map(|&start| {
            let sector = SectorSpec::full_band(start, width, disk_radius)
                .expect("width validated by caller");
            sector_degree_sum(graph, &sector)
        })
        .max()
        .unwrap_or(0)
}

/// Least-squares fit of `log(value)` against `log(n)`.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub exponent: f64,
    pub r_squared: f64,
}

impl ScalingFit {
    pub fn fit(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(HrgError::InsufficientData(format!(
                "{} points, need at least 3",
                points.len()
            )));
        }
        if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
            return Err(HrgError::InsufficientData(
                "scaling fit needs positive coordinates".into(),
            ));
        }
        let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
        let k = logs.len() as f64;
        let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
        let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        if sxx == 0.0 {
            return Err(HrgError::InsufficientData(
                "all n values identical".into(),
            ));
        }
        let exponent = sxy / sxx;
        let ss_tot: f64 = logs.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
        let ss_res: f64 = logs
            .iter()
            .map(|p| {
                let pred = my + exponent * (p.0 - mx);
                (p.1 - pred) * (p.1 - pred)
            })
            .sum();
        let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
        Ok(Self {
            points,
            exponent,
            r_squared,
        })
    }
}

const MAXDEG_SEED_TAG: u64 = 0x6d61_7864;
const SECTOR_SEED_TAG: u64 = 0x7365_6374;

/// Number of random sector placements per graph in the scaling driver.
pub const SECTORS_PER_GRAPH: usize = 100;

/// Which per-graph quantity a scaling driver measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMetric {
    /// Maximum degree of the graph.
    MaxDegree,
    /// Maximum degree sum over random sectors of width `n^{1−1/α} ln n`.
    SectorSum,
}

impl ScalingMetric {
    pub fn name(&self) -> &'static str {
        match self {
            ScalingMetric::MaxDegree => "maxdeg",
            ScalingMetric::SectorSum => "sector",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "maxdeg" => Ok(ScalingMetric::MaxDegree),
            "sector" => Ok(ScalingMetric::SectorSum),
            other => Err(HrgError::InvalidParameter(format!(
                "unknown scaling metric `{other}` (expected maxdeg|sector)"
            ))),
        }
    }

    fn seed_tag(&self) -> u64 {
        match self {
            ScalingMetric::MaxDegree => MAXDEG_SEED_TAG,
            ScalingMetric::SectorSum => SECTOR_SEED_TAG,
        }
    }
}

/// One per-graph scaling observation.
#[derive(Debug, Clone, Copy)]
pub struct ScalingMeasurement {
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
    pub value: f64,
}

/// Generates `seeds_per_n` graphs per n (calibrated to the given average
/// degree) and measures the metric on each.
pub fn scaling_measurements(
    metric: ScalingMetric,
    alpha: f64,
    ns: &[usize],
    seeds_per_n: usize,
    avg_degree: f64,
    master_seed: u64,
) -> Result<Vec<ScalingMeasurement>> {
    if seeds_per_n == 0 {
        return Err(HrgError::InvalidParameter("seeds_per_n must be positive".into()));
    }
    let mut out = Vec::with_capacity(ns.len() * seeds_per_n);
    for (ni, &n) in ns.iter().enumerate() {
        let offset = generate::calibrate_offset(n, alpha, avg_degree)?;
        for g_idx in 0..seeds_per_n {
            let seed = derive_seed(master_seed, &[metric.seed_tag(), ni as u64, g_idx as u64]);
            let params = ModelParams::with_offset(n, alpha, offset, seed)?;
            let graph = generate::generate_fast(&params)?;
            let value = match metric {
                ScalingMetric::MaxDegree => graph.max_degree() as f64,
                ScalingMetric::SectorSum => {
                    let width = scaling_sector_width(n, alpha);
                    let sector_seed = derive_seed(seed, &[SECTOR_SEED_TAG]);
                    max_sector_degree_sum(&graph, width, SECTORS_PER_GRAPH, sector_seed) as f64
                }
            };
            out.push(ScalingMeasurement {
                n,
                alpha,
                seed,
                value,
            });
        }
    }
    Ok(out)
}

/// Averages the measurements per n and fits the log–log slope.
pub fn fit_mean_by_n(measurements: &[ScalingMeasurement]) -> Result<ScalingFit> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for m in measurements {
        if !seen.contains(&m.n) {
            seen.push(m.n);
        }
    }
    for &n in &seen {
        let values: Vec<f64> = measurements
            .iter()
            .filter(|m| m.n == n)
            .map(|m| m.value)
            .collect();
        points.push((n as f64, values.iter().sum::<f64>() / values.len() as f64));
    }
    ScalingFit::fit(points)
}

/// Fits the growth exponent of the mean maximum degree against n for
/// graphs calibrated to the given average degree.
pub fn max_degree_scaling(
    alpha: f64,
    ns: &[usize],
    seeds_per_n: usize,
    avg_degree: f64,
    master_seed: u64,
) -> Result<ScalingFit> {
    let m = scaling_measurements(
        ScalingMetric::MaxDegree,
        alpha,
        ns,
        seeds_per_n,
        avg_degree,
        master_seed,
    )?;
    fit_mean_by_n(&m)
}

/// Sector width `n^{1 − 1/α} ln n` used by the sector-sum scaling
/// driver, clamped to the full circle.
pub fn scaling_sector_width(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (n.powf(1.0 - 1.0 / alpha) * n.ln()).min(TAU)
}

/// Fits the growth exponent of the mean (over seeds) maximum sector
/// degree sum over [`SECTORS_PER_GRAPH`] random sectors of width
/// `n^{1−1/α} ln n`.
pub fn sector_sum_scaling(
    alpha: f64,
    ns: &[usize],
    seeds_per_n: usize,
    avg_degree: f64,
    master_seed: u64,
) -> Result<ScalingFit> {
    let m = scaling_measurements(
        ScalingMetric::SectorSum,
        alpha,
        ns,
        seeds_per_n,
        avg_degree,
        master_seed,
    )?;
    fit_mean_by_n(&m)
}

/// Result of the inner-disk domination check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum InnerDiskOutcome {
    /// A vertex with radius at most R − ρ exists and was verified by a
    /// direct adjacency scan to neighbor every other vertex of radius at
    /// most ρ.
    Witness { vertex: VertexId },
    /// No vertex lies in the inner disk at all; the property holds
    /// vacuously.
    VacuousEmptyInnerDisk,
    /// No vertex has radius at most R − ρ.
    NoCandidate,
    /// The candidate failed the direct adjacency scan (not expected for
    /// geometrically valid graphs; kept as a structured failure).
    VerificationFailed { candidate: VertexId, missed: VertexId },
}

/// Looks for a vertex adjacent to every other vertex of the inner disk
/// `radius <= rho`, using the sufficient condition `radius <= R − rho`
/// and verifying the candidate by scanning its adjacency list.
pub fn inner_disk_check(graph: &HrgGraph, rho: f64) -> InnerDiskOutcome {
    let disk_radius = graph.params().disk_radius();
    let inner: Vec<VertexId> = (0..graph.n() as u32)
        .filter(|&v| graph.coord(v).radius() <= rho)
        .collect();
    if inner.is_empty() {
        return InnerDiskOutcome::VacuousEmptyInnerDisk;
    }
    let candidate = (0..graph.n() as u32)
        .filter(|&v| graph.coord(v).radius() <= disk_radius - rho)
        .min_by(|&a, &b| {
            let (ra, rb) = (graph.coord(a).radius(), graph.coord(b).radius());
            ra.total_cmp(&rb).then(a.cmp(&b))
        });
    let Some(candidate) = candidate else {
        return InnerDiskOutcome::NoCandidate;
    };
    for &w in &inner {
        if w != candidate && graph.neighbors(candidate).binary_search(&w).is_err() {
            return InnerDiskOutcome::VerificationFailed {
                candidate,
                missed: w,
            };
        }
    }
    InnerDiskOutcome::Witness { vertex: candidate }
}

/// Width of the sector a BFS stays inside before reaching the inner disk.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhaseOneWidth {
    /// Twice the maximum angular distance from the start over all
    /// vertices visited before any layer containing an inner-disk vertex.
    pub width: f64,
    /// The start itself lies in the inner disk (width 0 by convention).
    pub start_in_inner_disk: bool,
}

/// Runs a BFS from `s`, stopping before the first layer that contains a
/// vertex of radius at most `rho`, and reports the angular width of the
/// visited region.
pub fn phase_one_width(graph: &HrgGraph, s: VertexId, rho: f64) -> Result<PhaseOneWidth> {
    graph.check_vertex(s)?;
    let start = graph.coord(s);
    if start.radius() <= rho {
        return Ok(PhaseOneWidth {
            width: 0.0,
            start_in_inner_disk: true,
        });
    }
    let mut seen = vec![false; graph.n()];
    seen[s as usize] = true;
    let mut frontier = vec![s];
    let mut next: Vec<VertexId> = Vec::new();
    let mut max_delta = 0.0f64;
    loop {
        next.clear();
        for &v in &frontier {
            for &w in graph.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty()
            || next.iter().any(|&v| graph.coord(v).radius() <= rho)
        {
            break;
        }
        for &v in &next {
            max_delta = max_delta.max(angular_distance(start.angle(), graph.coord(v).angle()));
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    Ok(PhaseOneWidth {
        width: 2.0 * max_delta,
        start_in_inner_disk: false,
    })
}

/// Largest component size allowed for the exact diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 10_000;

/// Exact diameter: maximum BFS eccentricity over all vertices, taken over
/// reachable pairs (per-component on disconnected graphs). Errors when a
/// component exceeds [`EXACT_DIAMETER_LIMIT`] vertices.
pub fn diameter_exact(graph: &HrgGraph) -> Result<u32> {
    let (_, sizes) = graph.component_labels();
    if let Some(&too_big) = sizes.iter().find(|&&s| s > EXACT_DIAMETER_LIMIT) {
        return Err(HrgError::InvalidParameter(format!(
            "exact diameter restricted to components with <= {EXACT_DIAMETER_LIMIT} vertices, \
             found one with {too_big}"
        )));
    }
    let ecc = (0..graph.n() as u32)
        .into_par_iter()
        .map(|v| {
            let tree = bfs_dist_only(graph, v);
            tree.into_iter().filter(|&d| d != NO_VERTEX).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(ecc)
}

/// Lower bound on the diameter: the best of `sweeps` double sweeps
/// (BFS from a random start, then BFS from the farthest vertex found).
pub fn diameter_estimate(graph: &HrgGraph, sweeps: usize, seed: u64) -> u32 {
    let mut rng = rng_from_seed(seed);
    let mut best = 0u32;
    for _ in 0..sweeps {
        let start = rng.random_range(0..graph.n()) as u32;
        let first = bfs_dist_only(graph, start);
        let far = farthest(&first);
        let second = bfs_dist_only(graph, far);
        let bound = second
            .iter()
            .copied()
            .filter(|&d| d != NO_VERTEX)
            .max()
            .unwrap_or(0);
        best = best.max(bound);
    }
    best
}

fn farthest(dist: &[u32]) -> VertexId {
    let mut best = 0u32;
    let mut best_d = 0u32;
    for (v, &d) in dist.iter().enumerate() {
        if d != NO_VERTEX && d > best_d {
            best_d = d;
            best = v as u32;
        }
    }
    best
}

fn bfs_dist_only(graph: &HrgGraph, s: VertexId) -> Vec<u32> {
    let mut dist = vec![NO_VERTEX; graph.n()];
    dist[s as usize] = 0;
    let mut frontier = vec![s];
    let mut next = Vec::new();
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        next.clear();
        for &v in &frontier {
            for &w in graph.neighbors(v) {
                if dist[w as usize] == NO_VERTEX {
                    dist[w as usize] = level;
                    next.push(w);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolarPoint;

    /// Inverse-CDF sampler for an exact discrete power law on
    /// k >= POWER_LAW_K_FLOOR — the test oracle for the MLE.
    fn zipf_tail_sample(beta: f64, count: usize, seed: u64) -> Vec<u32> {
        let k_min = POWER_LAW_K_FLOOR as usize;
        let k_max = 1_000_000usize;
        let mut cdf = Vec::with_capacity(k_max - k_min + 1);
        let mut total = 0.0f64;
        for k in k_min..=k_max {
            total += (k as f64).powf(-beta);
            cdf.push(total);
        }
        let mut rng = rng_from_seed(seed);
        (0..count)
            .map(|_| {
                let u: f64 = rng.random::<f64>() * total;
                let idx = cdf.partition_point(|&c| c < u);
                (k_min + idx.min(k_max - k_min)) as u32
            })
            .collect()
    }

    #[test]
    fn power_law_fit_recovers_synthetic_exponent() {
        let sample = zipf_tail_sample(2.5, 100_000, 3);
        let fit = fit_power_law(&sample).unwrap();
        assert!(
            (2.4..=2.6).contains(&fit.beta),
            "beta estimate {}",
            fit.beta
        );
        assert_eq!(fit.tail_count, 100_000);
    }

    #[test]
    fn power_law_fit_stable_under_sample_doubling() {
        let a = fit_power_law(&zipf_tail_sample(2.2, 50_000, 11)).unwrap();
        let b = fit_power_law(&zipf_tail_sample(2.2, 100_000, 12)).unwrap();
        assert!((a.beta - b.beta).abs() < 0.1, "{} vs {}", a.beta, b.beta);
    }

    #[test]
    fn power_law_fit_rejects_degenerate_input() {
        let all_equal = vec![8u32; 5000];
        assert!(matches!(
            fit_power_law(&all_equal),
            Err(HrgError::InsufficientData(_))
        ));
        let all_equal_tail = vec![15u32; 5000];
        assert!(matches!(
            fit_power_law(&all_equal_tail),
            Err(HrgError::InsufficientData(_))
        ));
        let too_few = vec![50u32; 10];
        assert!(matches!(
            fit_power_law(&too_few),
            Err(HrgError::InsufficientData(_))
        ));
    }

    fn small_hrg(n: usize, seed: u64) -> HrgGraph {
        let params = crate::generate::params_for_average_degree(n, 0.75, 8.0, seed).unwrap();
        crate::generate::generate_fast(&params).unwrap()
    }

    #[test]
    fn full_disk_sector_sums_to_handshake() {
        let g = small_hrg(2000, 9);
        let sector =
            SectorSpec::full_band(1.0, TAU, g.params().disk_radius()).unwrap();
        assert_eq!(sector_degree_sum(&g, &sector), 2 * g.m() as u64);
    }

    #[test]
    fn empty_band_sums_to_zero() {
        let g = small_hrg(500, 10);
        let r = g.params().disk_radius();
        let sector = SectorSpec::new(0.0, TAU, r, r).unwrap();
        assert_eq!(sector_degree_sum(&g, &sector), 0);
    }

    #[test]
    fn sector_sum_matches_interval_formulation() {
        // Independent membership oracle written with explicit interval
        // arithmetic instead of modular offsets.
        let g = small_hrg(10_000, 21);
        let mut rng = rng_from_seed(2);
        for _ in 0..25 {
            let start = rng.random::<f64>() * TAU;
            let width = rng.random::<f64>() * TAU;
            let r_lo = rng.random::<f64>() * 5.0;
            let r_hi = r_lo + rng.random::<f64>() * 20.0;
            let sector = SectorSpec::new(start, width.max(1e-6), r_lo, r_hi).unwrap();
            let expected: u64 = g
                .coords()
                .iter()
                .zip(g.degrees())
                .filter(|(p, _)| {
                    if p.radius() < r_lo || p.radius() > r_hi {
                        return false;
                    }
                    let a = p.angle();
                    let end = start + sector.width;
                    if end <= TAU {
                        a >= start && a < end
                    } else {
                        a >= start || a < end - TAU
                    }
                })
                .map(|(_, &d)| d as u64)
                .sum();
            assert_eq!(sector_degree_sum(&g, &sector), expected);
        }
    }

    #[test]
    fn sector_partition_covers_all_degrees() {
        let g = small_hrg(3000, 33);
        let r = g.params().disk_radius();
        for k in [1usize, 3, 8, 17] {
            let starts: Vec<f64> = (0..k).map(|i| i as f64 * TAU / k as f64).collect();
            let mut total = 0u64;
            for i in 0..k {
                let end = if i + 1 == k { TAU } else { starts[i + 1] };
                let sector = SectorSpec::new(starts[i], end - starts[i], 0.0, r).unwrap();
                total += sector_degree_sum(&g, &sector);
            }
            assert_eq!(total, 2 * g.m() as u64, "k = {k}");
        }
    }

    #[test]
    fn scaling_fit_constant_sequence_has_zero_exponent() {
        let fit = ScalingFit::fit(vec![(100.0, 5.0), (1000.0, 5.0), (10000.0, 5.0)]).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn scaling_fit_recovers_power() {
        let pts: Vec<(f64, f64)> = [100.0f64, 400.0, 1600.0, 6400.0]
            .iter()
            .map(|&n| (n, 3.0 * n.powf(0.7)))
            .collect();
        let fit = ScalingFit::fit(pts).unwrap();
        assert!((fit.exponent - 0.7).abs() < 1e-9);
        assert!(fit.r_squared > 0.999999);
    }

    #[test]
    fn scaling_fit_rejects_bad_input() {
        assert!(ScalingFit::fit(vec![(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(ScalingFit::fit(vec![(1.0, 1.0), (2.0, 0.0), (3.0, 2.0)]).is_err());
    }

    /// Synthetic uniform-degree input: n vertices at random angles, each
    /// adjacent to its 4 nearest neighbors on each side in angle order.
    fn uniform_degree_ring(n: usize, seed: u64) -> HrgGraph {
        let mut rng = rng_from_seed(seed);
        let mut order: Vec<(f64, u32)> = (0..n)
            .map(|i| (rng.random::<f64>() * TAU, i as u32))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let coords: Vec<PolarPoint> = {
            let mut c = vec![PolarPoint::new(1.0, 0.0); n];
            for &(angle, id) in &order {
                c[id as usize] = PolarPoint::new(1.0, angle);
            }
            c
        };
        let mut lists = vec![Vec::new(); n];
        for pos in 0..n {
            let id = order[pos].1;
            for step in 1..=4usize {
                let other = order[(pos + step) % n].1;
                lists[id as usize].push(other);
                lists[other as usize].push(id);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        let params = ModelParams::new(n, 0.75, 20.0, seed).unwrap();
        HrgGraph::from_neighbor_lists(params, coords, lists).unwrap()
    }

    #[test]
    fn sector_scaling_recovers_closed_form_on_uniform_degrees() {
        let alpha = 0.75;
        let ns = [8000usize, 16_000, 32_000, 64_000];
        let mut measured = Vec::new();
        let mut closed_form = Vec::new();
        for (i, &n) in ns.iter().enumerate() {
            let g = uniform_degree_ring(n, 100 + i as u64);
            let width = scaling_sector_width(n, alpha);
            let max = max_sector_degree_sum(&g, width, SECTORS_PER_GRAPH, 7 + i as u64);
            measured.push((n as f64, max as f64));
            closed_form.push((n as f64, 8.0 * n as f64 * width / TAU));
        }
        let fit_measured = ScalingFit::fit(measured).unwrap();
        let fit_closed = ScalingFit::fit(closed_form).unwrap();
        assert!(
            (fit_measured.exponent - fit_closed.exponent).abs() < 0.05,
            "measured {} vs closed form {}",
            fit_measured.exponent,
            fit_closed.exponent
        );
    }

    fn graph_with_origin_vertex() -> HrgGraph {
        let params = ModelParams::new(40, 0.75, 8.0, 5).unwrap();
        let mut coords = crate::generate::sample_points(&params);
        coords[7] = PolarPoint::new(0.0, 0.0);
        crate::generate::build_naive_from_coords(params, coords).unwrap()
    }

    #[test]
    fn origin_vertex_is_witness_for_any_rho() {
        let g = graph_with_origin_vertex();
        for rho in [0.5, 2.0, 7.9] {
            match inner_disk_check(&g, rho) {
                InnerDiskOutcome::Witness { .. } => {}
                other => panic!("rho={rho}: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_inner_disk_reports_vacuous() {
        let params = ModelParams::new(30, 0.75, 12.0, 6).unwrap();
        let coords: Vec<PolarPoint> = (0..30)
            .map(|i| PolarPoint::new(11.0 + (i as f64) * 0.01, i as f64))
            .collect();
        let g = crate::generate::build_naive_from_coords(params, coords).unwrap();
        assert_eq!(
            inner_disk_check(&g, 1.0),
            InnerDiskOutcome::VacuousEmptyInnerDisk
        );
    }

    #[test]
    fn no_candidate_reported_when_center_empty_enough() {
        // All radii in [4.0, 4.45]; rho = 6.5 puts them in the inner disk
        // while a candidate would need radius <= R - rho = 3.5.
        let params = ModelParams::new(10, 0.75, 10.0, 0).unwrap();
        let coords: Vec<PolarPoint> = (0..10)
            .map(|i| PolarPoint::new(4.0 + 0.05 * i as f64, i as f64 * 0.6))
            .collect();
        let g = crate::generate::build_naive_from_coords(params, coords).unwrap();
        assert_eq!(inner_disk_check(&g, 6.5), InnerDiskOutcome::NoCandidate);
    }

    #[test]
    fn sufficient_condition_witness_always_verifies() {
        for seed in 0..10u64 {
            let g = small_hrg(3000, 40 + seed);
            let rho = inner_disk_radius(g.params());
            match inner_disk_check(&g, rho) {
                InnerDiskOutcome::VerificationFailed { candidate, missed } => {
                    panic!("witness {candidate} failed against {missed}")
                }
                _ => {}
            }
        }
    }

    #[test]
    fn phase_one_width_start_inside_is_flagged() {
        let g = graph_with_origin_vertex();
        let w = phase_one_width(&g, 7, 1.0).unwrap();
        assert_eq!(w.width, 0.0);
        assert!(w.start_in_inner_disk);
    }

    #[test]
    fn phase_one_width_monotone_in_rho_and_bounded() {
        let g = small_hrg(3000, 77);
        let disk_radius = g.params().disk_radius();
        let s = g
            .coords()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.radius().total_cmp(&b.1.radius()))
            .map(|(i, _)| i as u32)
            .unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..=8 {
            let rho = disk_radius * i as f64 / 10.0;
            let w = phase_one_width(&g, s, rho).unwrap();
            assert!(w.width <= TAU + 1e-12);
            assert!(
                w.width <= prev + 1e-12,
                "width grew: rho={rho} width={} prev={prev}",
                w.width
            );
            prev = w.width;
        }
    }

    fn path_graph(k: usize) -> HrgGraph {
        let coords = vec![PolarPoint::new(1.0, 0.0); k];
        let mut lists = vec![Vec::new(); k];
        for i in 0..k - 1 {
            lists[i].push(i as u32 + 1);
            lists[i + 1].push(i as u32);
        }
        let params = ModelParams::new(k, 0.75, 10.0, 0).unwrap();
        HrgGraph::from_neighbor_lists(params, coords, lists).unwrap()
    }

    #[test]
    fn diameter_of_path_graph() {
        let g = path_graph(9);
        assert_eq!(diameter_exact(&g).unwrap(), 8);
        assert!(diameter_estimate(&g, 20, 1) <= 8);
        // a double sweep on a path finds the exact diameter
        assert_eq!(diameter_estimate(&g, 20, 1), 8);
    }

    #[test]
    fn diameter_estimate_is_lower_bound() {
        for seed in 0..5u64 {
            let g = small_hrg(800, 60 + seed);
            let exact = diameter_exact(&g).unwrap();
            let est = diameter_estimate(&g, 20, seed);
            assert!(est <= exact, "estimate {est} > exact {exact}");
        }
    }
}
