//! Point sampling and edge-set construction for the threshold model,
//! plus average-degree calibration.
//!
//! Two independent builders produce the edge set: [`generate_naive`]
//! tests all Θ(n²) pairs, [`generate_fast`] prunes candidates with a
//! radial-band × angular-sector grid. Both consume the RNG stream in the
//! same fixed order (per vertex: angle draw, then radius draw) and share
//! one adjacency predicate evaluation path, so for equal parameters they
//! produce bit-identical graphs; the test suites cross-check this
//! exhaustively.

use std::f64::consts::{LN_2, PI, TAU};

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{HrgError, Result};
use crate::geometry::{
    self, adjacency_threshold, max_adjacent_angle, radial_density, ModelParams, PolarPoint,
};
use crate::graph::{HrgGraph, VertexId};
use crate::quadrature;
use crate::rng::{rng_from_seed, SeededRng};

/// Angular safety margin added to grid windows. Candidate filtering is a
/// pure optimization; the margin absorbs arccos rounding so the grid can
/// never drop a pair the predicate would accept.
const WINDOW_SLACK: f64 = 1e-6;

/// Draws one point: angle uniform in `[0, 2π)`, then radius by inverse
/// transform of the radial CDF, `r = acosh(1 + u·(cosh(αR) − 1))/α`.
/// Consumes exactly two `f64` draws, in that order.
pub fn sample_point(rng: &mut SeededRng, params: &ModelParams) -> PolarPoint {
    let angle = rng.random::<f64>() * TAU;
    let u: f64 = rng.random();
    let radius = inverse_radial_cdf(u, params);
    PolarPoint::new(radius, angle)
}

fn inverse_radial_cdf(u: f64, params: &ModelParams) -> f64 {
    let scale = (params.alpha() * params.disk_radius()).cosh() - 1.0;
    let r = (1.0 + u * scale).acosh() / params.alpha();
    // acosh/cosh round-off can land a hair above R; radii are bounded by
    // the disk radius by model invariant.
    r.min(params.disk_radius())
}

/// Draws all `n` points from the seed in `params`, vertex `i` consuming
/// draws `2i` and `2i+1` of the stream.
pub fn sample_points(params: &ModelParams) -> Vec<PolarPoint> {
    let mut rng = rng_from_seed(params.seed());
    (0..params.n()).map(|_| sample_point(&mut rng, params)).collect()
}

/// Per-point precomputed `sinh(radius)` for the shared predicate path.
fn precompute_sinh(coords: &[PolarPoint]) -> Vec<f64> {
    coords.par_iter().map(|p| p.radius().sinh()).collect()
}

#[inline]
fn pair_adjacent(
    coords: &[PolarPoint],
    sinhs: &[f64],
    u: usize,
    v: usize,
    threshold: f64,
) -> bool {
    geometry::cosh_dm1_with_sinh(coords[u], sinhs[u], coords[v], sinhs[v]) <= threshold
}

/// Builds the graph by testing every pair with the distance predicate.
/// Intended for n up to a few ten thousand; the reference for
/// [`generate_fast`].
pub fn generate_naive(params: &ModelParams) -> Result<HrgGraph> {
    let coords = sample_points(params);
    build_naive_from_coords(*params, coords)
}

pub(crate) fn build_naive_from_coords(
    params: ModelParams,
    coords: Vec<PolarPoint>,
) -> Result<HrgGraph> {
    let n = coords.len();
    let sinhs = precompute_sinh(&coords);
    let threshold = adjacency_threshold(params.disk_radius());
    let rows: Vec<Vec<VertexId>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut out = Vec::new();
            for v in (u + 1)..n {
                if pair_adjacent(&coords, &sinhs, u, v, threshold) {
                    out.push(v as VertexId);
                }
            }
            out
        })
        .collect();
    let mut lists: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (u, row) in rows.into_iter().enumerate() {
        // Mirrors for a vertex w arrive in ascending u < w before w's own
        // row (all > w), so every list comes out already sorted.
        for v in row {
            lists[u].push(v);
            lists[v as usize].push(u as VertexId);
        }
    }
    HrgGraph::from_neighbor_lists(params, coords, lists)
}

/// Builds the same graph as [`generate_naive`] in expected near-linear
/// time: the disk is cut into radial bands of width ln 2 and each band
/// into angular sectors with Θ(1) expected occupancy; only candidates
/// within a band-dependent angular window are tested with the predicate.
pub fn generate_fast(params: &ModelParams) -> Result<HrgGraph> {
    let coords = sample_points(params);
    build_fast_from_coords(*params, coords)
}

struct BandGrid {
    /// Minimum radius of each band; bands are indexed from the boundary
    /// inward (band 0 touches radius R).
    band_lo: Vec<f64>,
    /// Per band: sector count, CSR offsets into `members`, member ids.
    sectors: Vec<usize>,
    sector_offsets: Vec<Vec<usize>>,
    members: Vec<Vec<VertexId>>,
}

impl BandGrid {
    fn build(coords: &[PolarPoint], disk_radius: f64) -> Self {
        let bands = ((disk_radius / LN_2).ceil() as usize).max(1);
        let band_of = |r: f64| -> usize {
            (((disk_radius - r) / LN_2).floor() as usize).min(bands - 1)
        };
        let mut band_members: Vec<Vec<VertexId>> = vec![Vec::new(); bands];
        for (i, p) in coords.iter().enumerate() {
            band_members[band_of(p.radius())].push(i as VertexId);
        }
        let band_lo: Vec<f64> = (0..bands)
            .map(|k| (disk_radius - (k + 1) as f64 * LN_2).max(0.0))
            .collect();

        let mut sectors = Vec::with_capacity(bands);
        let mut sector_offsets = Vec::with_capacity(bands);
        let mut members = Vec::with_capacity(bands);
        for ids in band_members {
            let s = ids.len().max(1);
            let mut counts = vec![0usize; s + 1];
            let sector_of =
                |p: PolarPoint| ((p.angle() / TAU * s as f64) as usize).min(s - 1);
            for &id in &ids {
                counts[sector_of(coords[id as usize]) + 1] += 1;
            }
            for i in 0..s {
                counts[i + 1] += counts[i];
            }
            let mut grouped = vec![0 as VertexId; ids.len()];
            let mut cursor = counts.clone();
            for &id in &ids {
                let sec = sector_of(coords[id as usize]);
                grouped[cursor[sec]] = id;
                cursor[sec] += 1;
            }
            sectors.push(s);
            sector_offsets.push(counts);
            members.push(grouped);
        }
        Self {
            band_lo,
            sectors,
            sector_offsets,
            members,
        }
    }
}

pub(crate) fn build_fast_from_coords(
    params: ModelParams,
    coords: Vec<PolarPoint>,
) -> Result<HrgGraph> {
    let n = coords.len();
    let disk_radius = params.disk_radius();
    let sinhs = precompute_sinh(&coords);
    let threshold = adjacency_threshold(disk_radius);
    let grid = BandGrid::build(&coords, disk_radius);

    let lists: Vec<Vec<VertexId>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let p = coords[u];
            let mut out = Vec::new();
            let mut push_candidate = |v: VertexId| {
                if v as usize != u && pair_adjacent(&coords, &sinhs, u, v as usize, threshold) {
                    out.push(v);
                }
            };
            for (k, ids) in grid.members.iter().enumerate() {
                if ids.is_empty() {
                    continue;
                }
                let window =
                    max_adjacent_angle(p.radius(), grid.band_lo[k], disk_radius) + WINDOW_SLACK;
                let s = grid.sectors[k];
                if window >= PI || s == 1 {
                    for &v in ids {
                        push_candidate(v);
                    }
                    continue;
                }
                let sector_of = |angle: f64| -> usize {
                    ((angle.rem_euclid(TAU) / TAU * s as f64) as usize).min(s - 1)
                };
                let s_lo = sector_of(p.angle() - window);
                let s_hi = sector_of(p.angle() + window);
                let span = (s_hi + s - s_lo) % s + 1;
                if span >= s {
                    for &v in ids {
                        push_candidate(v);
                    }
                    continue;
                }
                let offsets = &grid.sector_offsets[k];
                let mut sec = s_lo;
                loop {
                    for &v in &ids[offsets[sec]..offsets[sec + 1]] {
                        push_candidate(v);
                    }
                    if sec == s_hi {
                        break;
                    }
                    sec = (sec + 1) % s;
                }
            }
            out.sort_unstable();
            out
        })
        .collect();

    HrgGraph::from_neighbor_lists(params, coords, lists)
}

/// Expected average degree `∫ expected_degree_at_radius(r) f(r) dr` of
/// the model with offset `C` (that is, disk radius `R = 2 ln n + C`).
pub fn expected_average_degree(n: usize, alpha: f64, offset_c: f64) -> Result<f64> {
    let params = ModelParams::with_offset(n, alpha, offset_c, 0)?;
    let disk_radius = params.disk_radius();
    quadrature::integrate(
        |r| {
            geometry::expected_degree_at_radius(r, &params).unwrap_or(f64::NAN)
                * radial_density(r, &params)
        },
        0.0,
        disk_radius,
        1e-6,
    )
}

/// Finds the offset `C` for which the expected average degree matches
/// `target_avg_degree`, by bisection over `C ∈ [−10, 10]` (the expected
/// average degree is monotone decreasing in `C`). Errors when the target
/// is not reachable inside the bracket.
pub fn calibrate_offset(n: usize, alpha: f64, target_avg_degree: f64) -> Result<f64> {
    if !(target_avg_degree.is_finite() && target_avg_degree > 0.0) {
        return Err(HrgError::InvalidParameter(format!(
            "target average degree must be positive, got {target_avg_degree}"
        )));
    }
    let min_feasible = -2.0 * (n as f64).ln();
    let mut lo = if -10.0 > min_feasible { -10.0 } else { min_feasible + 1e-3 };
    let mut hi = 10.0_f64;
    let f_lo = expected_average_degree(n, alpha, lo)?;
    let f_hi = expected_average_degree(n, alpha, hi)?;
    if target_avg_degree > f_lo || target_avg_degree < f_hi {
        return Err(HrgError::Calibration(format!(
            "target {target_avg_degree} outside achievable range [{f_hi:.4}, {f_lo:.4}] \
             for C in [{lo}, {hi}] at n = {n}, alpha = {alpha}"
        )));
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..60 {
        mid = 0.5 * (lo + hi);
        let f_mid = expected_average_degree(n, alpha, mid)?;
        if (f_mid - target_avg_degree).abs() <= 1e-3 * target_avg_degree {
            return Ok(mid);
        }
        if f_mid > target_avg_degree {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f_mid = expected_average_degree(n, alpha, mid)?;
    if (f_mid - target_avg_degree).abs() <= 0.01 * target_avg_degree {
        Ok(mid)
    } else {
        Err(HrgError::Calibration(format!(
            "bisection stalled at C = {mid} with average degree {f_mid}, \
             target {target_avg_degree}"
        )))
    }
}

/// Convenience: calibrated parameters for a target average degree.
pub fn params_for_average_degree(
    n: usize,
    alpha: f64,
    target_avg_degree: f64,
    seed: u64,
) -> Result<ModelParams> {
    let c = calibrate_offset(n, alpha, target_avg_degree)?;
    ModelParams::with_offset(n, alpha, c, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_cdf_endpoints() {
        let params = ModelParams::with_offset(1000, 0.75, 0.0, 0).unwrap();
        assert_eq!(inverse_radial_cdf(0.0, &params), 0.0);
        let near_one = 1.0 - 1e-12;
        let r = inverse_radial_cdf(near_one, &params);
        assert!(r <= params.disk_radius());
        assert!(params.disk_radius() - r < 1e-9 * params.disk_radius());
    }

    #[test]
    fn sampled_radii_follow_disk_measure() {
        // Smoke-scale sup-norm check; the full 1e6-sample fidelity bound
        // lives in the acceptance suite.
        let params = ModelParams::with_offset(100_000, 0.75, 0.0, 11).unwrap();
        let mut radii: Vec<f64> = sample_points(&params)
            .iter()
            .map(|p| p.radius())
            .collect();
        radii.sort_by(f64::total_cmp);
        let n = radii.len() as f64;
        let mut worst = 0.0f64;
        for (i, &r) in radii.iter().enumerate() {
            let cdf = geometry::disk_measure(r, &params);
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            worst = worst.max((cdf - lo).abs()).max((cdf - hi).abs());
        }
        assert!(worst < 0.005, "sup-norm {worst}");
    }

    #[test]
    fn naive_single_vertex_has_no_edges() {
        let params = ModelParams::new(1, 0.75, 5.0, 3).unwrap();
        let g = generate_naive(&params).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn naive_two_points_at_origin_are_adjacent() {
        let params = ModelParams::new(2, 0.75, 5.0, 0).unwrap();
        let coords = vec![PolarPoint::new(0.0, 0.0), PolarPoint::new(0.0, 1.0)];
        let g = build_naive_from_coords(params, coords).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn naive_matches_independent_pairwise_rescan() {
        // Re-evaluates the adjacency predicate over all pairs with locally
        // written arithmetic (same formula, independent code).
        let params = params_for_average_degree(500, 0.75, 8.0, 1234).unwrap();
        let g = generate_naive(&params).unwrap();
        let coords = g.coords();
        let disk_radius = params.disk_radius();
        let thr = {
            let s = (0.5 * disk_radius).sinh();
            2.0 * s * s
        };
        let mut edges = 0usize;
        for u in 0..coords.len() {
            for v in (u + 1)..coords.len() {
                let (p, q) = (coords[u], coords[v]);
                let a = (0.5 * (p.radius() - q.radius())).sinh();
                let b = (0.5 * geometry::angular_distance(p.angle(), q.angle())).sin();
                let y = 2.0 * a * a + 2.0 * p.radius().sinh() * q.radius().sinh() * b * b;
                let adjacent = y <= thr;
                assert_eq!(
                    adjacent,
                    g.neighbors(u as u32).binary_search(&(v as u32)).is_ok(),
                    "pair ({u}, {v})"
                );
                edges += adjacent as usize;
            }
        }
        assert_eq!(edges, g.m());
    }

    #[test]
    fn fast_equals_naive_on_fixed_seeds() {
        for &(n, alpha, c) in &[
            (1usize, 0.75, 0.0),
            (2, 0.6, -1.0),
            (50, 0.55, 1.0),
            (400, 0.75, -0.5),
            (1000, 0.95 - 1e-9, 0.0),
        ] {
            let params = ModelParams::with_offset(n.max(2), alpha, c, 77).unwrap();
            let a = generate_naive(&params).unwrap();
            let b = generate_fast(&params).unwrap();
            assert_eq!(a.offsets(), b.offsets(), "n={n} alpha={alpha}");
            assert_eq!(a.neighbor_array(), b.neighbor_array(), "n={n} alpha={alpha}");
            assert_eq!(a.coords(), b.coords());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let params = ModelParams::with_offset(300, 0.8, 0.0, 99).unwrap();
        let a = generate_fast(&params).unwrap();
        let b = generate_fast(&params).unwrap();
        assert_eq!(a.coords(), b.coords());
        assert_eq!(a.offsets(), b.offsets());
        assert_eq!(a.neighbor_array(), b.neighbor_array());
    }

    #[test]
    fn generated_graphs_validate_geometry() {
        let params = params_for_average_degree(2000, 0.75, 8.0, 5).unwrap();
        let g = generate_fast(&params).unwrap();
        g.validate_geometry().unwrap();
    }

    #[test]
    fn expected_average_degree_monotone_in_offset() {
        let a = expected_average_degree(2000, 0.75, 0.0).unwrap();
        let b = expected_average_degree(2000, 0.75, 1.0).unwrap();
        let c = expected_average_degree(2000, 0.75, 2.0).unwrap();
        assert!(a > b && b > c, "{a} {b} {c}");
    }

    #[test]
    fn calibration_hits_target_expectation() {
        let c = calibrate_offset(2000, 0.75, 8.0).unwrap();
        let got = expected_average_degree(2000, 0.75, c).unwrap();
        assert!((got - 8.0).abs() < 0.08, "C={c} avg={got}");
    }

    #[test]
    fn calibration_rejects_unreachable_target() {
        assert!(matches!(
            calibrate_offset(2000, 0.75, 1e9),
            Err(HrgError::Calibration(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fast_equals_naive_random_coords(
            n in 1usize..120,
            alpha in 0.55f64..0.95,
            c in -2.0f64..2.0,
            seed in 0u64..1_000_000,
        ) {
            let params = ModelParams::with_offset(n.max(2), alpha, c, seed);
            prop_assume!(params.is_ok());
            let params = params.unwrap().with_n_unchecked(n);
            let coords = sample_points(&params);
            let a = build_naive_from_coords(params, coords.clone()).unwrap();
            let b = build_fast_from_coords(params, coords).unwrap();
            prop_assert_eq!(a.offsets(), b.offsets());
            prop_assert_eq!(a.neighbor_array(), b.neighbor_array());
        }
    }
}
