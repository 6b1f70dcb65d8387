//! Primitives of the hyperbolic disk model: polar coordinates, distances,
//! adjacency angles and region measures.
//!
//! All functions here are pure and safe to call concurrently. Everything
//! is evaluated in 64-bit floating point; the distance core is computed
//! in the cosh(d) − 1 domain through a cancellation-free rearrangement,
//! so `hyperbolic_distance(p, p) == 0` holds exactly and the adjacency
//! predicate stays sharp out to the disk boundary.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{HrgError, Result};
use crate::quadrature;

/// A point of the disk in polar coordinates: hyperbolic distance from the
/// origin and angle in radians, normalized to `[0, 2π)` on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarPoint {
    radius: f64,
    angle: f64,
}

impl PolarPoint {
    /// Builds a point, normalizing the angle into `[0, 2π)`.
    ///
    /// Panics if the radius is negative or not finite; radii are bounded
    /// by the disk radius at the graph level, not here.
    pub fn new(radius: f64, angle: f64) -> Self {
        assert!(
            radius.is_finite() && radius >= 0.0,
            "radius must be finite and non-negative, got {radius}"
        );
        assert!(angle.is_finite(), "angle must be finite, got {angle}");
        let mut angle = angle.rem_euclid(TAU);
        if angle >= TAU {
            // rem_euclid can land exactly on TAU for inputs just below a
            // multiple of 2π.
            angle = 0.0;
        }
        Self { radius, angle }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// The generative parameters of the model: number of points `n`, radial
/// dispersion `alpha` in (0.5, 1), disk radius `R`, and the RNG seed.
///
/// `R` relates to the average-degree offset `C` by `R = 2 ln n + C`;
/// [`ModelParams::offset`] recovers `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    n: usize,
    alpha: f64,
    disk_radius: f64,
    seed: u64,
}

impl ModelParams {
    /// Validates and builds parameters with an explicit disk radius.
    pub fn new(n: usize, alpha: f64, disk_radius: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(HrgError::InvalidParameter("n must be positive".into()));
        }
        if !(alpha.is_finite() && alpha > 0.5 && alpha < 1.0) {
            return Err(HrgError::InvalidParameter(format!(
                "alpha must lie strictly inside (0.5, 1), got {alpha}"
            )));
        }
        if !(disk_radius.is_finite() && disk_radius > 0.0) {
            return Err(HrgError::InvalidParameter(format!(
                "disk radius must be positive and finite, got {disk_radius}"
            )));
        }
        Ok(Self {
            n,
            alpha,
            disk_radius,
            seed,
        })
    }

    /// Builds parameters from the offset form `R = 2 ln n + C`.
    pub fn with_offset(n: usize, alpha: f64, offset_c: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(HrgError::InvalidParameter("n must be positive".into()));
        }
        let disk_radius = 2.0 * (n as f64).ln() + offset_c;
        Self::new(n, alpha, disk_radius, seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The disk radius `R`, which is also the connection threshold.
    pub fn disk_radius(&self) -> f64 {
        self.disk_radius
    }

    /// The offset `C = R − 2 ln n`.
    pub fn offset(&self) -> f64 {
        self.disk_radius - 2.0 * (self.n as f64).ln()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Copy with a different seed; everything else unchanged.
    pub fn reseeded(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }

    pub(crate) fn with_n_unchecked(&self, n: usize) -> Self {
        Self { n, ..*self }
    }
}

/// Angular distance `Δ(φ1, φ2) = π − |π − |φ1 − φ2||`, the shorter arc
/// between two angles. Accepts arbitrary finite reals; the result lies in
/// `[0, π]` and is exactly symmetric in its arguments.
pub fn angular_distance(phi1: f64, phi2: f64) -> f64 {
    let a = phi1.rem_euclid(TAU);
    let b = phi2.rem_euclid(TAU);
    let diff = (a - b).abs();
    PI - (PI - diff).abs()
}

/// `cosh(dist(p1, p2)) − 1`, the adjacency comparison core.
///
/// Uses `cosh d = cosh(r1 − r2) + 2 sinh r1 sinh r2 sin²(Δ/2)`, a
/// rearrangement of the law of cosines with only non-negative terms, so
/// no cancellation occurs anywhere in the evaluation.
pub fn cosh_distance_minus_one(p1: PolarPoint, p2: PolarPoint) -> f64 {
    cosh_dm1_with_sinh(p1, p1.radius.sinh(), p2, p2.radius.sinh())
}

/// Same as [`cosh_distance_minus_one`] with the per-point `sinh(r)`
/// supplied by the caller. The edge builders precompute these per point;
/// keeping one shared evaluation path makes the naive and the grid
/// builders agree bit for bit.
#[inline]
pub(crate) fn cosh_dm1_with_sinh(p1: PolarPoint, sinh1: f64, p2: PolarPoint, sinh2: f64) -> f64 {
    let a = (0.5 * (p1.radius - p2.radius)).sinh();
    let b = (0.5 * angular_distance(p1.angle, p2.angle)).sin();
    2.0 * a * a + 2.0 * sinh1 * sinh2 * b * b
}

/// `cosh(R) − 1` in the same form the distance core uses.
pub fn adjacency_threshold(disk_radius: f64) -> f64 {
    let s = (0.5 * disk_radius).sinh();
    2.0 * s * s
}

/// The threshold-model adjacency predicate `dist(p1, p2) <= R`
/// (non-strict; ties at exactly `R` count as adjacent).
pub fn is_adjacent(p1: PolarPoint, p2: PolarPoint, disk_radius: f64) -> bool {
    cosh_distance_minus_one(p1, p2) <= adjacency_threshold(disk_radius)
}

/// Hyperbolic distance between two points of the disk.
///
/// Symmetric, non-negative, and exactly zero for identical points. For
/// collinear points (equal angles) it reduces to `|r1 − r2|` up to
/// rounding of the final log.
pub fn hyperbolic_distance(p1: PolarPoint, p2: PolarPoint) -> f64 {
    let y = cosh_distance_minus_one(p1, p2);
    // acosh(1 + y) without leaving the well-conditioned ln1p domain.
    (y + (y * (y + 2.0)).sqrt()).ln_1p()
}

/// Maximum angular distance at which two points with radii `r1`, `r2`
/// are still adjacent. Returns `π` when `r1 + r2 <= R` (every angle is
/// adjacent); otherwise the arccos expression with its argument clamped
/// into `[-1, 1]`.
pub fn max_adjacent_angle(r1: f64, r2: f64, disk_radius: f64) -> f64 {
    if r1 + r2 <= disk_radius {
        return PI;
    }
    let arg = (r1.cosh() * r2.cosh() - disk_radius.cosh()) / (r1.sinh() * r2.sinh());
    arg.clamp(-1.0, 1.0).acos()
}

/// Probability that a sampled point has radius at most `r`: the measure
/// of the origin disk of radius `r`, in closed form
/// `(cosh(αr) − 1)/(cosh(αR) − 1)`.
pub fn disk_measure(r: f64, params: &ModelParams) -> f64 {
    let num = (0.5 * params.alpha * r).sinh();
    let den = (0.5 * params.alpha * params.disk_radius).sinh();
    (num * num) / (den * den)
}

/// The radial density `α sinh(αr) / (cosh(αR) − 1)` for `r ∈ [0, R]`
/// (the angle marginalized out; integrates to 1 over the disk radius).
pub fn radial_density(r: f64, params: &ModelParams) -> f64 {
    let s = (0.5 * params.alpha * params.disk_radius).sinh();
    params.alpha * (params.alpha * r).sinh() / (2.0 * s * s)
}

/// Expected degree of a vertex at radius `r`: `n` times the measure of
/// the radius-`R` disk around the point, computed as
/// `n · ∫ f(r') · θ(r, r', R)/π dr'`.
///
/// The integrand equals the density below `r' = R − r` (where every
/// angle connects), so that part is taken in closed form and only the
/// smooth arccos part is integrated numerically (adaptive, relative
/// tolerance 1e-8).
pub fn expected_degree_at_radius(r: f64, params: &ModelParams) -> Result<f64> {
    let disk_radius = params.disk_radius;
    if !(0.0..=disk_radius).contains(&r) {
        return Err(HrgError::InvalidParameter(format!(
            "radius {r} outside [0, {disk_radius}]"
        )));
    }
    let split = (disk_radius - r).clamp(0.0, disk_radius);
    let head = disk_measure(split, params);
    let tail = if split < disk_radius {
        quadrature::integrate(
            |rp| radial_density(rp, params) * max_adjacent_angle(r, rp, disk_radius) / PI,
            split,
            disk_radius,
            1e-8,
        )?
    } else {
        0.0
    };
    Ok(params.n as f64 * (head + tail))
}
