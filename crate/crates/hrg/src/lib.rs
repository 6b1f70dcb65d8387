//! Hyperbolic random graphs and bidirectional breadth-first search.
//!
//! This crate generates random graphs of the threshold model in the
//! hyperbolic plane (n points in a disk of radius R = 2 ln n + C, radial
//! density proportional to sinh(αr), edges between points at hyperbolic
//! distance at most R) and answers shortest-path queries with a
//! bidirectional BFS under pluggable alternation strategies. On top of
//! that it ships statistical validators for the structural properties of
//! the model (power-law degree exponent, maximum-degree scaling, sector
//! degree sums, inner-disk domination) and an experiment driver that
//! measures empirical search-space exponents against the theoretical
//! bound max(2 − 1/α, 1/(2α)).
//!
//! Entry points:
//! - [`geometry`]: distances, adjacency angles and measures in the disk.
//! - [`generate`]: point sampling, the naive and the grid-accelerated
//!   edge builders, and average-degree calibration.
//! - [`graph`]: the immutable CSR graph type.
//! - [`search`]: BFS, bidirectional BFS and exact alternation-schedule
//!   enumeration.
//! - [`analysis`]: statistical validators and scaling fits.
//! - [`experiment`]: the batched search-space measurement pipeline.
//! - [`io`]: the binary graph file format and the edge-list exporter.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod rng;
pub mod search;

mod quadrature;

pub use error::{HrgError, Result};
pub use geometry::{ModelParams, PolarPoint};
pub use graph::{HrgGraph, VertexId};
pub use search::{AlternationStrategy, SearchOutcome};
