//! The immutable graph representation: vertex coordinates plus a compact
//! symmetric adjacency (offset array + flat neighbor array), with the
//! degree array alongside.
//!
//! Structural invariants (sorted, loop-free, duplicate-free, symmetric
//! adjacency consistent with the offsets) are checked on every build.
//! The geometric invariant — every listed edge satisfies the adjacency
//! predicate — is available separately through
//! [`HrgGraph::validate_geometry`].

use crate::error::{HrgError, Result};
use crate::geometry::{self, ModelParams, PolarPoint};

pub type VertexId = u32;

/// Sentinel for "no vertex" in distance/parent arrays.
pub const NO_VERTEX: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct HrgGraph {
    params: ModelParams,
    coords: Vec<PolarPoint>,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    degrees: Vec<u32>,
}

impl HrgGraph {
    /// Builds a graph from per-vertex neighbor lists, validating all
    /// structural invariants.
    pub fn from_neighbor_lists(
        params: ModelParams,
        coords: Vec<PolarPoint>,
        lists: Vec<Vec<VertexId>>,
    ) -> Result<Self> {
        if lists.len() != coords.len() {
            return Err(HrgError::InvalidParameter(format!(
                "{} adjacency lists for {} vertices",
                lists.len(),
                coords.len()
            )));
        }
        let mut offsets = Vec::with_capacity(coords.len() + 1);
        offsets.push(0usize);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut neighbors = Vec::with_capacity(total);
        for list in lists {
            neighbors.extend_from_slice(&list);
            offsets.push(neighbors.len());
        }
        Self::new(params, coords, offsets, neighbors)
    }

    /// Builds a graph from raw CSR arrays, validating all structural
    /// invariants.
    pub fn new(
        params: ModelParams,
        coords: Vec<PolarPoint>,
        offsets: Vec<usize>,
        neighbors: Vec<VertexId>,
    ) -> Result<Self> {
        let n = coords.len();
        if n != params.n() {
            return Err(HrgError::InvalidParameter(format!(
                "params.n = {} but {} coordinates",
                params.n(),
                n
            )));
        }
        if n > u32::MAX as usize {
            return Err(HrgError::InvalidParameter(format!(
                "vertex count {n} exceeds the u32 id space"
            )));
        }
        if offsets.len() != n + 1 || offsets[0] != 0 || offsets[n] != neighbors.len() {
            return Err(HrgError::InvalidParameter(
                "offset array inconsistent with vertex/neighbor counts".into(),
            ));
        }
        if neighbors.len() % 2 != 0 {
            return Err(HrgError::InvalidParameter(
                "odd neighbor array length for an undirected graph".into(),
            ));
        }
        for v in 0..n {
            if offsets[v] > offsets[v + 1] {
                return Err(HrgError::InvalidParameter(format!(
                    "offsets not monotone at vertex {v}"
                )));
            }
            let list = &neighbors[offsets[v]..offsets[v + 1]];
            for (i, &w) in list.iter().enumerate() {
                if w as usize >= n {
                    return Err(HrgError::InvalidParameter(format!(
                        "neighbor {w} of vertex {v} out of range"
                    )));
                }
                if w as usize == v {
                    return Err(HrgError::InvalidParameter(format!("self-loop at {v}")));
                }
                if i > 0 && list[i - 1] >= w {
                    return Err(HrgError::InvalidParameter(format!(
                        "neighbors of {v} not strictly ascending"
                    )));
                }
            }
        }
        let degrees: Vec<u32> = (0..n).map(|v| (offsets[v + 1] - offsets[v]) as u32).collect();
        let graph = Self {
            params,
            coords,
            offsets,
            neighbors,
            degrees,
        };
        // Symmetry: u in N(v) <=> v in N(u).
        for v in 0..n as u32 {
            for &w in graph.neighbors(v) {
                if graph.neighbors(w).binary_search(&v).is_err() {
                    return Err(HrgError::InvalidParameter(format!(
                        "adjacency not symmetric: {w} lists {v} only one way"
                    )));
                }
            }
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn coords(&self) -> &[PolarPoint] {
        &self.coords
    }

    pub fn coord(&self, v: VertexId) -> PolarPoint {
        self.coords[v as usize]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            return 0.0;
        }
        2.0 * self.m() as f64 / self.n() as f64
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(HrgError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Checks the geometric invariants: radii within `[0, R]` and every
    /// listed edge satisfying the adjacency predicate.
    pub fn validate_geometry(&self) -> Result<()> {
        let disk_radius = self.params.disk_radius();
        for (v, p) in self.coords.iter().enumerate() {
            if !(0.0..=disk_radius).contains(&p.radius()) {
                return Err(HrgError::InvalidParameter(format!(
                    "vertex {v} radius {} outside [0, {disk_radius}]",
                    p.radius()
                )));
            }
        }
        for v in 0..self.n() as u32 {
            for &w in self.neighbors(v) {
                if v < w && !geometry::is_adjacent(self.coord(v), self.coord(w), disk_radius) {
                    return Err(HrgError::InvalidParameter(format!(
                        "edge ({v}, {w}) exceeds the distance threshold"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Connected-component labels (0-based, in order of first discovery
    /// scanning vertex ids ascending) and the size of each component.
    pub fn component_labels(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.n();
        let mut label = vec![NO_VERTEX; n];
        let mut sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n as u32 {
            if label[start as usize] != NO_VERTEX {
                continue;
            }
            let id = sizes.len() as u32;
            let mut size = 0usize;
            queue.clear();
            queue.push(start);
            label[start as usize] = id;
            while let Some(v) = queue.pop() {
                size += 1;
                for &w in self.neighbors(v) {
                    if label[w as usize] == NO_VERTEX {
                        label[w as usize] = id;
                        queue.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        (label, sizes)
    }

    /// The largest connected component: its vertices in ascending original
    /// id order (which is also the compact relabeling, new id = position)
    /// plus the old-to-new index map (`NO_VERTEX` for vertices outside).
    ///
    /// Ties between equal-sized components go to the one containing the
    /// smallest original vertex id.
    pub fn largest_component(&self) -> LargestComponent {
        let (label, sizes) = self.component_labels();
        // Components are discovered in ascending min-vertex-id order, so the
        // first maximal one wins the tie-break.
        let mut best = 0usize;
        for (c, &size) in sizes.iter().enumerate() {
            if size > sizes[best] {
                best = c;
            }
        }
        let best = best as u32;
        let mut vertices = Vec::with_capacity(sizes[best as usize]);
        let mut index_of = vec![NO_VERTEX; self.n()];
        for v in 0..self.n() as u32 {
            if label[v as usize] == best {
                index_of[v as usize] = vertices.len() as u32;
                vertices.push(v);
            }
        }
        LargestComponent { vertices, index_of }
    }

    /// The subgraph induced by `vertices` (must be ascending and unique),
    /// relabeled to `0..k`. Coordinates and the model parameters carry
    /// over, with `n` set to the new vertex count.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<HrgGraph> {
        let mut index_of = vec![NO_VERTEX; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            self.check_vertex(old)?;
            if index_of[old as usize] != NO_VERTEX {
                return Err(HrgError::InvalidParameter(format!(
                    "duplicate vertex {old} in induced set"
                )));
            }
            index_of[old as usize] = new as u32;
        }
        let coords: Vec<PolarPoint> = vertices.iter().map(|&v| self.coord(v)).collect();
        let lists: Vec<Vec<VertexId>> = vertices
            .iter()
            .map(|&old| {
                let mut list: Vec<VertexId> = self
                    .neighbors(old)
                    .iter()
                    .filter_map(|&w| {
                        let new = index_of[w as usize];
                        (new != NO_VERTEX).then_some(new)
                    })
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let params = self.params.with_n_unchecked(vertices.len());
        HrgGraph::from_neighbor_lists(params, coords, lists)
    }
}

/// Result of [`HrgGraph::largest_component`].
#[derive(Debug, Clone)]
pub struct LargestComponent {
    /// Original ids of the component's vertices, ascending; position in
    /// this vector is the compact new id.
    pub vertices: Vec<VertexId>,
    /// Old id to new id; `NO_VERTEX` for vertices outside the component.
    pub index_of: Vec<u32>,
}

impl LargestComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of[v as usize] != NO_VERTEX
    }
}
