//! Graph file format v1 and the plain-text edge-list exporter.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! magic   4 bytes  "HRG1"
//! n       u64      vertex count
//! m       u64      undirected edge count
//! alpha   f64      radial dispersion
//! R       f64      disk radius / distance threshold
//! seed    u64      RNG seed the coordinates were drawn from
//! coords  n × (f64 radius, f64 angle)
//! offsets (n+1) × u64
//! neighbors 2m × u32 when n < 2^32, else 2m × u64
//! ```
//!
//! Coordinates round-trip bit-exactly. The reader re-validates every
//! structural graph invariant and reports malformed input with the
//! offending field named.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::error::{HrgError, Result};
use crate::geometry::{ModelParams, PolarPoint};
use crate::graph::HrgGraph;

const MAGIC: [u8; 4] = *b"HRG1";

pub fn write_graph<W: Write>(graph: &HrgGraph, w: &mut W) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_u64::<LittleEndian>(graph.n() as u64)?;
    w.write_u64::<LittleEndian>(graph.m() as u64)?;
    w.write_f64::<LittleEndian>(graph.params().alpha())?;
    w.write_f64::<LittleEndian>(graph.params().disk_radius())?;
    w.write_u64::<LittleEndian>(graph.params().seed())?;
    for p in graph.coords() {
        w.write_f64::<LittleEndian>(p.radius())?;
        w.write_f64::<LittleEndian>(p.angle())?;
    }
    for &off in graph.offsets() {
        w.write_u64::<LittleEndian>(off as u64)?;
    }
    // n < 2^32 is a construction invariant of HrgGraph, so neighbors are
    // written in the u32 branch of the format.
    for &v in graph.neighbor_array() {
        w.write_u32::<LittleEndian>(v)?;
    }
    Ok(())
}

pub fn write_graph_to_path<P: AsRef<Path>>(graph: &HrgGraph, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_graph(graph, &mut w)?;
    w.flush()?;
    Ok(())
}

fn field_err(field: &'static str, reason: impl Into<String>) -> HrgError {
    HrgError::Format {
        field,
        reason: reason.into(),
    }
}

fn read_u64_field<R: Read>(r: &mut R, field: &'static str) -> Result<u64> {
    r.read_u64::<LittleEndian>()
        .map_err(|e| field_err(field, format!("read failed: {e}")))
}

fn read_f64_field<R: Read>(r: &mut R, field: &'static str) -> Result<f64> {
    r.read_f64::<LittleEndian>()
        .map_err(|e| field_err(field, format!("read failed: {e}")))
}

pub fn read_graph<R: Read>(r: &mut R) -> Result<HrgGraph> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|e| field_err("magic", format!("read failed: {e}")))?;
    if magic != MAGIC {
        return Err(field_err("magic", format!("expected \"HRG1\", got {magic:?}")));
    }
    let n = read_u64_field(r, "n")?;
    if n == 0 {
        return Err(field_err("n", "graph must have at least one vertex"));
    }
    if n >= u32::MAX as u64 {
        return Err(field_err(
            "n",
            format!("vertex count {n} exceeds the supported u32 id space"),
        ));
    }
    let n = n as usize;
    let m = read_u64_field(r, "m")?;
    let directed = m
        .checked_mul(2)
        .and_then(|d| usize::try_from(d).ok())
        .ok_or_else(|| field_err("m", format!("edge count {m} overflows")))?;
    let alpha = read_f64_field(r, "alpha")?;
    if !(alpha.is_finite() && alpha > 0.5 && alpha < 1.0) {
        return Err(field_err(
            "alpha",
            format!("must lie strictly inside (0.5, 1), got {alpha}"),
        ));
    }
    let disk_radius = read_f64_field(r, "R")?;
    if !(disk_radius.is_finite() && disk_radius > 0.0) {
        return Err(field_err("R", format!("must be positive, got {disk_radius}")));
    }
    let seed = read_u64_field(r, "seed")?;
    let params = ModelParams::new(n, alpha, disk_radius, seed)
        .map_err(|e| field_err("header", e.to_string()))?;

    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        let radius = read_f64_field(r, "coords")?;
        let angle = read_f64_field(r, "coords")?;
        if !(radius.is_finite() && (0.0..=disk_radius).contains(&radius)) {
            return Err(field_err(
                "coords",
                format!("vertex {i}: radius {radius} outside [0, {disk_radius}]"),
            ));
        }
        if !angle.is_finite() {
            return Err(field_err("coords", format!("vertex {i}: angle {angle}")));
        }
        coords.push(PolarPoint::new(radius, angle));
    }

    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let off = read_u64_field(r, "offsets")?;
        let off = usize::try_from(off)
            .map_err(|_| field_err("offsets", format!("offset {off} overflows")))?;
        offsets.push(off);
    }
    if offsets[0] != 0 {
        return Err(field_err("offsets", "first offset must be 0"));
    }
    if offsets[n] != directed {
        return Err(field_err(
            "offsets",
            format!("last offset {} does not match 2m = {directed}", offsets[n]),
        ));
    }

    let mut neighbors = Vec::with_capacity(directed);
    for _ in 0..directed {
        let v = r
            .read_u32::<LittleEndian>()
            .map_err(|e| field_err("neighbors", format!("read failed: {e}")))?;
        neighbors.push(v);
    }

    HrgGraph::new(params, coords, offsets, neighbors)
        .map_err(|e| field_err("adjacency", e.to_string()))
}

pub fn read_graph_from_path<P: AsRef<Path>>(path: P) -> Result<HrgGraph> {
    let mut r = BufReader::new(File::open(path)?);
    read_graph(&mut r)
}

/// Plain-text interop exporter: one `u v` line per undirected edge with
/// `u < v`, 0-indexed, ordered by (u, v).
pub fn write_edge_list<W: Write>(graph: &HrgGraph, w: &mut W) -> Result<()> {
    for u in 0..graph.n() as u32 {
        for &v in graph.neighbors(u) {
            if u < v {
                writeln!(w, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn sample_graph() -> HrgGraph {
        let params = generate::params_for_average_degree(400, 0.7, 6.0, 9).unwrap();
        generate::generate_fast(&params).unwrap()
    }

    #[test]
    fn round_trip_is_lossless() {
        let g = sample_graph();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let h = read_graph(&mut buf.as_slice()).unwrap();
        assert_eq!(g.n(), h.n());
        assert_eq!(g.m(), h.m());
        assert_eq!(g.params(), h.params());
        assert_eq!(g.offsets(), h.offsets());
        assert_eq!(g.neighbor_array(), h.neighbor_array());
        for (a, b) in g.coords().iter().zip(h.coords()) {
            assert_eq!(a.radius().to_bits(), b.radius().to_bits());
            assert_eq!(a.angle().to_bits(), b.angle().to_bits());
        }
        h.validate_geometry().unwrap();
    }

    #[test]
    fn bad_magic_names_the_field() {
        let mut buf = Vec::new();
        write_graph(&sample_graph(), &mut buf).unwrap();
        buf[0] = b'X';
        match read_graph(&mut buf.as_slice()) {
            Err(HrgError::Format { field: "magic", .. }) => {}
            other => panic!("expected magic error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_reports_field() {
        let mut buf = Vec::new();
        write_graph(&sample_graph(), &mut buf).unwrap();
        buf.truncate(buf.len() - 3);
        match read_graph(&mut buf.as_slice()) {
            Err(HrgError::Format { field: "neighbors", .. }) => {}
            other => panic!("expected neighbors error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_alpha_rejected() {
        let mut buf = Vec::new();
        write_graph(&sample_graph(), &mut buf).unwrap();
        // alpha sits after magic (4) + n (8) + m (8)
        buf[20..28].copy_from_slice(&0.4f64.to_le_bytes());
        match read_graph(&mut buf.as_slice()) {
            Err(HrgError::Format { field: "alpha", .. }) => {}
            other => panic!("expected alpha error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_lines_match_edge_count() {
        let g = sample_graph();
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), g.m());
        for line in text.lines().take(5) {
            let mut it = line.split(' ');
            let u: u32 = it.next().unwrap().parse().unwrap();
            let v: u32 = it.next().unwrap().parse().unwrap();
            assert!(u < v);
            assert!(g.neighbors(u).binary_search(&v).is_ok());
        }
    }
}
