//! Triangulated fixed-s slices of a tube, written as OBJ plus a CSV of
//! per-vertex scalars.
//!
//! OBJ carries three coordinates, so vertices are the spatial part
//! (x₂, x₃, x₄). The full 4-vector, the parameters and the scalar channels
//! go to the CSV.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{angle_axis, linspace};
use crate::minkowski::{inner, Vec4};
use crate::tube::TubeSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshVertex {
    pub slice: usize,
    pub s: f64,
    pub t: f64,
    pub w: f64,
    pub position: Vec4,
    pub center: Vec4,
    /// ⟨P − β, P − β⟩ − ε r²
    pub foliation_residual: f64,
    pub kappa3: f64,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshData {
    pub vertices: Vec<MeshVertex>,
    /// Zero-based vertex indices, counter-clockwise in the (t, w) chart.
    pub faces: Vec<[usize; 3]>,
}

fn slice_positions(range: (f64, f64), slices: usize) -> Vec<f64> {
    if slices == 1 {
        vec![0.5 * (range.0 + range.1)]
    } else {
        linspace(range.0, range.1, slices)
    }
}

/// `slices` × `nt` × `nw` vertices and 2(nt−1)(nw−1) triangles per slice.
pub fn build_mesh(spec: &TubeSpec, slices: usize, nt: usize, nw: usize) -> Result<MeshData> {
    if slices == 0 || nt < 2 || nw < 2 {
        return Err(Error::Invalid("mesh needs at least one slice and a 2x2 (t, w) grid".into()));
    }
    let ts = angle_axis(spec.family, nt);
    let ws = angle_axis(spec.family, nw);
    let level = spec.family.normal_sign() * spec.r * spec.r;
    let mut vertices = Vec::with_capacity(slices * nt * nw);
    let mut faces = Vec::with_capacity(slices * 2 * (nt - 1) * (nw - 1));
    for (slice, s) in slice_positions(spec.curve.s_range(), slices).into_iter().enumerate() {
        let base = vertices.len();
        for &t in &ts {
            for &w in &ws {
                let (position, center) = spec.position_unchecked(s, t, w)?;
                let d = position - center;
                let regular = spec.is_regular(s, t, w);
                let kappa3 = if regular {
                    spec.principal_curvatures(s, t, w)?[2]
                } else {
                    f64::NAN
                };
                vertices.push(MeshVertex {
                    slice,
                    s,
                    t,
                    w,
                    position,
                    center,
                    foliation_residual: inner(&d, &d) - level,
                    kappa3,
                    regular,
                });
            }
        }
        let idx = |i: usize, j: usize| base + i * nw + j;
        for i in 0..nt - 1 {
            for j in 0..nw - 1 {
                faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
                faces.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
    }
    Ok(MeshData { vertices, faces })
}

pub fn write_obj<W: Write>(mut out: W, mesh: &MeshData, label: &str) -> std::io::Result<()> {
    writeln!(out, "# tubular-lk mesh {label}")?;
    writeln!(out, "# vertices {} faces {}", mesh.vertices.len(), mesh.faces.len())?;
    for v in &mesh.vertices {
        let p = v.position;
        writeln!(out, "v {:.16e} {:.16e} {:.16e}", p.x2(), p.x3(), p.x4())?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub const MESH_CSV_HEADER: [&str; 15] = [
    "slice", "s", "t", "w", "x1", "x2", "x3", "x4", "c1", "c2", "c3", "c4", "foliation_residual", "kappa3", "regular",
];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_mesh_csv<W: Write>(out: W, mesh: &MeshData) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
    w.write_record(MESH_CSV_HEADER).map_err(io)?;
    for v in &mesh.vertices {
        let mut rec = vec![v.slice.to_string(), num(v.s), num(v.t), num(v.w)];
        rec.extend(v.position.0.iter().map(|x| num(*x)));
        rec.extend(v.center.0.iter().map(|x| num(*x)));
        rec.push(num(v.foliation_residual));
        rec.push(num(v.kappa3));
        rec.push(u8::from(v.regular).to_string());
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
    Ok(())
}

/// Vertices and faces read back from OBJ text.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

/// Reads the `v` and triangular `f` records written by [`write_obj`];
/// comments and blank lines are skipped, anything else is an error.
pub fn read_obj(text: &str) -> Result<ObjMesh> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Invalid(format!("obj line {}: {what}", n + 1));
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let fields: Vec<&str> = parts.collect();
        if fields.len() != 3 {
            return Err(bad("expected three fields"));
        }
        match tag {
            "v" => {
                let mut p = [0.0; 3];
                for (slot, f) in p.iter_mut().zip(&fields) {
                    *slot = f.parse().map_err(|_| bad("bad coordinate"))?;
                }
                vertices.push(p);
            }
            "f" => {
                let mut face = [0usize; 3];
                for (slot, f) in face.iter_mut().zip(&fields) {
                    let i: usize = f.parse().map_err(|_| bad("bad vertex index"))?;
                    if i == 0 || i > vertices.len() {
                        return Err(bad("vertex index out of range"));
                    }
                    *slot = i - 1;
                }
                faces.push(face);
            }
            _ => return Err(bad("unknown record")),
        }
    }
    Ok(ObjMesh { vertices, faces })
}

/// One row of the mesh CSV.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct MeshCsvRow {
    pub slice: usize,
    pub s: f64,
    pub t: f64,
    pub w: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub foliation_residual: f64,
    pub kappa3: f64,
    pub regular: u8,
}

impl MeshCsvRow {
    pub fn position(&self) -> Vec4 {
        Vec4::new(self.x1, self.x2, self.x3, self.x4)
    }

    pub fn center(&self) -> Vec4 {
        Vec4::new(self.c1, self.c2, self.c3, self.c4)
    }
}

pub fn read_mesh_csv(text: &str) -> Result<Vec<MeshCsvRow>> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Invalid(format!("mesh csv: {e}")))?
        .clone();
    if headers.iter().ne(MESH_CSV_HEADER.iter().copied()) {
        return Err(Error::Invalid("mesh csv: unexpected header".into()));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(|e| Error::Invalid(format!("mesh csv: {e}"))))
        .collect()
}
