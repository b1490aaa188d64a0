//! Quadratic (Veronese-type) maps, the B4 component hexagon, sampled surface
//! meshes, axis projections and OBJ/PLY output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::MatFloat;
use crate::tessellation::symmetric::{lift_double, p_factor, Patch, Sign};

const UNIT_TOL: f64 = 1e-12;

fn check_unit(x: &[f64]) -> Result<()> {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (n - 1.0).abs() > UNIT_TOL || !n.is_finite() {
        return Err(Error::NotUnit(n));
    }
    Ok(())
}

/// `√2 x_i x_j` for `i < j` in lexicographic order, then `x_i²`.
fn pairs_then_squares(x: &[f64]) -> Vec<f64> {
    let c = std::f64::consts::SQRT_2;
    let n = x.len();
    let mut w = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            w.push(c * x[i] * x[j]);
        }
    }
    w.extend(x.iter().map(|v| v * v));
    w
}

/// The Veronese map `S² → S⁵`:
/// `(√2x₀x₁, √2x₀x₂, √2x₁x₂, x₀², x₁², x₂²)`.
pub fn veronese3(x: [f64; 3]) -> Result<[f64; 6]> {
    check_unit(&x)?;
    let w = pairs_then_squares(&x);
    Ok([w[0], w[1], w[2], w[3], w[4], w[5]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeroneseVariant {
    /// 15 products `√2 r_i r_j` and 6 squares.
    R21,
    /// Products with coefficient 2 on the pairs (0,1), (2,3), (4,5), and the
    /// three differences of squares in those pairs.
    R18,
}

/// Quadratic map `S⁵ → S²⁰` or `S⁵ → S¹⁷` identifying antipodes.
pub fn veronese6(r: [f64; 6], variant: VeroneseVariant) -> Result<Vec<f64>> {
    check_unit(&r)?;
    Ok(match variant {
        VeroneseVariant::R21 => pairs_then_squares(&r),
        VeroneseVariant::R18 => {
            let s = std::f64::consts::SQRT_2;
            let mut w = Vec::with_capacity(18);
            for i in 0..6 {
                for j in i + 1..6 {
                    let c = if j == i + 1 && i % 2 == 0 { 2.0 } else { s };
                    w.push(c * r[i] * r[j]);
                }
            }
            for i in [0, 2, 4] {
                w.push(r[i] * r[i] - r[i + 1] * r[i + 1]);
            }
            w
        }
    })
}

/// One of the three B4 component segments in homogeneous RP² coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B4Segment {
    /// `[1, t, 1−t]`, the interval (0,1).
    A,
    /// `[1−t, 1, −t]`, the interval (1,∞).
    B,
    /// `[−t, 1−t, −1]`, the interval (−∞,0).
    C,
}

impl B4Segment {
    pub fn at(self, t: f64) -> [f64; 3] {
        match self {
            B4Segment::A => [1.0, t, 1.0 - t],
            B4Segment::B => [1.0 - t, 1.0, -t],
            B4Segment::C => [-t, 1.0 - t, -1.0],
        }
    }
}

#[derive(Clone, Debug)]
pub struct B4Components {
    pub segments: [B4Segment; 3],
    /// `p₁, p₂, p₃, −p₁, −p₂, −p₃`: the hexagon corners in cyclic order.
    pub endpoints: [[i64; 3]; 6],
}

pub fn b4_components() -> B4Components {
    let p = [[1, 0, 1], [1, 1, 0], [0, 1, -1]];
    let neg = |v: [i64; 3]| v.map(|x| -x);
    B4Components {
        segments: [B4Segment::A, B4Segment::B, B4Segment::C],
        endpoints: [p[0], p[1], p[2], neg(p[0]), neg(p[1]), neg(p[2])],
    }
}

impl B4Components {
    /// Side `k` of the closed hexagon (`0..6`): `A, B, C, −A, −B, −C`, running
    /// from `endpoints[k]` to `endpoints[k + 1]`.
    pub fn hexagon_side(&self, k: usize, t: f64) -> [f64; 3] {
        let x = self.segments[k % 3].at(t);
        if k % 6 < 3 {
            x
        } else {
            x.map(|v| -v)
        }
    }
}

fn normalize3(x: [f64; 3]) -> [f64; 3] {
    let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    x.map(|v| v / n)
}

/// A polygon mesh in `dim` dimensions with per-face tags and optional
/// polylines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MeshBuffer {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    /// 0-based vertex indices.
    pub faces: Vec<Vec<usize>>,
    pub face_tags: Vec<usize>,
    pub polylines: Vec<Vec<usize>>,
    pub polyline_tags: Vec<usize>,
}

impl MeshBuffer {
    pub fn new(dim: usize) -> Self {
        MeshBuffer { dim, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        if self.vertices.iter().any(|v| v.len() != self.dim || v.iter().any(|x| !x.is_finite())) {
            return Err(Error::OutOfDomain("vertex with wrong dimension or non-finite coordinate".into()));
        }
        let idx_ok = self.faces.iter().chain(&self.polylines).all(|f| f.iter().all(|&i| i < nv));
        if !idx_ok || self.faces.len() != self.face_tags.len() || self.polylines.len() != self.polyline_tags.len() {
            return Err(Error::OutOfDomain("face index out of range or tag count mismatch".into()));
        }
        Ok(())
    }

    /// Appends another mesh of the same dimension.
    pub fn append(&mut self, other: MeshBuffer) {
        assert_eq!(self.dim, other.dim);
        let off = self.vertices.len();
        self.vertices.extend(other.vertices);
        self.faces.extend(other.faces.into_iter().map(|f| f.into_iter().map(|i| i + off).collect()));
        self.face_tags.extend(other.face_tags);
        self.polylines.extend(other.polylines.into_iter().map(|f| f.into_iter().map(|i| i + off).collect()));
        self.polyline_tags.extend(other.polyline_tags);
    }

    /// Distinct face tags in first-seen order.
    pub fn tags(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &t in &self.face_tags {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }
}

/// An `n × n` grid over the unit square with `(n−1)²` quads, all tagged.
fn grid_patch(n: usize, tag: usize, f: impl Fn(f64, f64) -> Result<Vec<f64>>) -> Result<MeshBuffer> {
    let h = 1.0 / (n - 1) as f64;
    let mut vertices = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            vertices.push(f(i as f64 * h, j as f64 * h)?);
        }
    }
    let dim = vertices[0].len();
    let mut faces = Vec::with_capacity((n - 1) * (n - 1));
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let a = j * n + i;
            faces.push(vec![a, a + 1, a + n + 1, a + n]);
        }
    }
    let face_tags = vec![tag; faces.len()];
    Ok(MeshBuffer { dim, vertices, faces, face_tags, ..Default::default() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceTarget {
    /// The 12 patches of the five-crosscap surface through the 21-dim map.
    Single,
    /// The 24 lifted patches `±f_i/√(fᵗQf)` on the quadric in R⁶.
    Double,
    /// The 24 patches on the round sphere S⁵.
    Symmetric,
    /// All 24 patches through the 21-dim map; the two sheets coincide.
    Veronese21,
    /// All 24 patches through the 18-dim map.
    Veronese18,
    /// The B4 hexagon on S² and the Veronese image of the sphere, in R⁶.
    B4,
}

impl std::str::FromStr for SurfaceTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "single" => SurfaceTarget::Single,
            "double" => SurfaceTarget::Double,
            "symmetric" => SurfaceTarget::Symmetric,
            "veronese21" => SurfaceTarget::Veronese21,
            "veronese18" => SurfaceTarget::Veronese18,
            "b4" => SurfaceTarget::B4,
            _ => return Err(Error::OutOfDomain(format!("unknown surface target '{s}'"))),
        })
    }
}

fn patch_meshes(faces: &[usize], n: usize, f: impl Fn(Patch, f64, f64, &MatFloat) -> Result<Vec<f64>> + Sync) -> Result<MeshBuffer> {
    let p = p_factor();
    let parts: Vec<MeshBuffer> = faces
        .par_iter()
        .map(|&face| {
            let patch = Patch::from_face(face);
            grid_patch(n, face, |u, v| f(patch, u, v, p))
        })
        .collect::<Result<_>>()?;
    let mut out = MeshBuffer::new(parts[0].dim);
    for part in parts {
        out.append(part);
    }
    Ok(out)
}

fn sphere_point(patch: Patch, u: f64, v: f64, p: &MatFloat) -> Result<[f64; 6]> {
    let z = p * lift_double(patch.region, patch.sign, u, v)?;
    let n = z.norm();
    Ok([z[0], z[1], z[2], z[3], z[4], z[5]].map(|x| x / n))
}

/// Samples an `n × n` grid on every patch of `target` (faces are the unit
/// square parameterization, so pentagon corner `(1/2, 0)` sits mid-edge).
pub fn sample_surface(target: SurfaceTarget, n: usize) -> Result<MeshBuffer> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!("resolution n={n} must be at least 2")));
    }
    let all: Vec<usize> = (1..=24).collect();
    let single: Vec<usize> = (1..=12).collect();
    match target {
        SurfaceTarget::Double => patch_meshes(&all, n, |pt, u, v, _| Ok(lift_double(pt.region, pt.sign, u, v)?.iter().copied().collect())),
        SurfaceTarget::Symmetric => patch_meshes(&all, n, |pt, u, v, p| Ok(sphere_point(pt, u, v, p)?.to_vec())),
        SurfaceTarget::Single | SurfaceTarget::Veronese21 | SurfaceTarget::Veronese18 => {
            let (faces, variant) = match target {
                SurfaceTarget::Single => (&single, VeroneseVariant::R21),
                SurfaceTarget::Veronese21 => (&all, VeroneseVariant::R21),
                _ => (&all, VeroneseVariant::R18),
            };
            patch_meshes(faces, n, |pt, u, v, p| veronese6(sphere_point(pt, u, v, p)?, variant))
        }
        SurfaceTarget::B4 => b4_mesh(n),
    }
}

/// The Veronese image of a latitude/longitude grid on S² (tag 0) plus the six
/// hexagon sides as polylines (tags 1..=6), `n` samples per side.
pub fn b4_mesh(n: usize) -> Result<MeshBuffer> {
    use std::f64::consts::PI;
    let mut out = MeshBuffer::new(6);
    let (nt, np) = (n, 2 * n);
    for a in 0..=nt {
        let theta = PI * a as f64 / nt as f64;
        for b in 0..np {
            let phi = 2.0 * PI * b as f64 / np as f64;
            let x = normalize3([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
            out.vertices.push(veronese3(x)?.to_vec());
        }
    }
    for a in 0..nt {
        for b in 0..np {
            let i = a * np + b;
            let j = a * np + (b + 1) % np;
            out.faces.push(vec![i, j, j + np, i + np]);
            out.face_tags.push(0);
        }
    }
    let hex = b4_components();
    for k in 0..6 {
        let start = out.vertices.len();
        for s in 0..n {
            let t = s as f64 / (n - 1).max(1) as f64;
            out.vertices.push(veronese3(normalize3(hex.hexagon_side(k, t)))?.to_vec());
        }
        out.polylines.push((start..start + n).collect());
        out.polyline_tags.push(k + 1);
    }
    Ok(out)
}

/// Keeps the coordinates at the three 1-based `axes`.
pub fn project(mesh: &MeshBuffer, axes: [usize; 3]) -> Result<MeshBuffer> {
    let [a, b, c] = axes;
    if a == b || b == c || a == c || axes.iter().any(|&x| x == 0 || x > mesh.dim) {
        return Err(Error::BadAxes(format!("{axes:?} must be distinct and within 1..={}", mesh.dim)));
    }
    Ok(MeshBuffer {
        dim: 3,
        vertices: mesh.vertices.iter().map(|v| axes.iter().map(|&k| v[k - 1]).collect()).collect(),
        ..mesh.clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl std::str::FromStr for MeshFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            _ => Err(Error::OutOfDomain(format!("unknown mesh format '{s}'"))),
        }
    }
}

/// Nine significant digits, shortest decimal form.
fn fmt9(x: f64) -> String {
    let r: f64 = format!("{x:.8e}").parse().expect("float round trip");
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

pub fn to_obj(mesh: &MeshBuffer) -> Result<String> {
    check_3d(mesh)?;
    let mut s = String::new();
    for v in &mesh.vertices {
        writeln!(s, "v {} {} {}", fmt9(v[0]), fmt9(v[1]), fmt9(v[2])).unwrap();
    }
    let mut current = None;
    for (f, &tag) in mesh.faces.iter().zip(&mesh.face_tags) {
        if current != Some(tag) {
            writeln!(s, "g face_{tag:02}").unwrap();
            current = Some(tag);
        }
        let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(s, "f {}", idx.join(" ")).unwrap();
    }
    for (l, &tag) in mesh.polylines.iter().zip(&mesh.polyline_tags) {
        writeln!(s, "g curve_{tag:02}").unwrap();
        let idx: Vec<String> = l.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(s, "l {}", idx.join(" ")).unwrap();
    }
    Ok(s)
}

pub fn to_ply(mesh: &MeshBuffer) -> Result<String> {
    check_3d(mesh)?;
    let nedges: usize = mesh.polylines.iter().map(|l| l.len().saturating_sub(1)).sum();
    let mut s = String::from("ply\nformat ascii 1.0\n");
    writeln!(s, "element vertex {}", mesh.vertices.len()).unwrap();
    s.push_str("property double x\nproperty double y\nproperty double z\n");
    writeln!(s, "element face {}", mesh.faces.len()).unwrap();
    s.push_str("property list uchar int vertex_indices\nproperty int face_id\n");
    if nedges > 0 {
        writeln!(s, "element edge {nedges}").unwrap();
        s.push_str("property int vertex1\nproperty int vertex2\nproperty int curve_id\n");
    }
    s.push_str("end_header\n");
    for v in &mesh.vertices {
        writeln!(s, "{} {} {}", fmt9(v[0]), fmt9(v[1]), fmt9(v[2])).unwrap();
    }
    for (f, tag) in mesh.faces.iter().zip(&mesh.face_tags) {
        let idx: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        writeln!(s, "{} {} {tag}", f.len(), idx.join(" ")).unwrap();
    }
    for (l, tag) in mesh.polylines.iter().zip(&mesh.polyline_tags) {
        for w in l.windows(2) {
            writeln!(s, "{} {} {tag}", w[0], w[1]).unwrap();
        }
    }
    Ok(s)
}

fn check_3d(mesh: &MeshBuffer) -> Result<()> {
    if mesh.dim != 3 {
        return Err(Error::BadAxes(format!("mesh is {}-dimensional; project to 3 axes first", mesh.dim)));
    }
    mesh.validate()
}

pub fn write_mesh(mesh: &MeshBuffer, format: MeshFormat, path: &Path) -> Result<()> {
    let text = match format {
        MeshFormat::Obj => to_obj(mesh)?,
        MeshFormat::Ply => to_ply(mesh)?,
    };
    fs::write(path, text)?;
    Ok(())
}

/// Reads back the subset of OBJ written by [`to_obj`]. Face tags come from
/// `g face_NN` / `g curve_NN` lines.
pub fn parse_obj(text: &str) -> Result<MeshBuffer> {
    let bad = |line: &str| Error::OutOfDomain(format!("unparsable OBJ line '{line}'"));
    let mut mesh = MeshBuffer::new(3);
    let mut tag = 0;
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let v: Vec<f64> = it.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad(line))?;
                if v.len() != 3 {
                    return Err(bad(line));
                }
                mesh.vertices.push(v);
            }
            Some("g") => {
                let name = it.next().ok_or_else(|| bad(line))?;
                let num = name.rsplit('_').next().ok_or_else(|| bad(line))?;
                tag = num.parse().map_err(|_| bad(line))?;
            }
            Some(kind @ ("f" | "l")) => {
                let idx: Vec<usize> = it
                    .map(|t| t.split('/').next().unwrap_or("").parse::<usize>().map(|i| i - 1))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                if kind == "f" {
                    mesh.faces.push(idx);
                    mesh.face_tags.push(tag);
                } else {
                    mesh.polylines.push(idx);
                    mesh.polyline_tags.push(tag);
                }
            }
            _ => {}
        }
    }
    mesh.validate()?;
    Ok(mesh)
}

/// Signs of both lifts of a patch, used to pair a face with its antipode.
pub fn antipodal_face(face: usize) -> usize {
    let p = Patch::from_face(face);
    match p.sign {
        Sign::Plus => Sign::Minus.face_id(p.region),
        Sign::Minus => Sign::Plus.face_id(p.region),
    }
}
