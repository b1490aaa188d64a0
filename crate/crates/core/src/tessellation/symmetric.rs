//! Lifts of the face maps to the unit quadric `zᵗQz = 1` in R⁶, the factor
//! `P` that makes it the round sphere, the γ transforms and seam checks.

use std::sync::OnceLock;

use nalgebra::Vector6;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{factor_form, MatFloat, MatRat};
use crate::tessellation::complex::edge_key;
use crate::tessellation::faceparam::{corner_vertices, face_map, face_table, signed_vertex};
use crate::tessellation::symmetry::{conjugands, reference_q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Face id in the 24-face table: `i` for `+`, `12 + i` for `−`.
    pub fn face_id(self, region: usize) -> usize {
        match self {
            Sign::Plus => region,
            Sign::Minus => 12 + region,
        }
    }
}

/// `Q` in double precision.
pub fn q_float() -> MatFloat {
    reference_q().to_f64()
}

/// The upper-triangular factor of `Q` (cached).
pub fn p_factor() -> &'static MatFloat {
    static P: OnceLock<MatFloat> = OnceLock::new();
    P.get_or_init(|| factor_form(&reference_q()).expect("Q is positive definite"))
}

fn check_square(u: f64, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfDomain(format!("(u,v)=({u},{v}) outside the unit square")));
    }
    Ok(())
}

/// `±f_i / √(f_iᵗ Q f_i)`.
pub fn lift_double(i: usize, sign: Sign, u: f64, v: f64) -> Result<Vector6<f64>> {
    if !(1..=12).contains(&i) {
        return Err(Error::OutOfDomain(format!("region id {i} not in 1..=12")));
    }
    check_square(u, v)?;
    let f = face_map(i).eval_f64(u, v);
    let n2 = (f.transpose() * q_float() * f)[(0, 0)];
    if n2 <= 0.0 {
        return Err(Error::OutOfDomain(format!("non-positive norm fᵗQf={n2} on region {i}")));
    }
    Ok(f * (sign.value() / n2.sqrt()))
}

/// `F^±_i(u, v) = P · lift_double(i, ±, u, v)`, a point of S⁵.
pub fn symmetric_embedding(i: usize, sign: Sign, u: f64, v: f64, p: &MatFloat) -> Result<Vector6<f64>> {
    Ok(p * lift_double(i, sign, u, v)?)
}

/// `γ^±_i = ±P g_i P⁻¹` for the twelve conjugands; `γ^+_i` at index
/// `i − 1`, `γ^−_i` at `12 + i − 1`.
pub fn gamma_transforms(p: &MatFloat) -> Vec<MatFloat> {
    let pinv = p.try_inverse().expect("P is invertible");
    let plus: Vec<MatFloat> = conjugands().iter().map(|g| p * g.to_f64() * pinv).collect();
    let minus: Vec<MatFloat> = plus.iter().map(|g| -g).collect();
    plus.into_iter().chain(minus).collect()
}

/// The exact matrices behind [`gamma_transforms`], same order.
pub fn gamma_integer_matrices() -> Vec<MatRat> {
    let plus = conjugands();
    let minus: Vec<MatRat> = plus.iter().map(MatRat::neg).collect();
    plus.into_iter().chain(minus).collect()
}

/// `P v / √(vᵗQv)` for a signed vertex id.
pub fn embedded_vertex(id: i64, p: &MatFloat) -> Vector6<f64> {
    let v = Vector6::from_iterator(signed_vertex(id).iter().map(|&x| x as f64));
    let n2 = (v.transpose() * q_float() * v)[(0, 0)];
    p * v / n2.sqrt()
}

/// `(u, v)` along pentagon edge `k` (from corner `k` to corner `k + 1`),
/// `τ ∈ [0, 1]`.
pub fn edge_point(k: usize, tau: f64) -> (f64, f64) {
    match k % 5 {
        0 => (0.5 + 0.5 * tau, 0.0),
        1 => (1.0, tau),
        2 => (1.0 - tau, 1.0),
        3 => (0.0, 1.0 - tau),
        _ => (0.5 * tau, 0.0),
    }
}

/// A patch of the double cover: face id (1..=24), its region and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Patch {
    pub face: usize,
    pub region: usize,
    pub sign: Sign,
}

impl Patch {
    pub fn from_face(face: usize) -> Patch {
        assert!((1..=24).contains(&face));
        if face <= 12 {
            Patch { face, region: face, sign: Sign::Plus }
        } else {
            Patch { face, region: face - 12, sign: Sign::Minus }
        }
    }

    /// Signed vertex ids at the corners of this patch.
    pub fn corners(&self) -> [i64; 5] {
        let c = corner_vertices(self.region);
        match self.sign {
            Sign::Plus => c,
            Sign::Minus => c.map(|x| -x),
        }
    }

    pub fn eval(&self, u: f64, v: f64, p: &MatFloat) -> Vector6<f64> {
        symmetric_embedding(self.region, self.sign, u, v, p).expect("inside the square")
    }
}

/// Golden-section minimum of a unimodal function on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// One glued edge of the double cover and how far apart the two patches'
/// boundary curves are along it.
#[derive(Clone, Debug)]
pub struct SeamReport {
    pub edge: (i64, i64),
    pub faces: (usize, usize),
    pub max_mismatch: f64,
}

/// For every edge of the 24-face cover, samples `n` points on one patch's
/// boundary curve and measures the distance to the partner patch's curve.
/// The patches run along a shared edge at different speeds, so each sample
/// is matched by a 1-D minimization over the partner's edge parameter.
pub fn seam_mismatches(n: usize, p: &MatFloat) -> Vec<SeamReport> {
    let faces = face_table();
    let mut jobs = Vec::new();
    for fa in 1..=24 {
        let pa = Patch::from_face(fa);
        let ca = pa.corners();
        for k in 0..5 {
            let key = edge_key(ca[k], ca[(k + 1) % 5]);
            for fb in (fa + 1)..=24 {
                let pb = Patch::from_face(fb);
                let cb = pb.corners();
                if let Some(kb) = (0..5).find(|&m| edge_key(cb[m], cb[(m + 1) % 5]) == key) {
                    jobs.push((key, pa, k, pb, kb));
                }
            }
        }
    }
    debug_assert_eq!(jobs.len(), faces.len() * 5 / 2);
    jobs.par_iter()
        .map(|&(edge, pa, ka, pb, kb)| {
            let mut worst: f64 = 0.0;
            for s in 0..n {
                let tau = s as f64 / (n - 1) as f64;
                let (u, v) = edge_point(ka, tau);
                let x = pa.eval(u, v, p);
                let dist = |t: f64| {
                    let (ub, vb) = edge_point(kb, t);
                    (pb.eval(ub, vb, p) - x).norm()
                };
                let (_, d) = golden_min(dist, 0.0, 1.0, 1e-14);
                // guard the bracket ends, where golden section never lands
                worst = worst.max(d.min(dist(0.0)).min(dist(1.0)));
            }
            SeamReport { edge, faces: (pa.face, pb.face), max_mismatch: worst }
        })
        .collect()
}
