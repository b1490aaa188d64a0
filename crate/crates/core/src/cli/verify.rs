//! Check suites behind `verify`.

use num_traits::Zero;
use serde::Serialize;

use crate::betafun::{b4_gamma, b4_quadrature, b5_quadrature, product_factor, QuadratureSpec, C64};
use crate::contour::{build_phase_surface, phase_report};
use crate::crossratio::{affine_jacobian, counting, five_from_params, projective_residuals};
use crate::exactlin::{rank_exact, rat, MatRat};
use crate::meshout::{parse_obj, project, sample_surface, to_obj, veronese3, veronese6, SurfaceTarget, VeroneseVariant};
use crate::tessellation::complex::edge_key;
use crate::tessellation::symmetric::{gamma_transforms, p_factor, q_float, seam_mismatches};
use crate::tessellation::symmetry::{averaged_form, g120, g240, reference_q, x2};
use crate::tessellation::{build_complex, corner_vertices, euler_and_genus, face_param, face_table, vertex_table, Cover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub desc: String,
    pub status: Status,
    pub value: f64,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub const SUITES: [&str; 5] = ["group", "tessellation", "contour", "betafun", "mesh"];

struct Checks(Vec<Check>);

impl Checks {
    /// Passes when `value <= tol`.
    fn within(&mut self, id: &str, desc: &str, value: f64, tol: f64) {
        let ok = value <= tol;
        self.push(id, desc, ok, value, tol);
    }

    fn exact(&mut self, id: &str, desc: &str, got: i64, want: i64) {
        self.push(id, desc, got == want, got as f64, 0.0);
    }

    fn holds(&mut self, id: &str, desc: &str, ok: bool) {
        self.push(id, desc, ok, f64::from(u8::from(ok)), 0.0);
    }

    fn push(&mut self, id: &str, desc: &str, ok: bool, value: f64, tol: f64) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.0.push(Check { id: id.into(), desc: desc.into(), status, value, tol });
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn group(ch: &mut Checks) {
    ch.exact("group.order", "closure of {X5, X2} has 120 elements", g120().len() as i64, 120);
    ch.exact("group.order_with_neg", "adding -I gives 240 elements", g240().len() as i64, 240);
    let x = x2();
    ch.holds("group.x2_involution", "X2 squares to the identity", &x * &x == MatRat::identity(6));
    let avg = averaged_form();
    let q = reference_q();
    let diff = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| avg.get(i, j) != q.get(i, j)).count();
    ch.exact("group.q_reproduced", "(1/70) sum g^T g equals Q entrywise", diff as i64, 0);
    let bad = g120().iter().filter(|g| &(&g.transpose() * &q) * *g != q).count();
    ch.exact("group.q_invariant", "g^T Q g = Q for every element", bad as i64, 0);
    let p = p_factor();
    ch.within("group.p_residual", "max |P^T P - Q|", (p.transpose() * p - q_float()).abs().max(), 1e-12);
}

fn tessellation(ch: &mut Checks) {
    let single = build_complex(Cover::Single);
    let t = euler_and_genus(&single).expect("closed");
    ch.holds("tess.single_counts", "single cover (V,E,F) = (15,30,12)", single.counts() == (15, 30, 12));
    ch.exact("tess.single_chi", "single cover chi", t.chi, -3);
    ch.holds("tess.single_type", "single cover non-orientable with 5 crosscaps", !t.orientable && t.genus_or_crosscaps == 5);
    let double = build_complex(Cover::Double);
    let t = euler_and_genus(&double).expect("closed");
    ch.holds("tess.double_counts", "double cover (V,E,F) = (30,60,24)", double.counts() == (30, 60, 24));
    ch.exact("tess.double_chi", "double cover chi", t.chi, -6);
    ch.holds("tess.double_type", "double cover orientable of genus 4", t.orientable && t.genus_or_crosscaps == 4);
    let bad_deg = single.vertices.iter().filter(|&&v| single.vertex_degree(v) != 4).count();
    ch.exact("tess.degrees", "every single-cover vertex meets 4 faces", bad_deg as i64, 0);
    let adj_ok = (0..12).all(|a| (0..12).filter(|&b| b != a && !single.shared_edges(a, b).is_empty()).count() == 5);
    ch.holds("tess.adjacency", "every face borders 5 distinct faces", adj_ok);
    let vt = vertex_table();
    let on = vt.iter().filter(|v| projective_residuals(v).iter().all(Zero::is_zero)).count();
    ch.exact("tess.vertex_table", "all 15 vertices lie on the variety", on as i64, 15);
    let faces = face_table();
    let corners_ok = (1..=12).all(|i| {
        let c = corner_vertices(i);
        let f = &faces[i - 1];
        let fk: Vec<_> = (0..5).map(|k| edge_key(f[k], f[(k + 1) % 5])).collect();
        (0..5).all(|k| fk.contains(&edge_key(c[k], c[(k + 1) % 5])))
    });
    ch.holds("tess.corners", "face map corners trace the face table pentagons", corners_ok);
    let mut worst_res = 0usize;
    for i in 1..=12 {
        for a in 1..8 {
            for b in [1, 3, 5] {
                let p = face_param(i, &rat(a, 8), &rat(b, 6)).expect("in square");
                worst_res += projective_residuals(&p).iter().filter(|r| !r.is_zero()).count();
            }
        }
    }
    ch.exact("tess.variety", "face maps satisfy the five quadrics exactly", worst_res as i64, 0);
    let ranks_ok = [(1, 2, 1, 4), (1, 3, 2, 3), (2, 7, 5, 7)].iter().all(|&(a, b, c2, d)| {
        let u = five_from_params(&rat(a, b), &rat(c2, d)).expect("generic");
        rank_exact(&affine_jacobian(u.values())) == 3
    });
    ch.holds("tess.jacobian_rank", "constraint Jacobian has rank 3", ranks_ok);
    let table = [(4, 2, 3), (5, 5, 12), (6, 9, 60), (7, 14, 360), (8, 20, 2520), (9, 27, 20160), (10, 35, 181440)];
    let count_ok = table.iter().all(|&(n, d, k)| {
        let (dd, kk) = counting(n).expect("n >= 4");
        dd == d && kk == k.into()
    });
    ch.holds("tess.counting", "coordinate and component counts for N = 4..10", count_ok);
    let p = p_factor();
    let orth = gamma_transforms(p).iter().map(|g| (g.transpose() * g - crate::exactlin::MatFloat::identity()).abs().max()).fold(0.0, f64::max);
    ch.within("tess.gamma_orthogonal", "max |g^T g - I| over the 24 transforms", orth, 1e-10);
    let seam = seam_mismatches(33, p).iter().map(|s| s.max_mismatch).fold(0.0, f64::max);
    ch.within("tess.seams", "worst seam mismatch, 33 samples per edge", seam, 1e-9);
}

fn contour(ch: &mut Checks) {
    let r = phase_report(5).expect("k = 5");
    ch.holds("contour.counts", "k=5 surface has (V,E,F) = (40,80,32)", (r.vertices, r.edges, r.faces) == (40, 80, 32));
    ch.exact("contour.chi", "k=5 Euler characteristic", r.chi, -8);
    ch.holds("contour.genus", "k=5 surface orientable of genus 5", r.orientable && r.genus == Some(5));
    ch.holds("contour.connected", "k=5 surface connected", r.connected);
    ch.exact("contour.holes", "corner holes", r.holes as i64, 40);
    ch.holds("contour.holes_close", "every corner commutator closes", r.holes_closed);
    let mut m = build_phase_surface(5).expect("k = 5");
    m.swap_gluing((0, 0), (2, 0));
    ch.holds("contour.mutation", "a mutated gluing is detected", !m.all_holes_close());
    let l = phase_report(2).expect("k = 2");
    ch.holds("contour.loop", "k=2 loop has 4 segments and closes", l.edges == 4 && l.connected);
}

fn betafun(ch: &mut Checks) {
    let spec = QuadratureSpec::default();
    let grid = [0.3, 0.7, 1.0, 1.6, 2.5];
    let mut worst: f64 = 0.0;
    for &a in &grid {
        for &b in &grid {
            let al = [c(a), c(b)];
            let q = b4_quadrature(al, &spec).expect("convergent").value;
            let g = b4_gamma(al).expect("no pole");
            worst = worst.max((q - g).norm());
        }
    }
    ch.within("beta.b4_grid", "quadrature vs gamma ratio on a 5x5 grid", worst, 1e-8);
    let mut worst: f64 = 0.0;
    for al in [[c(-0.5), c(0.3)], [c(1.7), c(-2.4)], [C64::new(0.4, 1.0), c(2.3)]] {
        let v = crate::contour::pochhammer_b4(al, 0.25, 4000).expect("contour").value / product_factor(&al);
        worst = worst.max((v - b4_gamma(al).expect("no pole")).norm());
    }
    ch.within("beta.pochhammer", "Pochhammer contour / product factor vs gamma ratio", worst, 1e-7);
    let e = [[c(1.0), c(1.0)], [c(0.5), c(-0.5)]]
        .iter()
        .map(|&al| crate::contour::pochhammer_b4(al, 0.25, 4000).expect("contour").value.norm())
        .fold(0.0, f64::max);
    ch.within("beta.vanishing", "contour integral at (1,1) and (1/2,-1/2)", e, 1e-6);
    let b5 = |a: [f64; 5]| b5_quadrature(a.map(c), &spec).expect("convergent").value;
    let z = std::f64::consts::PI.powi(2) / 6.0;
    ch.within("beta.b5_zeta2", "B5(1,1,1,1,1) - pi^2/6", (b5([1.0; 5]) - z).norm(), 1e-8);
    ch.within("beta.b5_unit", "B5(2,1,1,1,1) - 1", (b5([2.0, 1.0, 1.0, 1.0, 1.0]) - 1.0).norm(), 1e-8);
    ch.within("beta.b5_unit_mid", "B5(1,1,2,1,1) - 1", (b5([1.0, 1.0, 2.0, 1.0, 1.0]) - 1.0).norm(), 1e-8);
    let oracle = [
        ([1.7, 1.3, 1.9, 1.6, 2.1], 0.162_020_368_433_623_39),
        ([0.5; 5], 13.750_371_636_040_745),
        ([0.3, 0.7, 1.1, 0.4, 2.5], 3.639_163_530_173_621_4),
    ];
    let worst = oracle.iter().map(|(a, v)| (b5(*a) - v).norm() / v).fold(0.0, f64::max);
    ch.within("beta.b5_oracle", "B5 vs hypergeometric closed form (relative)", worst, 1e-8);
    let mut worst: f64 = 0.0;
    for a in [[0.6, 1.3, 0.9, 1.8, 1.1], [1.5, 0.7, 1.2, 0.8, 1.9], [1.0, 1.4, 0.55, 1.25, 0.75]] {
        let s = [a[2], a[3], a[4], a[0], a[1]];
        worst = worst.max((b5(a) - b5(s)).norm());
    }
    ch.within("beta.b5_cyclic", "B5 invariant under a cyclic shift by two", worst, 1e-7);
}

/// Deterministic, well-spread unit vectors in `d` dimensions.
fn spread_unit(d: usize, k: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|j| ((k * (2 * j + 3) + j * j) as f64 * 0.754_877_666).sin()).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn mesh(ch: &mut Checks) {
    let mut worst: f64 = 0.0;
    for k in 1..=200 {
        let r = spread_unit(6, k);
        let r6: [f64; 6] = r.clone().try_into().expect("6 entries");
        for var in [VeroneseVariant::R21, VeroneseVariant::R18] {
            let w = veronese6(r6, var).expect("unit");
            let wm = veronese6(r6.map(|x| -x), var).expect("unit");
            let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            worst = worst.max((n - 1.0).abs()).max(w.iter().zip(&wm).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        }
        let x = spread_unit(3, k);
        let w = veronese3([x[0], x[1], x[2]]).expect("unit");
        worst = worst.max((w.iter().map(|t| t * t).sum::<f64>().sqrt() - 1.0).abs());
    }
    ch.within("mesh.veronese", "quadratic maps send unit vectors to unit vectors, evenly", worst, 1e-12);
    let m = sample_surface(SurfaceTarget::Symmetric, 9).expect("n >= 2");
    let worst = m.vertices.iter().map(|v| (v.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs()).fold(0.0, f64::max);
    ch.within("mesh.symmetric_unit", "symmetric samples lie on S^5", worst, 1e-12);
    ch.exact("mesh.patches", "symmetric mesh has 24 tagged patches", m.tags().len() as i64, 24);
    let proj = project(&m, [1, 2, 3]).expect("axes");
    let back = to_obj(&proj).and_then(|s| parse_obj(&s));
    ch.holds("mesh.obj_round_trip", "OBJ output parses back to the same faces", back.is_ok_and(|b| b.faces == proj.faces && b.face_tags == proj.face_tags));
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str) -> Option<VerifyReport> {
    let mut ch = Checks(Vec::new());
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![*SUITES.iter().find(|&&s| s == name)?] };
    for s in names {
        match s {
            "group" => group(&mut ch),
            "tessellation" => tessellation(&mut ch),
            "contour" => contour(&mut ch),
            "betafun" => betafun(&mut ch),
            _ => mesh(&mut ch),
        }
    }
    let pass = ch.0.iter().all(|c| c.status == Status::Pass);
    Some(VerifyReport { suite: name.into(), checks: ch.0, pass })
}
