//! End-to-end checks that cross module boundaries.

use dualfive::betafun::{b4_gamma, b5_quadrature, epsilon5, primed_exponents, QuadratureSpec, C64};
use dualfive::contour::{edge_phase_exponents, phase_report};
use dualfive::exactlin::rat;
use dualfive::meshout::{parse_obj, project, sample_surface, to_obj, veronese6, SurfaceTarget, VeroneseVariant};
use dualfive::tessellation::faceparam::{face_map, signed_vertex};
use dualfive::tessellation::symmetric::{embedded_vertex, p_factor, symmetric_embedding, Sign};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn face_maps_agree_in_exact_and_float() {
    for i in 1..=12 {
        let fm = face_map(i);
        for (a, b) in [(1, 3), (2, 5), (7, 9)] {
            for d in [2, 7] {
                let (u, v) = (rat(a, b), rat(1, d));
                let exact: Vec<f64> = fm.eval(&u, &v).unwrap().iter().map(dualfive::exactlin::rat_to_f64).collect();
                let float = fm.eval_f64(a as f64 / b as f64, 1.0 / d as f64);
                for k in 0..6 {
                    assert!((exact[k] - float[k]).abs() <= 1e-12 * (1.0 + exact[k].abs()));
                }
            }
        }
    }
}

#[test]
fn embedded_corners_are_embedded_vertices() {
    let p = p_factor();
    let params = [(0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)];
    for i in 1..=12 {
        for (k, &(u, v)) in params.iter().enumerate() {
            let z = symmetric_embedding(i, Sign::Plus, u, v, p).unwrap();
            let id = face_map(i).corners[k];
            assert!((z - embedded_vertex(id, p)).norm() < 1e-12, "face {i} corner {k}");
        }
    }
}

#[test]
fn veronese_of_antipodal_patches_coincide() {
    let p = p_factor();
    for i in 1..=12 {
        let a = symmetric_embedding(i, Sign::Plus, 0.3, 0.6, p).unwrap();
        let b = symmetric_embedding(i, Sign::Minus, 0.3, 0.6, p).unwrap();
        let to = |z: nalgebra::Vector6<f64>| veronese6([z[0], z[1], z[2], z[3], z[4], z[5]], VeroneseVariant::R21).unwrap();
        assert_eq!(to(a), to(b));
    }
}

#[test]
fn mesh_round_trip_through_text() {
    let m = project(&sample_surface(SurfaceTarget::Single, 6).unwrap(), [1, 2, 16]).unwrap();
    let back = parse_obj(&to_obj(&m).unwrap()).unwrap();
    assert_eq!(back.faces, m.faces);
    assert_eq!(back.tags(), (1..=12).collect::<Vec<_>>());
}

#[test]
fn edge_exponents_cover_all_five() {
    let mut e: Vec<usize> = edge_phase_exponents().iter().map(|x| x.exponent).collect();
    e.sort();
    assert_eq!(e, [1, 2, 3, 4, 5]);
    for x in edge_phase_exponents() {
        let (a, b) = x.vertices;
        assert!(signed_vertex(a) != signed_vertex(b));
    }
}

#[test]
fn phase_surfaces_grow_as_expected() {
    let chis: Vec<i64> = (3..=7).map(|k| phase_report(k).unwrap().chi).collect();
    assert_eq!(chis, [2, 0, -8, -32, -96]);
}

#[test]
fn b5_factorizes_when_a4_is_a3_plus_a5() {
    // B5 = B(a1,a3) B(a2,a5) 3F2(a3+a5-a4, a1, a2; a1+a3, a2+a5; 1), and the
    // series is 1 once an upper parameter vanishes
    let spec = QuadratureSpec::default();
    for [a1, a2, a3, a5] in [[0.7, 1.1, 1.3, 0.6], [2.0, 0.5, 0.6, 1.5]] {
        let b = b5_quadrature([c(a1), c(a2), c(a3), c(a3 + a5), c(a5)], &spec).unwrap().value;
        let want = b4_gamma([c(a1), c(a3)]).unwrap() * b4_gamma([c(a2), c(a5)]).unwrap();
        assert!((b - want).norm() < 1e-9, "{b} vs {want}");
    }
}

#[test]
fn epsilon_vanishes_at_integer_exponent() {
    let spec = QuadratureSpec::default();
    let e = epsilon5([c(1.0), c(0.7), c(1.2), c(0.9), c(1.4)], &spec).unwrap();
    assert!(e.norm() < 1e-10);
    let p = primed_exponents([c(1.0); 5]);
    assert!(p.iter().all(|x| (x - c(0.0)).norm() < 1e-15));
}
