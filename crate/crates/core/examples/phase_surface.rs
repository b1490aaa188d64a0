//! Glues 2^k copies of a k-gon by phase label and reads off the surface.

use dualfive::contour::{build_phase_surface, phase_loop, phase_report};

fn main() -> anyhow::Result<()> {
    let l = phase_loop();
    let sheets: Vec<String> = l.segments.iter().map(|p| p.to_string()).collect();
    println!("k=2: loop through sheets {}", sheets.join(" -> "));

    for k in 3..=6 {
        let r = phase_report(k)?;
        println!("k={k}: V={} E={} F={} chi={} genus={:?} holes={}", r.vertices, r.edges, r.faces, r.chi, r.genus, r.holes);
    }

    let mut s = build_phase_surface(5)?;
    println!("k=5 corner commutators close: {}", s.all_holes_close());
    s.swap_gluing((0, 0), (2, 0));
    println!("after swapping two gluings:   {}", s.all_holes_close());
    Ok(())
}
