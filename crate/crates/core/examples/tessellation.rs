//! The twelve pentagons, their double cover and the exact face maps.

use dualfive::exactlin::rat;
use dualfive::tessellation::{build_complex, corner_vertices, euler_and_genus, face_param, Cover};

fn main() -> anyhow::Result<()> {
    for cover in [Cover::Single, Cover::Double] {
        let c = build_complex(cover);
        let t = euler_and_genus(&c)?;
        let (v, e, f) = c.counts();
        let kind = if t.orientable { "genus" } else { "crosscaps" };
        println!("{cover:?}: V={v} E={e} F={f} chi={} {kind}={}", t.chi, t.genus_or_crosscaps);
    }

    println!("\nface corners (corner order (1/2,0), (1,0), (1,1), (0,1), (0,0)):");
    for i in 1..=12 {
        println!("  f{i:<2} -> {:?}", corner_vertices(i));
    }

    let z = face_param(7, &rat(1, 3), &rat(2, 5))?;
    println!("\nf7(1/3, 2/5) = {:?}", z.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(())
}
