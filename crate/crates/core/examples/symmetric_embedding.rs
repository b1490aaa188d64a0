//! Lifts the pentagons to the round five-sphere and checks that the 24
//! patches meet along their edges.

use dualfive::tessellation::symmetric::{gamma_transforms, p_factor, seam_mismatches, symmetric_embedding, Sign};

fn main() -> anyhow::Result<()> {
    let p = p_factor();
    let z = symmetric_embedding(1, Sign::Plus, 0.25, 0.5, p)?;
    println!("F1+(1/4, 1/2) = {:.6}  |z| = {:.15}", z.transpose(), z.norm());

    // γ_i carries patch 1 onto patch i
    let g = gamma_transforms(p);
    let w = symmetric_embedding(1, Sign::Plus, 0.0, 0.0, p)?;
    println!("gamma_5 * F1+(0,0) = {:.6}", (g[4] * w).transpose());

    let seams = seam_mismatches(33, p);
    let worst = seams.iter().max_by(|a, b| a.max_mismatch.total_cmp(&b.max_mismatch)).expect("60 edges");
    println!("{} glued edges, worst mismatch {:.2e} on edge {:?} between faces {:?}", seams.len(), worst.max_mismatch, worst.edge, worst.faces);
    Ok(())
}
