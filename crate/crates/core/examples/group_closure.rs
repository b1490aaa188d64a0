//! Closes {X5, X2} over the rationals, averages gᵗg into the invariant form
//! and factors it.

use dualfive::exactlin::{factor_form, group_closure, invariant_form, rat};
use dualfive::tessellation::symmetry::{neg_identity, reference_q, x2, x5};

fn main() -> anyhow::Result<()> {
    let g = group_closure(&[x5(), x2()], 1000)?;
    let gg = group_closure(&[x5(), x2(), neg_identity()], 1000)?;
    println!("|G| = {}, |G with -I| = {}", g.len(), gg.len());

    let q = invariant_form(g.iter(), &rat(1, 70));
    println!("Q = (1/70) sum g^T g:");
    for i in 0..6 {
        let row: Vec<String> = q.row(i).iter().map(|x| format!("{x:>3}")).collect();
        println!("  [{}]", row.join(" "));
    }
    assert_eq!(q, reference_q());

    let p = factor_form(&q)?;
    println!("upper factor P (P^T P = Q):{p:.6}");
    Ok(())
}
