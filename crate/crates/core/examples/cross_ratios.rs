//! Cross-ratio coordinates of N points on the projective line and the
//! constraints they satisfy.

use dualfive::crossratio::{constraint_residuals, counting, five_from_params, n_point_cross_ratios, ExtReal};
use dualfive::exactlin::rat;

fn main() -> anyhow::Result<()> {
    // five points, one of them at infinity
    let pts = [ExtReal::int(0), ExtReal::Finite(rat(1, 3)), ExtReal::Finite(rat(1, 2)), ExtReal::int(1), ExtReal::Infinity];
    let u = n_point_cross_ratios(&pts)?;
    for ((i, j), v) in dualfive::crossratio::CrossRatioVec::index_pairs(5).iter().zip(u.values()) {
        println!("u{i}{j} = {v}");
    }
    println!("constraint residuals: {:?}", constraint_residuals(&u).iter().map(|r| r.to_string()).collect::<Vec<_>>());

    let w = five_from_params(&rat(1, 2), &rat(1, 4))?;
    println!("from (s, t) = (1/2, 1/4): {:?}", w.values().iter().map(|r| r.to_string()).collect::<Vec<_>>());

    println!("\n N  dim  components");
    for n in 4..=10 {
        let (d, k) = counting(n)?;
        println!("{n:>2} {d:>4} {k:>11}");
    }
    Ok(())
}
