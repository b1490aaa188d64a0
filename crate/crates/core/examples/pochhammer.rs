//! The Pochhammer contour continues B4 to negative exponents.

use dualfive::betafun::{b4_gamma, product_factor, C64};
use dualfive::contour::pochhammer_b4;

fn main() -> anyhow::Result<()> {
    for (a, b) in [(-0.5, 0.3), (1.7, -2.4), (-1.5, -0.25)] {
        let al = [C64::new(a, 0.0), C64::new(b, 0.0)];
        let e = pochhammer_b4(al, 0.25, 4000)?;
        let cont = e.value / product_factor(&al);
        println!("({a}, {b}): contour/factor = {:.12}  gamma ratio = {:.12}", cont.re, b4_gamma(al)?.re);
    }

    for r in [0.25, 0.05, 0.005] {
        let e = pochhammer_b4([C64::new(0.5, 0.0), C64::new(0.5, 0.0)], r, 4000)?;
        println!("radius {r:<6}: segments {:>10.6}  circles {:>10.6}  total {:.12}", e.segments.re, e.circles.re, e.value.re);
    }

    let e = pochhammer_b4([C64::new(1.0, 0.0), C64::new(1.0, 0.0)], 0.25, 4000)?;
    println!("epsilon(1, 1) = {:.1e}", e.value.norm());
    Ok(())
}
