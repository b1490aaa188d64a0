//! B4 from Gamma functions and by quadrature; B5 on the unit square.

use dualfive::betafun::{b4_gamma, b4_quadrature, b5_quadrature, QuadratureSpec, C64};

fn main() -> anyhow::Result<()> {
    let spec = QuadratureSpec::default();
    for (a, b) in [(0.5, 0.5), (0.3, 2.2), (1.7, 0.9)] {
        let al = [C64::new(a, 0.0), C64::new(b, 0.0)];
        let q = b4_quadrature(al, &spec)?;
        println!("B4({a}, {b}): gamma {:.15}  quad {:.15}  ({} points)", b4_gamma(al)?.re, q.value.re, q.evaluations);
    }

    let ones = [C64::new(1.0, 0.0); 5];
    let z = b5_quadrature(ones, &spec)?;
    println!("B5(1,1,1,1,1) = {:.15}  pi^2/6 = {:.15}", z.value.re, std::f64::consts::PI.powi(2) / 6.0);

    let a = [C64::new(0.8, 0.3), C64::new(1.2, 0.0), C64::new(0.6, -0.2), C64::new(1.5, 0.0), C64::new(0.9, 0.1)];
    let shifted = [a[2], a[3], a[4], a[0], a[1]];
    println!("B5(a)          = {:.12}", b5_quadrature(a, &spec)?.value);
    println!("B5(shifted a)  = {:.12}", b5_quadrature(shifted, &spec)?.value);
    Ok(())
}
