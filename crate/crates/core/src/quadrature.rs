//! Tanh-sinh (double exponential) quadrature on the unit interval and square,
//! with nodes kept in log space so endpoint power singularities are
//! evaluated without cancellation, plus a graded Gauss–Legendre rule used as
//! an independent check.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A quadrature node on `[0, 1]` with both endpoint distances and their logs.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub x: f64,
    /// `1 − x`, accurate near `x = 1`.
    pub omx: f64,
    pub ln_x: f64,
    pub ln_omx: f64,
    /// `dx`-weight including the step.
    pub w: f64,
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

impl Node {
    /// Tanh-sinh node at abscissa `t` with step `h`: `x = σ(π sinh t)`.
    fn tanh_sinh(t: f64, h: f64) -> Node {
        let z = std::f64::consts::PI * t.sinh();
        let ln_x = -softplus(-z);
        let ln_omx = -softplus(z);
        let w = h * std::f64::consts::PI * t.cosh() * (ln_x + ln_omx).exp();
        Node { x: ln_x.exp(), omx: ln_omx.exp(), ln_x, ln_omx, w }
    }

    /// Affine image on `[a, b]`: distances to both ends scale by `b − a`.
    pub fn mapped(&self, a: f64, b: f64) -> Node {
        let len = b - a;
        let ll = len.ln();
        Node { x: a + len * self.x, omx: len * self.omx, ln_x: ll + self.ln_x, ln_omx: ll + self.ln_omx, w: len * self.w }
    }
}

/// Outcome of an adaptive rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    /// Difference between the last two refinement levels.
    pub error: f64,
    pub evaluations: usize,
    pub level: usize,
}

/// Nodes of one refinement level.
#[derive(Clone, Debug)]
pub struct TanhSinh {
    pub t_max: f64,
    pub h0: f64,
}

impl TanhSinh {
    /// Truncation chosen so `x_min^p ≈ e^{-45}` for the weakest endpoint
    /// exponent `p`, clamped to the double-precision range.
    pub fn for_exponent(pmin: f64) -> TanhSinh {
        let reach = (45.0 / pmin.max(1e-3)).clamp(40.0, 690.0);
        TanhSinh { t_max: (reach / std::f64::consts::PI).asinh(), h0: 0.5 }
    }

    /// All nodes at level `l` (step `h0 / 2^l`).
    pub fn nodes(&self, level: usize) -> Vec<Node> {
        let h = self.h0 / (1u64 << level) as f64;
        let n = (self.t_max / h).floor() as i64;
        (-n..=n)
            .map(|k| Node::tanh_sinh(k as f64 * h, h))
            .filter(|nd| nd.w > 0.0 && nd.omx > 0.0 && nd.x > 0.0)
            .collect()
    }
}

/// Tolerances and refinement budget.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_level: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-12, rel: 1e-12, max_level: 9 }
    }
}

fn converged(prev: Complex64, cur: Complex64, tol: &Tolerance) -> bool {
    (cur - prev).norm() <= tol.abs.max(tol.rel * cur.norm())
}

/// `∫₀¹ f` by tanh-sinh with level doubling.
pub fn integrate_unit<F>(f: F, rule: &TanhSinh, tol: &Tolerance) -> Result<Estimate>
where
    F: Fn(&Node) -> Complex64,
{
    let mut prev: Option<Complex64> = None;
    let mut evaluations = 0;
    for level in 0..=tol.max_level {
        let nodes = rule.nodes(level);
        evaluations += nodes.len();
        let value = pairwise_sum(&nodes.iter().map(|n| f(n) * n.w).collect::<Vec<_>>());
        if !value.is_finite() {
            return Err(Error::QuadratureFailure(format!("non-finite sum at level {level}")));
        }
        if let Some(p) = prev {
            if level >= 2 && converged(p, value, tol) {
                return Ok(Estimate { value, error: (value - p).norm(), evaluations, level });
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadratureFailure(format!("no convergence by level {}", tol.max_level)))
}

/// `∫₀¹∫₀¹ f` by the tanh-sinh product rule.
pub fn integrate_square<F>(f: F, rule_x: &TanhSinh, rule_y: &TanhSinh, tol: &Tolerance) -> Result<Estimate>
where
    F: Fn(&Node, &Node) -> Complex64 + Sync,
{
    use rayon::prelude::*;
    let mut prev: Option<Complex64> = None;
    let mut evaluations = 0;
    for level in 0..=tol.max_level {
        let (nx, ny) = (rule_x.nodes(level), rule_y.nodes(level));
        evaluations += nx.len() * ny.len();
        // rows in parallel, combined in index order
        let rows: Vec<Complex64> = nx
            .par_iter()
            .map(|a| pairwise_sum(&ny.iter().map(|b| f(a, b) * b.w).collect::<Vec<_>>()) * a.w)
            .collect();
        let value = pairwise_sum(&rows);
        if !value.is_finite() {
            return Err(Error::QuadratureFailure(format!("non-finite sum at level {level}")));
        }
        if let Some(p) = prev {
            if level >= 2 && converged(p, value, tol) {
                return Ok(Estimate { value, error: (value - p).norm(), evaluations, level });
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadratureFailure(format!("no convergence by level {}", tol.max_level)))
}

/// Pairwise (cascade) summation, deterministic for a given order.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Composite Gauss–Legendre on `[0, 1]` on a mesh graded geometrically (ratio
/// `q`) toward both endpoints, `levels` cells per side, `order` points per
/// cell. The innermost cells `[0, q^levels]` and `[1 − q^levels, 1]` are
/// dropped.
pub fn graded_gauss_nodes(order: usize, levels: usize, q: f64) -> Vec<Node> {
    let gl = gauss_quad::GaussLegendre::new(order).expect("order >= 2");
    let mut cells: Vec<(f64, f64, bool)> = Vec::new();
    // (length of cell, distance of its near end to the endpoint, at-left)
    for k in 0..levels {
        let outer = 0.5 * q.powi(k as i32);
        let inner = 0.5 * q.powi(k as i32 + 1);
        cells.push((inner, outer, true));
        cells.push((inner, outer, false));
    }
    let mut out = Vec::new();
    for (lo, hi, left) in cells {
        for (&xi, &wi) in gl.nodes().zip(gl.weights()) {
            // xi in [-1, 1]
            let d = lo + (hi - lo) * 0.5 * (xi + 1.0);
            let w = (hi - lo) * 0.5 * wi;
            let (x, omx) = if left { (d, 1.0 - d) } else { (1.0 - d, d) };
            out.push(Node { x, omx, ln_x: x.ln(), ln_omx: omx.ln(), w });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn polynomial_and_endpoint_singularities() {
        let tol = Tolerance::default();
        let r = integrate_unit(|n| c(n.x * n.x), &TanhSinh::for_exponent(1.0), &tol).unwrap();
        assert_relative_eq!(r.value.re, 1.0 / 3.0, epsilon = 1e-14);
        // ∫ x^{-1/2} = 2
        let r = integrate_unit(|n| c((-0.5 * n.ln_x).exp()), &TanhSinh::for_exponent(0.5), &tol).unwrap();
        assert_relative_eq!(r.value.re, 2.0, epsilon = 1e-12);
        // ∫ (1-x)^{-0.9} = 10
        let r = integrate_unit(|n| c((-0.9 * n.ln_omx).exp()), &TanhSinh::for_exponent(0.1), &tol).unwrap();
        assert_relative_eq!(r.value.re, 10.0, epsilon = 1e-9);
    }

    #[test]
    fn mapped_nodes_keep_endpoint_distances() {
        let n = Node::tanh_sinh(-3.0, 0.5).mapped(0.5, 1.0);
        assert!(n.x >= 0.5 && n.x < 0.5 + 1e-10);
        assert_relative_eq!(n.omx, 0.5 * Node::tanh_sinh(-3.0, 0.5).omx);
    }

    #[test]
    fn square_rule_separable() {
        let tol = Tolerance { abs: 1e-13, rel: 1e-13, max_level: 8 };
        let rule = TanhSinh::for_exponent(0.5);
        let r = integrate_square(|a, b| c((-0.5 * a.ln_x).exp() * b.x), &rule, &rule, &tol).unwrap();
        assert_relative_eq!(r.value.re, 1.0, epsilon = 1e-11);
    }

    #[test]
    fn graded_gauss() {
        let nodes = graded_gauss_nodes(12, 100, 0.5);
        let s: f64 = nodes.iter().map(|n| n.w * (-0.5 * n.ln_x).exp()).sum();
        assert_relative_eq!(s, 2.0, epsilon = 1e-12);
        let s: f64 = nodes.iter().map(|n| n.w).sum();
        assert_relative_eq!(s, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn non_convergence_reported() {
        let tol = Tolerance { abs: 0.0, rel: 0.0, max_level: 3 };
        let r = integrate_unit(|n| c((n.x * 1e4).sin()), &TanhSinh::for_exponent(1.0), &tol);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
    }
}
