//! Pochhammer phase surfaces built combinatorially from `2^k` sheets, and the
//! numerical Pochhammer contour for the Euler Beta function.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_complex::Complex64;

use crate::betafun::{exp_2pi_i, C64};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_unit, Estimate, Node, TanhSinh, Tolerance};
use crate::tessellation::complex::{euler_and_genus, CellComplex, SurfaceType};

/// Which of the `k` phase factors `e^{2πiα_j}` a sheet has picked up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseLabel {
    pub k: usize,
    pub bits: u32,
}

impl PhaseLabel {
    pub fn new(k: usize, bits: u32) -> Self {
        assert!(k <= 16 && bits < (1 << k));
        PhaseLabel { k, bits }
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn flip(&self, j: usize) -> Self {
        PhaseLabel { k: self.k, bits: self.bits ^ (1 << j) }
    }

    /// `+1` for an even number of set bits.
    pub fn parity(&self) -> i8 {
        if self.bits.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `e^{2πi Σ p_j α_j}`.
    pub fn phase(&self, alpha: &[C64]) -> C64 {
        let s: C64 = (0..self.k).filter(|&j| self.bit(j)).map(|j| alpha[j]).sum();
        exp_2pi_i(s)
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.k).map(|j| if self.bit(j) { '1' } else { '0' }).collect();
        write!(f, "{s}")
    }
}

/// One side of a sheet: `(sheet bits, edge index)`.
pub type SheetEdge = (u32, usize);

/// `2^k` copies of a `k`-gon, copy `p` glued along edge `j` to copy
/// `p ⊕ e_j`. Corner `c` of a sheet sits between edges `c` and `c + 1`.
#[derive(Clone, Debug)]
pub struct PhaseSurface {
    pub k: usize,
    pub gluing: HashMap<SheetEdge, SheetEdge>,
}

/// Summary of a phase surface (or, for `k = 2`, the phase loop).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PhaseReport {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable: bool,
    pub genus: Option<i64>,
    pub crosscaps: Option<i64>,
    pub connected: bool,
    pub holes: usize,
    pub holes_closed: bool,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl PhaseSurface {
    pub fn sheets(&self) -> impl Iterator<Item = PhaseLabel> + '_ {
        (0..1u32 << self.k).map(|b| PhaseLabel::new(self.k, b))
    }

    pub fn partner(&self, sheet: u32, edge: usize) -> SheetEdge {
        self.gluing[&(sheet, edge)]
    }

    /// Re-pairs two glued edges crosswise: `a ↔ a'`, `b ↔ b'` become
    /// `a ↔ b'`, `b ↔ a'`.
    pub fn swap_gluing(&mut self, a: SheetEdge, b: SheetEdge) {
        let (pa, pb) = (self.gluing[&a], self.gluing[&b]);
        self.gluing.insert(a, pb);
        self.gluing.insert(pb, a);
        self.gluing.insert(b, pa);
        self.gluing.insert(pa, b);
    }

    /// Gluing is a fixed-point-free involution that matches edge labels.
    pub fn gluing_is_involution(&self) -> bool {
        self.gluing.iter().all(|(a, b)| a != b && a.1 == b.1 && self.gluing.get(b) == Some(a))
    }

    /// Starting on `sheet`, cross edge `i`, then `j`, then `i`, then `j`;
    /// true when the walk ends on the starting sheet.
    pub fn commutator_closes(&self, sheet: u32, i: usize, j: usize) -> bool {
        let mut s = sheet;
        for e in [i, j, i, j] {
            s = self.partner(s, e).0;
        }
        s == sheet
    }

    fn corner_index(&self, sheet: u32, corner: usize) -> usize {
        sheet as usize * self.k + corner
    }

    /// Union-find classes of `(sheet, corner)`: an edge glued to a partner
    /// identifies both of its end corners with the partner's.
    fn corner_classes(&self) -> Vec<usize> {
        let k = self.k;
        let n = (1usize << k) * k;
        let mut parent: Vec<usize> = (0..n).collect();
        let mut pairs: Vec<(&SheetEdge, &SheetEdge)> = self.gluing.iter().collect();
        pairs.sort();
        for (&(p, j), &(q, jj)) in pairs {
            for (c, cc) in [((j + k - 1) % k, (jj + k - 1) % k), (j, jj)] {
                let (a, b) = (find(&mut parent, self.corner_index(p, c)), find(&mut parent, self.corner_index(q, cc)));
                parent[a] = b;
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    /// Filled corner holes: one per class of pentagon corner, each tagged by
    /// the corner index and the smallest sheet meeting it.
    pub fn corner_holes(&self) -> Vec<(usize, u32)> {
        let classes = self.corner_classes();
        let mut seen = BTreeMap::new();
        for sheet in 0..1u32 << self.k {
            for c in 0..self.k {
                seen.entry(classes[self.corner_index(sheet, c)]).or_insert((c, sheet));
            }
        }
        seen.into_values().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// The closed surface: one face per sheet with vertices the corner
    /// classes, listed backwards on odd sheets.
    pub fn to_complex(&self) -> CellComplex {
        let classes = self.corner_classes();
        let mut ids: BTreeMap<usize, i64> = BTreeMap::new();
        for &c in &classes {
            let next = ids.len() as i64 + 1;
            ids.entry(c).or_insert(next);
        }
        let faces = self
            .sheets()
            .map(|p| {
                let mut f: Vec<i64> = (0..self.k).map(|c| ids[&classes[self.corner_index(p.bits, c)]]).collect();
                if p.parity() < 0 {
                    f.reverse();
                }
                f
            })
            .collect();
        CellComplex::new((1..=ids.len() as i64).collect(), faces)
    }

    /// Sheets reachable from sheet 0 through gluings.
    pub fn is_connected(&self) -> bool {
        let n = 1usize << self.k;
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(s) = queue.pop_front() {
            for j in 0..self.k {
                let t = self.partner(s, j).0;
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Euler characteristic and type of the glued surface.
    pub fn surface_type(&self) -> Result<SurfaceType> {
        euler_and_genus(&self.to_complex())
    }

    /// Every corner hole, walked from every sheet at it, closes.
    pub fn all_holes_close(&self) -> bool {
        (0..1u32 << self.k).all(|s| (0..self.k).all(|c| self.commutator_closes(s, c, (c + 1) % self.k)))
    }
}

/// The gluing `(p, j) ↔ (p ⊕ e_j, j)` on `2^k` sheets.
pub fn build_phase_surface(k: usize) -> Result<PhaseSurface> {
    if !(3..=12).contains(&k) {
        return Err(Error::OutOfDomain(format!("phase surfaces need 3 <= k <= 12, got {k}; use phase_loop for k=2")));
    }
    let mut gluing = HashMap::new();
    for p in 0..1u32 << k {
        for j in 0..k {
            gluing.insert((p, j), (p ^ (1 << j), j));
        }
    }
    Ok(PhaseSurface { k, gluing })
}

/// The `k = 2` case: four segments on sheets `00 → 10 → 11 → 01 → 00`,
/// joined at the four small circles, alternating around `z = 0` and `z = 1`.
#[derive(Clone, Debug)]
pub struct PhaseLoop {
    pub segments: Vec<PhaseLabel>,
    /// `(segment, next segment, exponent index flipped)`.
    pub joins: Vec<(usize, usize, usize)>,
}

pub fn phase_loop() -> PhaseLoop {
    let mut segments = vec![PhaseLabel::new(2, 0)];
    let mut joins = Vec::new();
    for step in 0..4 {
        let j = step % 2;
        let next = segments[step].flip(j);
        if step < 3 {
            segments.push(next);
        } else {
            assert_eq!(next, segments[0], "the commutator closes");
        }
        joins.push((step, (step + 1) % 4, j));
    }
    PhaseLoop { segments, joins }
}

impl PhaseLoop {
    pub fn is_closed(&self) -> bool {
        let mut s = self.segments[0];
        for &(_, _, j) in &self.joins {
            s = s.flip(j);
        }
        s == self.segments[0]
    }
}

/// Summary for any `k ≥ 2`.
pub fn phase_report(k: usize) -> Result<PhaseReport> {
    if k == 2 {
        let l = phase_loop();
        return Ok(PhaseReport {
            k,
            vertices: l.joins.len(),
            edges: l.segments.len(),
            faces: 0,
            chi: l.joins.len() as i64 - l.segments.len() as i64,
            orientable: true,
            genus: None,
            crosscaps: None,
            connected: l.is_closed(),
            holes: 0,
            holes_closed: l.is_closed(),
        });
    }
    let s = build_phase_surface(k)?;
    let c = s.to_complex();
    let t = euler_and_genus(&c)?;
    let (v, e, f) = c.counts();
    Ok(PhaseReport {
        k,
        vertices: v,
        edges: e,
        faces: f,
        chi: t.chi,
        orientable: t.orientable,
        genus: t.orientable.then_some(t.genus_or_crosscaps),
        crosscaps: (!t.orientable).then_some(t.genus_or_crosscaps),
        connected: s.is_connected(),
        holes: s.corner_holes().len(),
        holes_closed: s.all_holes_close(),
    })
}

/// Whether the walk `e_i, e_j, e_i, e_j` returns to its start from every
/// sheet of the `k`-sheet surface (`i`, `j` 1-based).
pub fn corner_cycle_check(k: usize, i: usize, j: usize) -> Result<bool> {
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(Error::OutOfDomain(format!("need distinct edge indices in 1..={k}, got ({i},{j})")));
    }
    let s = build_phase_surface(k)?;
    Ok((0..1u32 << k).all(|p| s.commutator_closes(p, i - 1, j - 1)))
}

/// A pentagon edge of region 1 with the branch locus it lies on and the
/// exponent whose phase changes across it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeExponent {
    /// Edge from corner `corner` to corner `corner + 1` of the unit-square
    /// pentagon `(1/2,0), (1,0), (1,1), (0,1), (0,0)`.
    pub corner: usize,
    pub locus: &'static str,
    /// 1-based exponent index.
    pub exponent: usize,
    /// Signed vertex ids at its ends.
    pub vertices: (i64, i64),
}

/// The five edges of region 1 mapped to `α_1 … α_5`: the blown-up point
/// `A` at `(z₁,z₂) = (0,0)`, `z₂ = 0`, `z₁ = 1`, the blown-up point `B` at
/// `(1,1)`, and `z₁ = z₂`.
pub fn edge_phase_exponents() -> Vec<EdgeExponent> {
    let rows = [(3, "A", 1, (4, 5)), (4, "z2=0", 2, (5, 1)), (0, "z1=1", 3, (1, 2)), (1, "B", 4, (2, 3)), (2, "z1-z2=0", 5, (3, 4))];
    rows.into_iter()
        .map(|(corner, locus, exponent, vertices)| EdgeExponent { corner, locus, exponent, vertices })
        .collect()
}

/// Pochhammer contour integral of `z^{α₁−1}(1−z)^{α₂−1}`.
#[derive(Clone, Copy, Debug)]
pub struct PochhammerResult {
    pub value: C64,
    /// The four straight segments, phases included.
    pub segments: C64,
    /// The four circles.
    pub circles: C64,
    pub error: f64,
}

/// Integrates the Pochhammer loop: the segment `[r, 1−r]` four times with
/// phases `1, e^{2πiα₂}, e^{2πi(α₁+α₂)}, e^{2πiα₁}` (alternately forwards and
/// backwards) joined by radius-`r` circles around 1 (ccw), 0 (ccw), 1 (cw), 0
/// (cw). Powers are principal on the segment; on a circle the winding angle
/// is carried explicitly, so no branch cut is ever crossed.
///
/// `n` caps the number of tanh-sinh points per piece. Small radii make the
/// segment and circle pieces large and nearly cancelling when `Re α < 0`;
/// any `r` near 1/4 avoids that.
pub fn pochhammer_b4(alpha: [C64; 2], r: f64, n: usize) -> Result<PochhammerResult> {
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::OutOfDomain(format!("loop radius {r} must lie in (0, 1/2)")));
    }
    let [a1, a2] = alpha;
    let (e1, e2) = (a1 - 1.0, a2 - 1.0);
    let tol = Tolerance { abs: 1e-14, rel: 1e-13, max_level: max_level_for(n) };
    let rule = TanhSinh { t_max: 3.2, h0: 0.5 };
    let len = 1.0 - 2.0 * r;
    let seg = integrate_unit(
        |nd: &Node| {
            let m = nd.mapped(r, 1.0 - r);
            // z = r + len σ, 1 − z = r + len (1 − σ)
            let (z, omz) = (r + len * nd.x, r + len * nd.omx);
            let _ = m;
            (e1 * z.ln()).exp() * (e2 * omz.ln()).exp() * len
        },
        &rule,
        &tol,
    )?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let ln_r = r.ln();
    // ∮ around 0 from angle 0 to ±2π: z = r e^{iψ}
    let around_zero = |sign: f64| -> Result<Estimate> {
        integrate_unit(
            |nd: &Node| {
                let psi = sign * two_pi * nd.x;
                let z = Complex64::from_polar(r, psi);
                let zpow = (e1 * Complex64::new(ln_r, psi)).exp();
                zpow * (e2 * (1.0 - z).ln()).exp() * Complex64::i() * z * (sign * two_pi)
            },
            &rule,
            &tol,
        )
    };
    // around 1: 1 − z = r e^{iψ}, z = 1 − r e^{iψ}, dz = −i r e^{iψ} dψ
    let around_one = |sign: f64| -> Result<Estimate> {
        integrate_unit(
            |nd: &Node| {
                let psi = sign * two_pi * nd.x;
                let w = Complex64::from_polar(r, psi);
                let z = 1.0 - w;
                let wpow = (e2 * Complex64::new(ln_r, psi)).exp();
                (e1 * z.ln()).exp() * wpow * (-Complex64::i() * w) * (sign * two_pi)
            },
            &rule,
            &tol,
        )
    };
    let (p2, p12, p1) = (exp_2pi_i(a2), exp_2pi_i(a1 + a2), exp_2pi_i(a1));
    let c1 = around_one(1.0)?;
    let c0 = around_zero(1.0)?;
    let c1b = around_one(-1.0)?;
    let c0b = around_zero(-1.0)?;
    let segments = seg.value * (1.0 - p2 + p12 - p1);
    let circles = c1.value + p2 * c0.value + p12 * c1b.value + p1 * c0b.value;
    let error = seg.error * 4.0 + c1.error + c0.error + c1b.error + c0b.error;
    Ok(PochhammerResult { value: segments + circles, segments, circles, error })
}

fn max_level_for(n: usize) -> usize {
    // level ℓ of the rule below uses about 2·3.2·2^{ℓ+1} points
    let mut level = 0;
    while level < 14 && 13usize << (level + 1) <= n {
        level += 1;
    }
    level.max(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betafun::{b4_gamma, b4_quadrature, product_factor, QuadratureSpec};
    use std::f64::consts::PI;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn five_sheet_surface() {
        let s = build_phase_surface(5).unwrap();
        assert!(s.gluing_is_involution());
        assert_eq!(s.gluing.len(), 160);
        let c = s.to_complex();
        assert_eq!(c.counts(), (40, 80, 32));
        assert_eq!(
            euler_and_genus(&c).unwrap(),
            SurfaceType { chi: -8, orientable: true, genus_or_crosscaps: 5 }
        );
        assert!(s.is_connected());
        assert_eq!(s.corner_holes().len(), 40);
        assert!(s.all_holes_close());
        // the parity orientation is the consistent one
        let signs = c.orient().unwrap();
        assert!(signs.iter().all(|&x| x == signs[0]));
    }

    #[test]
    fn holes_are_five_corners_over_eight_cosets() {
        let s = build_phase_surface(5).unwrap();
        let holes = s.corner_holes();
        for c in 0..5 {
            assert_eq!(holes.iter().filter(|h| h.0 == c).count(), 8);
        }
    }

    #[test]
    fn corner_cycles() {
        assert!(corner_cycle_check(5, 1, 2).unwrap());
        for i in 1..=5 {
            for j in i + 1..=5 {
                assert!(corner_cycle_check(5, i, j).unwrap());
            }
        }
        assert!(corner_cycle_check(5, 2, 2).is_err());
    }

    #[test]
    fn mutated_gluing_is_detected() {
        let mut s = build_phase_surface(5).unwrap();
        s.swap_gluing((0, 0), (2, 0));
        assert!(s.gluing_is_involution());
        assert!(!s.all_holes_close());
        let t = s.surface_type();
        assert!(t.map_or(true, |t| t != SurfaceType { chi: -8, orientable: true, genus_or_crosscaps: 5 }));
    }

    #[test]
    fn other_sheet_counts() {
        for k in 3..=6 {
            let rep = phase_report(k).unwrap();
            let p = 1i64 << (k - 2);
            assert_eq!(rep.vertices as i64, k as i64 * p);
            assert_eq!(rep.edges as i64, 2 * k as i64 * p);
            assert_eq!(rep.faces as i64, 4 * p);
            assert_eq!(rep.chi, p * (4 - k as i64));
            assert!(rep.orientable && rep.connected && rep.holes_closed);
        }
        assert!(build_phase_surface(2).is_err());
    }

    #[test]
    fn two_sheet_loop() {
        let l = phase_loop();
        assert_eq!(l.segments.iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["00", "10", "11", "01"]);
        assert!(l.is_closed());
        let rep = phase_report(2).unwrap();
        assert_eq!((rep.vertices, rep.edges, rep.chi), (4, 4, 0));
        assert!(rep.connected);
        let a = [r(0.3), r(0.45)];
        let phases: Vec<C64> = l.segments.iter().map(|p| p.phase(&a)).collect();
        assert!((phases[1] - exp_2pi_i(r(0.3))).norm() < 1e-15);
        assert!((phases[2] - exp_2pi_i(r(0.75))).norm() < 1e-15);
    }

    #[test]
    fn edge_labels() {
        let e = edge_phase_exponents();
        let by = |l: &str| e.iter().find(|x| x.locus == l).unwrap().exponent;
        assert_eq!(by("z2=0"), 2);
        assert_eq!(by("A"), 1);
        assert_eq!(by("B"), 4);
        assert_eq!(by("z1=1"), 3);
        assert_eq!(by("z1-z2=0"), 5);
    }

    #[test]
    fn edges_follow_the_corner_correspondence() {
        let c = crate::tessellation::corner_vertices(1);
        for e in edge_phase_exponents() {
            assert_eq!((c[e.corner], c[(e.corner + 1) % 5]), e.vertices);
        }
    }

    #[test]
    fn half_half_gives_four_pi() {
        let v = pochhammer_b4([r(0.5), r(0.5)], 1e-3, 4000).unwrap();
        assert!((v.value - 4.0 * PI).norm() < 1e-9, "{:?}", v);
    }

    #[test]
    fn vanishing_cases() {
        let v = pochhammer_b4([r(1.0), r(1.0)], 1e-3, 4000).unwrap();
        assert!(v.value.norm() <= 1e-8, "{:?}", v);
        let v = pochhammer_b4([r(0.5), r(-0.5)], 1e-3, 4000).unwrap();
        assert!(v.value.norm() <= 1e-6, "{:?}", v);
    }

    #[test]
    fn radius_independent() {
        for a in [[r(0.3), r(0.6)], [r(-0.4), r(1.7)], [C64::new(0.2, 0.5), r(-1.3)]] {
            let x = pochhammer_b4(a, 1e-2, 4000).unwrap().value;
            let y = pochhammer_b4(a, 1e-3, 4000).unwrap().value;
            assert!((x - y).norm() <= 1e-7, "{a:?}: {x} vs {y}");
        }
    }

    #[test]
    fn continuation_matches_gamma_ratio() {
        for a in [[r(-0.5), r(0.3)], [r(-1.5), r(-0.25)], [C64::new(0.4, 1.0), r(2.3)]] {
            let v = pochhammer_b4(a, 1e-3, 4000).unwrap().value / product_factor(&a);
            let g = b4_gamma(a).unwrap();
            assert!((v - g).norm() <= 1e-7 * (1.0 + g.norm()), "{a:?}: {v} vs {g}");
        }
        let a = [r(0.7), r(1.4)];
        let v = pochhammer_b4(a, 1e-3, 4000).unwrap().value / product_factor(&a);
        let q = b4_quadrature(a, &QuadratureSpec::default()).unwrap().value;
        assert!((v - q).norm() <= 1e-7);
    }

    #[test]
    fn circles_shrink_with_radius() {
        let a = [r(0.6), r(0.8)];
        let big = pochhammer_b4(a, 1e-2, 4000).unwrap().circles.norm();
        let small = pochhammer_b4(a, 1e-4, 4000).unwrap().circles.norm();
        assert!(small < big / 5.0, "{big} {small}");
    }

    #[test]
    fn bad_radius() {
        assert!(pochhammer_b4([r(0.5), r(0.5)], 0.6, 100).is_err());
    }
}
