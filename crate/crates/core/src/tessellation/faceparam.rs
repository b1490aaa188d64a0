//! Vertex and face tables, the (u,v) → (x,y) → (s,t) chain and the exact
//! closed-square face maps `f_1 … f_12`.

use std::sync::OnceLock;

use nalgebra::Vector6;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactlin::{int, rat, ProjVec, Rational};
use crate::poly::{BiPoly, Ring};

/// The fifteen vertices with the signs used by the signed face table.
pub const VERTEX_COORDS: [[i64; 6]; 15] = [
    [1, 1, 0, 0, 1, 1],
    [1, 1, 1, 0, 0, 1],
    [1, 1, 1, 1, 0, 0],
    [1, 0, 1, 1, 1, 0],
    [1, 0, 0, 1, 1, 1],
    [0, 0, -1, 0, 1, 0],
    [0, 0, 0, -1, 0, 1],
    [0, 1, 0, 0, -1, 0],
    [0, 0, 1, 0, 0, -1],
    [0, -1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0],
];

/// Faces 1..12 of the double cover as signed vertex cycles. Face `12+i` is
/// the antipodal face `ī`, see [`face_table`].
pub const FACES: [[i64; 5]; 12] = [
    [1, 2, 3, 4, 5],
    [1, 5, -9, -13, 6],
    [8, 15, 11, -7, 3],
    [-12, 9, 4, 3, -7],
    [12, -9, 5, 10, 11],
    [-8, -15, 10, 5, 4],
    [-8, 4, 9, 13, 14],
    [8, 3, 2, -6, -14],
    [1, 6, 14, 15, -10],
    [1, -10, -11, 7, 2],
    [12, 13, -6, 2, 7],
    [12, 11, 15, 14, 13],
];

/// `(1/2,0), (1,0), (1,1), (0,1), (0,0)`: the pentagon corners in the unit
/// square, in boundary order.
pub fn corner_params() -> [(Rational, Rational); 5] {
    [(rat(1, 2), int(0)), (int(1), int(0)), (int(1), int(1)), (int(0), int(1)), (int(0), int(0))]
}

pub fn signed_vertex(id: i64) -> [i64; 6] {
    assert!(id != 0 && id.unsigned_abs() <= 15, "vertex id {id} out of range");
    let v = VERTEX_COORDS[id.unsigned_abs() as usize - 1];
    if id > 0 {
        v
    } else {
        v.map(|x| -x)
    }
}

/// The 15 vertices in canonical projective form.
pub fn vertex_table() -> Vec<ProjVec> {
    VERTEX_COORDS.iter().map(|v| ProjVec::from_i64(*v).expect("nonzero vertex")).collect()
}

/// All 24 signed faces: `1..=12` then their antipodes `ī = -(reversed i)`,
/// starting from the negated first vertex.
pub fn face_table() -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = FACES.iter().map(|f| f.to_vec()).collect();
    for f in FACES {
        let mut g: Vec<i64> = vec![-f[0]];
        g.extend(f[1..].iter().rev().map(|x| -x));
        out.push(g);
    }
    out
}

/// The ten branch-line hexagons `α_1..α_5, α'_1..α'_5`.
pub fn branch_hexagons() -> Vec<(String, [i64; 6])> {
    const ROWS: [[i64; 6]; 10] = [
        [1, 5, 10, -1, -5, -10],
        [2, 1, 6, -2, -1, -6],
        [3, 2, 7, -3, -2, -7],
        [4, 3, 8, -4, -3, -8],
        [5, 4, 9, -5, -4, -9],
        [10, 15, 11, -10, -15, -11],
        [6, 13, 14, -6, -13, -14],
        [7, 11, 12, -7, -11, -12],
        [8, 14, 15, -8, -14, -15],
        [9, 12, 13, -9, -12, -13],
    ];
    ROWS.iter()
        .enumerate()
        .map(|(k, r)| {
            let name = if k < 5 { format!("alpha{}", k + 1) } else { format!("alpha'{}", k - 4) };
            (name, *r)
        })
        .collect()
}

fn check_unit(name: &str, x: &Rational) -> Result<()> {
    if x.is_negative() || *x > Rational::one() {
        return Err(Error::OutOfDomain(format!("{name}={x} outside [0,1]")));
    }
    Ok(())
}

/// `(2u − uv, uv)` for `u ≤ 1/2`, `(1 − v + uv, −1 + 2u + v − uv)` otherwise.
pub fn uv_to_xy(u: &Rational, v: &Rational) -> Result<(Rational, Rational)> {
    check_unit("u", u)?;
    check_unit("v", v)?;
    Ok(uv_to_xy_ring(u, v, *u <= rat(1, 2)))
}

fn uv_to_xy_ring<R: Ring>(u: &R, v: &R, lower: bool) -> (R, R) {
    let one = R::ring_one();
    let two = one.plus(&one);
    let uv = u.times(v);
    if lower {
        (two.times(u).minus(&uv), uv)
    } else {
        (one.minus(v).plus(&uv), two.times(u).plus(v).minus(&uv).minus(&one))
    }
}

/// `(s, t)` as numerator/denominator pairs `(a, b, c, d)` with `s = a/b`,
/// `t = c/d`.
fn region_fractions<R: Ring>(n: usize, x: &R, y: &R) -> (R, R, R, R) {
    let one = R::ring_one();
    let (omx, omy) = (one.minus(x), one.minus(y));
    let xmy = x.minus(y);
    let (xm1, ym1, ymx) = (x.minus(&one), y.minus(&one), y.minus(x));
    let xy = x.times(y);
    match n {
        1 => (x.clone(), one.clone(), y.clone(), one),
        2 => (xmy, omy, y.clone(), ym1),
        3 => (one, xy, x.clone(), y.clone()),
        4 => (y.clone(), one.clone(), x.clone(), one),
        5 => (y.clone(), ym1, xmy, omy),
        6 => (x.clone(), xm1.clone(), xmy, xm1),
        7 => (xmy, xm1.clone(), x.clone(), xm1),
        8 => (x.clone(), y.clone(), one, xy),
        9 => (omy.clone(), xmy.clone(), y.clone(), ymx),
        10 => (one, omy.clone(), omx, omy),
        11 => (omx, omy.clone(), one, omy),
        12 => (y.clone(), ymx, omy, xmy),
        _ => unreachable!("region ids are 1..=12"),
    }
}

/// Row `n` of the region table on the open triangle `0 < y < x < 1`.
pub fn region_map(n: usize, x: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfDomain(format!("region id {n} not in 1..=12")));
    }
    if !(y.is_positive() && y < x && *x < Rational::one()) {
        return Err(Error::OutOfDomain(format!("(x,y)=({x},{y}) not in 0<y<x<1")));
    }
    let (a, b, c, d) = region_fractions(n, x, y);
    Ok((a / b, c / d))
}

/// `p(s,t) = [s(1−t), s²(1−t), t(1−t), s(1−s), s(1−t)², s−t]` with
/// `s = a/b`, `t = c/d`, multiplied through by `b²d²`.
fn homogeneous<R: Ring>(a: &R, b: &R, c: &R, d: &R) -> [R; 6] {
    let dmc = d.minus(c);
    let ab = a.times(b);
    [
        ab.times(d).times(&dmc),
        a.times(a).times(d).times(&dmc),
        b.times(b).times(c).times(&dmc),
        a.times(d).times(d).times(&b.minus(a)),
        ab.times(&dmc).times(&dmc),
        b.times(d).times(&a.times(d).minus(&b.times(c))),
    ]
}

/// `p(s,t)` for a point of the cross-ratio set, canonicalized.
pub fn point_of_params(s: &Rational, t: &Rational) -> Option<ProjVec> {
    let one = Rational::one();
    ProjVec::from_rationals(&homogeneous(s, &one, t, &one))
}

/// One face map: six polynomials in `(u, v)` per half of the square, with
/// their common factor removed and the sign fixed.
#[derive(Clone, Debug)]
pub struct FaceMap {
    pub region: usize,
    /// `[u ≤ 1/2, u ≥ 1/2]`.
    pub branches: [[BiPoly; 6]; 2],
    /// The factor divided out of each branch.
    pub cancelled: [BiPoly; 2],
    /// Signed vertex ids at the five corner parameters.
    pub corners: [i64; 5],
    /// True when the sign had to be flipped to land on face `i` rather than `ī`.
    pub flipped: bool,
    float: [[Vec<Vec<f64>>; 6]; 2],
}

fn eval_float(c: &[Vec<f64>], u: f64, v: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, row| acc * u + row.iter().rev().fold(0.0, |a, &k| a * v + k))
}

/// Matches `w` against `±v_k` up to a positive scale.
fn match_signed_vertex(w: &[Rational]) -> Option<i64> {
    let p = ProjVec::from_rationals(w)?;
    let idx = vertex_table().iter().position(|v| *v == p)? as i64 + 1;
    let v = signed_vertex(idx);
    // sign of the proportionality constant from any nonzero coordinate
    let k = v.iter().position(|&x| x != 0)?;
    let same = (w[k].is_positive()) == (v[k] > 0);
    Some(if same { idx } else { -idx })
}

impl FaceMap {
    fn build(region: usize) -> FaceMap {
        let (u, v) = (BiPoly::u(), BiPoly::v());
        let interior = [(rat(1, 4), rat(1, 2)), (rat(3, 4), rat(1, 2))];
        let mut cancelled: [BiPoly; 2] = Default::default();
        let mut branches: [[BiPoly; 6]; 2] = Default::default();
        for (k, lower) in [true, false].into_iter().enumerate() {
            let (x, y) = uv_to_xy_ring(&u, &v, lower);
            let (a, b, c, d) = region_fractions(region, &x, &y);
            let raw = homogeneous(&a, &b, &c, &d);
            let g = raw.iter().fold(BiPoly::default(), |g, p| g.gcd(p));
            let mut reduced = raw.map(|p| p.exact_div(&g));
            // orient so z0 > 0 inside the square, where z0 never vanishes
            let (iu, iv) = &interior[k];
            if reduced[0].eval(iu, iv).is_negative() {
                reduced = reduced.map(|p| -&p);
            }
            cancelled[k] = g;
            branches[k] = reduced;
        }
        let mut fm = FaceMap { region, branches, cancelled, corners: [0; 5], flipped: false, float: Default::default() };
        let corners: Vec<i64> = corner_params()
            .iter()
            .map(|(cu, cv)| {
                let w = fm.eval_exact(cu, cv);
                match_signed_vertex(&w).unwrap_or_else(|| panic!("region {region}: corner ({cu},{cv}) is not a vertex"))
            })
            .collect();
        let mut corners: [i64; 5] = corners.try_into().expect("five corners");
        let mut want: Vec<i64> = FACES[region - 1].to_vec();
        want.sort_unstable();
        let mut got = corners.to_vec();
        got.sort_unstable();
        if got != want {
            let mut neg: Vec<i64> = corners.iter().map(|x| -x).collect();
            neg.sort_unstable();
            assert_eq!(neg, want, "region {region} corners do not match face {region} up to sign");
            fm.branches = fm.branches.map(|b| b.map(|p| -&p));
            corners = corners.map(|x| -x);
            fm.flipped = true;
        }
        fm.corners = corners;
        fm.float = [0, 1].map(|k| std::array::from_fn(|j| fm.branches[k][j].float_coeffs()));
        fm
    }

    fn branch(u: &Rational) -> usize {
        usize::from(*u > rat(1, 2))
    }

    fn eval_exact(&self, u: &Rational, v: &Rational) -> Vec<Rational> {
        self.branches[Self::branch(u)].iter().map(|p| p.eval(u, v)).collect()
    }

    /// Signed exact value at `(u, v)`.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<Vec<Rational>> {
        check_unit("u", u)?;
        check_unit("v", v)?;
        Ok(self.eval_exact(u, v))
    }

    /// Signed value in double precision.
    pub fn eval_f64(&self, u: f64, v: f64) -> Vector6<f64> {
        let k = usize::from(u > 0.5);
        Vector6::from_fn(|j, _| eval_float(&self.float[k][j], u, v))
    }
}

/// The face map of region `i` (cached).
pub fn face_map(i: usize) -> &'static FaceMap {
    static MAPS: OnceLock<Vec<FaceMap>> = OnceLock::new();
    assert!((1..=12).contains(&i), "region id {i} not in 1..=12");
    &MAPS.get_or_init(|| (1..=12).map(FaceMap::build).collect())[i - 1]
}

/// `f_i(u, v)` as a point of RP⁵.
pub fn face_param(i: usize, u: &Rational, v: &Rational) -> Result<ProjVec> {
    if !(1..=12).contains(&i) {
        return Err(Error::OutOfDomain(format!("region id {i} not in 1..=12")));
    }
    let w = face_map(i).eval(u, v)?;
    Ok(ProjVec::from_rationals(&w).expect("face maps never vanish on the closed square"))
}

/// Signed vertex ids of `f_i` at the five corners, in corner order.
pub fn corner_vertices(i: usize) -> [i64; 5] {
    face_map(i).corners
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossratio::projective_residuals;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn uv_examples() {
        assert_eq!(uv_to_xy(&rat(1, 2), &rat(1, 2)).unwrap(), (rat(3, 4), rat(1, 4)));
        assert_eq!(uv_to_xy(&rat(1, 2), &int(0)).unwrap(), (int(1), int(0)));
        for v in [rat(0, 1), rat(1, 3), rat(5, 7), int(1)] {
            let lo = uv_to_xy_ring(&rat(1, 2), &v, true);
            let hi = uv_to_xy_ring(&rat(1, 2), &v, false);
            assert_eq!(lo, hi);
            assert_eq!(lo, (int(1) - &v / int(2), &v / int(2)));
        }
        assert!(uv_to_xy(&rat(3, 2), &int(0)).is_err());
    }

    #[test]
    fn region_examples() {
        let (x, y) = (rat(3, 4), rat(1, 4));
        assert_eq!(region_map(1, &x, &y).unwrap(), (rat(3, 4), rat(1, 4)));
        assert_eq!(region_map(3, &x, &y).unwrap(), (rat(16, 3), int(3)));
        assert_eq!(region_map(4, &x, &y).unwrap(), (rat(1, 4), rat(3, 4)));
        assert!(region_map(1, &y, &x).is_err());
        assert!(region_map(13, &x, &y).is_err());
    }

    #[test]
    fn vertex_examples() {
        let vs = vertex_table();
        assert_eq!(vs.len(), 15);
        assert_eq!(vs[0], ProjVec::from_i64([1, 1, 0, 0, 1, 1]).unwrap());
        assert_eq!(vs[8], ProjVec::from_i64([0, 0, 1, 0, 0, -1]).unwrap());
        for v in &vs {
            assert!(projective_residuals(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn face_one_corners() {
        assert_eq!(face_param(1, &int(0), &int(0)).unwrap(), ProjVec::from_i64([1, 0, 0, 1, 1, 1]).unwrap());
        assert_eq!(corner_vertices(1), [1, 2, 3, 4, 5]);
        // the lower half of f_1 carries a common factor u
        assert!(!face_map(1).cancelled[0].eval(&rat(1, 3), &rat(1, 2)).is_zero());
        assert!(face_map(1).cancelled[0].eval(&int(0), &rat(1, 2)).is_zero());
    }

    #[test]
    fn composed_path_matches_direct_path() {
        let (u, v) = (rat(1, 4), rat(1, 2));
        let (x, y) = uv_to_xy(&u, &v).unwrap();
        let (s, t) = region_map(1, &x, &y).unwrap();
        assert_eq!(face_param(1, &u, &v).unwrap(), point_of_params(&s, &t).unwrap());
        for i in 1..=12 {
            for (u, v) in [(rat(1, 3), rat(2, 5)), (rat(4, 5), rat(1, 7))] {
                let (x, y) = uv_to_xy(&u, &v).unwrap();
                let (s, t) = region_map(i, &x, &y).unwrap();
                assert_eq!(face_param(i, &u, &v).unwrap(), point_of_params(&s, &t).unwrap(), "region {i}");
            }
        }
    }

    #[test]
    fn corners_reproduce_face_table() {
        let expected: [[i64; 5]; 12] = [
            [1, 2, 3, 4, 5],
            [1, 6, -13, -9, 5],
            [8, 3, -7, 11, 15],
            [-12, -7, 3, 4, 9],
            [12, 11, 10, 5, -9],
            [-8, -15, 10, 5, 4],
            [-8, 14, 13, 9, 4],
            [8, 3, 2, -6, -14],
            [1, 6, 14, 15, -10],
            [1, -10, -11, 7, 2],
            [12, 13, -6, 2, 7],
            [12, 11, 15, 14, 13],
        ];
        for i in 1..=12 {
            assert_eq!(corner_vertices(i), expected[i - 1], "region {i}");
            assert_eq!(face_map(i).flipped, i == 12, "region {i}");
        }
    }

    #[test]
    fn corners_follow_the_face_cycle() {
        // the corner order is the face cycle read forwards or backwards
        for i in 1..=12 {
            let c = corner_vertices(i);
            let f = FACES[i - 1];
            let rot = |s: &[i64]| (0..5).any(|r| (0..5).all(|k| s[(k + r) % 5] == f[k]));
            let mut rev = c;
            rev.reverse();
            assert!(rot(&c) || rot(&rev), "region {i}");
        }
    }

    #[test]
    fn branches_agree_on_the_seam() {
        for i in 1..=12 {
            let fm = face_map(i);
            for v in [int(0), rat(1, 3), rat(1, 2), int(1)] {
                let lo: Vec<Rational> = fm.branches[0].iter().map(|p| p.eval(&rat(1, 2), &v)).collect();
                let hi: Vec<Rational> = fm.branches[1].iter().map(|p| p.eval(&rat(1, 2), &v)).collect();
                assert_eq!(ProjVec::from_rationals(&lo), ProjVec::from_rationals(&hi), "region {i} v={v}");
                // same sign as well as same point
                let k = lo.iter().position(|x| !x.is_zero()).unwrap();
                assert_eq!(lo[k].is_positive(), hi[k].is_positive());
            }
        }
    }

    #[test]
    fn float_evaluation_matches_exact() {
        for i in 1..=12 {
            for (u, v) in [(rat(1, 8), rat(3, 8)), (rat(5, 8), rat(7, 8)), (int(1), int(1))] {
                let e = face_map(i).eval(&u, &v).unwrap();
                let f = face_map(i).eval_f64(crate::exactlin::rat_to_f64(&u), crate::exactlin::rat_to_f64(&v));
                for j in 0..6 {
                    assert!((crate::exactlin::rat_to_f64(&e[j]) - f[j]).abs() < 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn faces_lie_on_the_variety(i in 1usize..=12, un in 0i64..=60, vn in 0i64..=60, d in 1i64..=60) {
            prop_assume!(un <= d && vn <= d);
            let p = face_param(i, &rat(un, d), &rat(vn, d)).unwrap();
            prop_assert!(projective_residuals(&p).iter().all(Zero::is_zero));
        }
    }
}
