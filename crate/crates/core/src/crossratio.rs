//! Cross-ratios of points on the real projective line, the five-point
//! parameterization, and residuals of the affine and projective constraint
//! systems.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{MatRat, ProjVec, Rational};

/// A point of R ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(Rational),
    Infinity,
}

impl ExtReal {
    pub fn int(n: i64) -> Self {
        ExtReal::Finite(crate::exactlin::int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::Finite(r)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(r) => write!(f, "{r}"),
            ExtReal::Infinity => write!(f, "∞"),
        }
    }
}

/// `u(w,x,y,z) = (w−y)(x−z) / ((w−z)(x−y))`.
///
/// A point at infinity cancels the two factors it appears in, e.g.
/// `u(0,∞,t,1) = (0−t)/(0−1) = t`.
pub fn cross_ratio(w: &ExtReal, x: &ExtReal, y: &ExtReal, z: &ExtReal) -> Result<Rational> {
    let pts = [w, x, y, z];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateQuadruple(format!("({w}, {x}, {y}, {z})")));
            }
        }
    }
    // difference of two points, `None` when one of them is ∞
    let diff = |a: &ExtReal, b: &ExtReal| match (a, b) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => Some(a - b),
        _ => None,
    };
    let one = Rational::one();
    let wy = diff(w, y).unwrap_or_else(|| one.clone());
    let xz = diff(x, z).unwrap_or_else(|| one.clone());
    let wz = diff(w, z).unwrap_or_else(|| one.clone());
    let xy = diff(x, y).unwrap_or_else(|| one.clone());
    Ok(wy * xz / (wz * xy))
}

/// Cross-ratio coordinates `u_ij`, `1 ≤ i < j ≤ N`, `2 ≤ j−i ≤ N−2`, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatioVec {
    n: usize,
    values: Vec<Rational>,
}

impl CrossRatioVec {
    /// Index pairs for `N` points in storage order.
    pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(n * (n.saturating_sub(3)) / 2);
        for i in 1..=n {
            for j in i + 2..=n {
                if j - i <= n - 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfDomain(format!("need N >= 4 points, got {n}")));
        }
        let expected = n * (n - 3) / 2;
        if values.len() != expected {
            return Err(Error::OutOfDomain(format!("N={n} needs {expected} cross-ratios, got {}", values.len())));
        }
        Ok(CrossRatioVec { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `u_ij` with the cyclic conventions `u_mn = u_nm` and `u_{m,n+N} = u_{m,n}`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        let n = self.n;
        let (a, b) = ((i - 1) % n + 1, (j - 1) % n + 1);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let pos = Self::index_pairs(n)
            .iter()
            .position(|&p| p == (a, b))
            .unwrap_or_else(|| panic!("u_{a}{b} is not a cross-ratio coordinate for N={n}"));
        &self.values[pos]
    }
}

/// `(s, t/s, (1−s)/(1−t), 1−t, (s−t)/(s(1−t)))` = `(u13,u14,u24,u25,u35)`.
pub fn five_from_params(s: &Rational, t: &Rational) -> Result<CrossRatioVec> {
    let one = Rational::one();
    if s.is_zero() || t.is_zero() || *s == one || *t == one || s == t {
        return Err(Error::DegenerateParams(format!("s={s}, t={t} must be distinct and avoid 0 and 1")));
    }
    let values = vec![
        s.clone(),
        t / s,
        (&one - s) / (&one - t),
        &one - t,
        (s - t) / (s * (&one - t)),
    ];
    CrossRatioVec::new(5, values)
}

/// `u_ij = u(x_i, x_{i+1}, x_{j+1}, x_j)` with `x_{N+1} = x_1`.
pub fn n_point_cross_ratios(points: &[ExtReal]) -> Result<CrossRatioVec> {
    let n = points.len();
    if n < 4 {
        return Err(Error::OutOfDomain(format!("need N >= 4 points, got {n}")));
    }
    let x = |k: usize| &points[(k - 1) % n];
    let values = CrossRatioVec::index_pairs(n)
        .into_iter()
        .map(|(i, j)| cross_ratio(x(i), x(i + 1), x(j + 1), x(j)))
        .collect::<Result<Vec<_>>>()?;
    CrossRatioVec::new(n, values)
}

/// Residuals `u_ij − (1 − Π_{m=i+1}^{j−1} Π_{n=j+1}^{i−1+N} u_mn)`, one per
/// coordinate in storage order.
pub fn constraint_residuals(u: &CrossRatioVec) -> Vec<Rational> {
    let n = u.n();
    CrossRatioVec::index_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let mut prod = Rational::one();
            for m in i + 1..j {
                for k in j + 1..i + n {
                    prod *= u.get(m, k);
                }
            }
            u.get(i, j) - (Rational::one() - prod)
        })
        .collect()
}

/// The five homogeneous quadrics `z0² − z0 z_k − z_{k+2} z_{k+3}` cutting out
/// the closure of the five-point set in RP⁵.
pub fn projective_residuals_of(z: &[Rational]) -> [Rational; 5] {
    assert_eq!(z.len(), 6);
    let z0sq = &z[0] * &z[0];
    // index k of z_k paired with the product z_a z_b
    const TERMS: [(usize, usize, usize); 5] = [(1, 3, 4), (2, 4, 5), (3, 5, 1), (4, 1, 2), (5, 2, 3)];
    TERMS.map(|(k, a, b)| &z0sq - &z[0] * &z[k] - &z[a] * &z[b])
}

pub fn projective_residuals(z: &ProjVec) -> [Rational; 5] {
    projective_residuals_of(&z.to_rationals())
}

/// Residuals `1 − z_k − z_a z_b` of the affine system in `(z1..z5)`.
pub fn affine_residuals(z: &[Rational]) -> [Rational; 5] {
    assert_eq!(z.len(), 5);
    const TERMS: [(usize, usize, usize); 5] = [(0, 2, 3), (1, 3, 4), (2, 4, 0), (3, 0, 1), (4, 1, 2)];
    TERMS.map(|(k, a, b)| Rational::one() - &z[k] - &z[a] * &z[b])
}

/// Jacobian of [`affine_residuals`] with respect to `(z1..z5)`.
pub fn affine_jacobian(z: &[Rational]) -> MatRat {
    assert_eq!(z.len(), 5);
    const TERMS: [(usize, usize, usize); 5] = [(0, 2, 3), (1, 3, 4), (2, 4, 0), (3, 0, 1), (4, 1, 2)];
    let mut j = MatRat::zeros(5, 5);
    for (row, &(k, a, b)) in TERMS.iter().enumerate() {
        j.set(row, k, -Rational::one());
        j.set(row, a, -z[b].clone());
        j.set(row, b, -z[a].clone());
    }
    j
}

/// `(N(N−3)/2, (N−1)!/2)`: number of cross-ratio coordinates and number of
/// connected components of the cross-ratio set.
pub fn counting(n: usize) -> Result<(usize, BigInt)> {
    if n < 4 {
        return Err(Error::OutOfDomain(format!("need N >= 4, got {n}")));
    }
    let fact: BigInt = (1..n).map(BigInt::from).product();
    Ok((n * (n - 3) / 2, fact / 2))
}
