//! Exact rational linear algebra over `BigRational`, finite matrix-group
//! closure, group-averaged quadratic forms and a floating point factorization
//! of such a form.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix6, Vector6};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// 6x6 float matrix (the factor `P` and the orthogonal transforms built from it).
pub type MatFloat = Matrix6<f64>;

/// Default element cap for [`group_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    // `ToPrimitive` for ratios of big integers keeps full precision even when
    // numerator and denominator overflow f64 separately.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dense exact matrix. Square 6x6 for the group work, arbitrary shape for
/// Jacobians.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatRat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatRat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatRat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        MatRat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        MatRat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        MatRat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &MatRat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatRat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `vᵗ · M · v`.
    pub fn quad_form(&self, v: &[Rational]) -> Rational {
        self.mul_vec(v).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        det
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        assert!(self.is_square());
        (1..=self.rows)
            .map(|k| {
                let sub: Vec<Vec<Rational>> = (0..k).map(|i| self.row(i)[..k].to_vec()).collect();
                MatRat::from_rows(sub).determinant()
            })
            .collect()
    }

    pub fn to_f64(&self) -> MatFloat {
        assert_eq!((self.rows, self.cols), (6, 6), "float twin is 6x6 only");
        MatFloat::from_fn(|i, j| rat_to_f64(self.get(i, j)))
    }
}

impl Mul for &MatRat {
    type Output = MatRat;

    fn mul(self, rhs: &MatRat) -> MatRat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = MatRat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for MatRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatRat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MatRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "{}", line.join(" "))?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// A point of RP⁵ stored as its canonical integer representative: entries
/// coprime, first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjVec([BigInt; 6]);

impl ProjVec {
    /// Canonicalizes; `None` for the zero vector.
    pub fn new(entries: [BigInt; 6]) -> Option<Self> {
        let g = entries.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return None;
        }
        let first_negative = entries.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
        let g = if first_negative { -g } else { g };
        Some(ProjVec(entries.map(|x| x / &g)))
    }

    pub fn from_i64(entries: [i64; 6]) -> Option<Self> {
        Self::new(entries.map(BigInt::from))
    }

    /// Clears denominators and canonicalizes.
    pub fn from_rationals(entries: &[Rational]) -> Option<Self> {
        assert_eq!(entries.len(), 6);
        let l = entries.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = entries.iter().map(|x| (x * &l).to_integer()).collect();
        Self::new(ints.try_into().expect("six entries"))
    }

    pub fn entries(&self) -> &[BigInt; 6] {
        &self.0
    }

    pub fn canonicalize(&self) -> Self {
        Self::new(self.0.clone()).expect("ProjVec is never zero")
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn to_f64(&self) -> Vector6<f64> {
        Vector6::from_fn(|i, _| self.0[i].to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ProjVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Finite matrix group in BFS discovery order, with O(1) membership.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<MatRat>,
    index: HashMap<MatRat, usize>,
}

impl FiniteGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &MatRat) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &MatRat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn elements(&self) -> &[MatRat] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MatRat> {
        self.elements.iter()
    }
}

/// Multiplicative closure of `generators`, breadth first from the identity
/// with right multiplication by each generator in the given order.
pub fn group_closure(generators: &[MatRat], cap: usize) -> Result<FiniteGroup> {
    let n = generators.first().map_or(0, MatRat::rows);
    assert!(generators.iter().all(|g| g.is_square() && g.rows() == n), "generators must be square and same size");
    let id = MatRat::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let prod = &elements[i] * g;
            if index.contains_key(&prod) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::ClosureOverflow { cap });
            }
            index.insert(prod.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(prod);
        }
    }
    Ok(FiniteGroup { elements, index })
}

pub fn involution_check(m: &MatRat) -> bool {
    m.is_square() && (m * m) == MatRat::identity(m.rows())
}

/// `scale · Σ_g gᵗ g`.
pub fn invariant_form<'a, I>(group: I, scale: &Rational) -> MatRat
where
    I: IntoIterator<Item = &'a MatRat>,
{
    let mut iter = group.into_iter().peekable();
    let n = iter.peek().expect("group must be nonempty").rows();
    let sum = iter.fold(MatRat::zeros(n, n), |acc, g| acc.add(&(&g.transpose() * g)));
    sum.scale(scale)
}

/// Upper-triangular `P` with positive diagonal and `Pᵗ P = q`.
///
/// Positive definiteness is established exactly from the leading principal
/// minors before any floating point work.
pub fn factor_form(q: &MatRat) -> Result<MatFloat> {
    if !q.is_symmetric() || q.rows() != 6 {
        return Err(Error::OutOfDomain("factor_form needs a symmetric 6x6 matrix".into()));
    }
    for (k, minor) in q.leading_minors().into_iter().enumerate() {
        if !minor.is_positive() {
            return Err(Error::NotPositiveDefinite { index: k + 1, minor: minor.to_string() });
        }
    }
    let chol = nalgebra::Cholesky::new(q.to_f64()).ok_or_else(|| Error::NotPositiveDefinite {
        index: 0,
        minor: "float Cholesky breakdown".into(),
    })?;
    Ok(chol.l().transpose())
}

/// Exact rank by fraction-free elimination: rows are scaled to integers and
/// each elimination step is `p·rowᵢ − a·row_k` followed by removing the row
/// content, so no division ever leaves the integers.
pub fn rank_exact(m: &MatRat) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = &pivot * &*x - &a * pv;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x /= &g);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessellation::symmetry::{x2, x5};

    #[test]
    fn x5_generates_cyclic_group_of_order_five() {
        let g = group_closure(&[x5()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.len(), 5);
        // oracle: X5^5 = I and no smaller power is
        let mut p = MatRat::identity(6);
        for k in 1..=5 {
            p = &p * &x5();
            assert_eq!(p == MatRat::identity(6), k == 5);
        }
    }

    #[test]
    fn involutions() {
        assert!(involution_check(&x2()));
        assert!(!involution_check(&x5()));
        assert!(involution_check(&MatRat::identity(6)));
        assert!(!involution_check(&MatRat::zeros(2, 3)));
    }

    #[test]
    fn closure_overflow_reported() {
        // [[1,1],[0,1]] has infinite order
        let shear = MatRat::from_int_rows(&[[1, 1], [0, 1]]);
        match group_closure(&[shear], 50) {
            Err(Error::ClosureOverflow { cap }) => assert_eq!(cap, 50),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn closure_is_a_group() {
        let g = group_closure(&[x5(), x2()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.len(), 120);
        assert!(g.contains(&MatRat::identity(6)));
        for a in g.iter().step_by(7) {
            for b in g.iter().step_by(5) {
                assert!(g.contains(&(a * b)));
            }
            // some power of a is the identity, so a⁻¹ is in the set
            let mut p = a.clone();
            let mut found = false;
            for _ in 0..120 {
                if g.contains(&p) && (&p * a) == MatRat::identity(6) {
                    found = true;
                    break;
                }
                p = &p * a;
            }
            assert!(found);
        }
    }

    #[test]
    fn invariant_form_of_trivial_group() {
        let id = MatRat::identity(6);
        assert_eq!(invariant_form([&id], &int(1)), id);
    }

    #[test]
    fn factor_identity_and_diagonal() {
        let p = factor_form(&MatRat::identity(6)).unwrap();
        assert!((p - MatFloat::identity()).abs().max() < 1e-15);
        let mut d = MatRat::identity(6);
        d.set(0, 0, int(4));
        let p = factor_form(&d).unwrap();
        let mut expect = MatFloat::identity();
        expect[(0, 0)] = 2.0;
        assert!((p - expect).abs().max() < 1e-15);
    }

    #[test]
    fn factor_rejects_indefinite() {
        let mut d = MatRat::identity(6);
        d.set(3, 3, int(-1));
        match factor_form(&d) {
            Err(Error::NotPositiveDefinite { index, .. }) => assert_eq!(index, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank_exact(&MatRat::identity(6)), 6);
        assert_eq!(rank_exact(&MatRat::zeros(5, 5)), 0);
        let m = MatRat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(1)],
            vec![int(1), rat(2, 3), int(2)],
            vec![int(0), int(1), rat(-7, 5)],
        ]);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn determinant_small() {
        let m = MatRat::from_int_rows(&[[2, 1], [7, 4]]);
        assert_eq!(m.determinant(), int(1));
        let s = MatRat::from_int_rows(&[[0, 1], [1, 0]]);
        assert_eq!(s.determinant(), int(-1));
    }

    #[test]
    fn projvec_canonical_form() {
        let v = ProjVec::from_i64([0, -4, 6, 0, 2, 8]).unwrap();
        assert_eq!(v, ProjVec::from_i64([0, 2, -3, 0, -1, -4]).unwrap());
        assert_eq!(v.entries()[1], BigInt::from(2));
        assert!(ProjVec::from_i64([0; 6]).is_none());
        let r = ProjVec::from_rationals(&[rat(1, 2), rat(1, 3), int(0), int(0), int(0), int(1)]).unwrap();
        assert_eq!(r, ProjVec::from_i64([3, 2, 0, 0, 0, 6]).unwrap());
    }
}
