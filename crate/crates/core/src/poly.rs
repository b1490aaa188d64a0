//! Polynomials over Q in one variable (`UPoly`, in `v`) and two variables
//! (`BiPoly`, stored as a polynomial in `u` with `UPoly` coefficients), with
//! exact division and GCD.
//!
//! Only what the closed-square face maps need: ring arithmetic, evaluation at
//! rational points, and the GCD of a handful of low-degree polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactlin::Rational;

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        UPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.0.len() - 1;
        let lead_inv = Rational::one() / d.lead();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Exact quotient; panics when `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic GCD (zero if both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - rhs.0.get(i).unwrap_or(&z)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// Polynomial in `u` whose coefficients are polynomials in `v`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly(Vec<UPoly>);

impl BiPoly {
    fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![UPoly::constant(c)])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(crate::exactlin::int(c))
    }

    pub fn u() -> Self {
        BiPoly(vec![UPoly::default(), UPoly::constant(Rational::one())])
    }

    pub fn v() -> Self {
        BiPoly(vec![UPoly::var()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_u(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Total degree.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| d + i)).max()
    }

    fn lead_u(&self) -> &UPoly {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c.eval(v))
    }

    /// Coefficient table `c[i][j]` of `u^i v^j` in double precision.
    pub fn float_coeffs(&self) -> Vec<Vec<f64>> {
        self.0
            .iter()
            .map(|c| c.coeffs().iter().map(crate::exactlin::rat_to_f64).collect())
            .collect()
    }

    fn map_coeffs(&self, f: impl Fn(&UPoly) -> UPoly) -> Self {
        Self::new(self.0.iter().map(f).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    fn mul_upoly(&self, c: &UPoly) -> Self {
        self.map_coeffs(|p| p * c)
    }

    fn shift_u(&self, k: usize) -> Self {
        let mut coeffs = vec![UPoly::default(); k];
        coeffs.extend(self.0.iter().cloned());
        Self::new(coeffs)
    }

    /// GCD in Q[v] of the `u`-coefficients.
    fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::default(), |g, c| g.gcd(c))
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.map_coeffs(|p| p.exact_div(&c))
    }

    /// `lc(b)^k · a mod b` in Q[v][u].
    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.degree_u().expect("nonzero divisor");
        let lb = b.lead_u().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree_u() {
            if dr < db {
                break;
            }
            let lr = r.lead_u().clone();
            r = &r.mul_upoly(&lb) - &b.mul_upoly(&lr).shift_u(dr - db);
        }
        r
    }

    /// Normalized so the leading coefficient (highest power of `u`, then of
    /// `v`) is one.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lead_u().lead()))
    }

    /// GCD over Q by the primitive polynomial remainder sequence in `u` with
    /// contents taken in Q[v]. Result is normalized.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree_u() < b.degree_u() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.degree_u() == Some(0) {
                // b is a primitive polynomial in v alone, hence a unit
                break BiPoly::from_int(1);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive_part();
        };
        g.mul_upoly(&content).normalized()
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> BiPoly {
        let dd = d.degree_u().expect("division by zero polynomial");
        let ld = d.lead_u().clone();
        let mut r = self.clone();
        let mut q = BiPoly::default();
        while let Some(dr) = r.degree_u() {
            assert!(dr >= dd, "inexact bivariate division");
            let c = r.lead_u().exact_div(&ld);
            let term = BiPoly::new(vec![c]).shift_u(dr - dd);
            r = &r - &(&term * d);
            q = &q + &term;
        }
        q
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = UPoly::default();
        BiPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = UPoly::default();
        BiPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - rhs.0.get(i).unwrap_or(&z)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::default();
        }
        let mut out = vec![UPoly::default(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

/// Minimal commutative-ring interface so the same rational-map formulas can
/// be evaluated on numbers and on polynomials.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
}

impl Ring for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for BiPoly {
    fn ring_zero() -> Self {
        BiPoly::default()
    }
    fn ring_one() -> Self {
        BiPoly::from_int(1)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}
