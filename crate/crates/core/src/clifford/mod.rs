//! Real Clifford algebra `ℝ_n` with generators `e_i e_j + e_j e_i = -2δ_ij`.
//!
//! Multivectors are stored densely: `2^n` coefficients indexed by blade
//! bitmask (bit `i` set means `e_{i+1}` is present, index 0 is the scalar
//! part). Paravectors `x_0 + x_1 e_1 + ⋯ + x_n e_n` have their own type
//! because most kernel arithmetic stays inside that subspace.

mod paravector;
mod text;

pub use paravector::{same_sphere, same_sphere_tol, Paravector};
pub use text::{
    format_multivector, parse_multivector, parse_paravector, BladeTerm, MultivectorJson, TextCoeff,
};

use crate::coeffring::Ring;
use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 15;

/// Sign of `e_a e_b` for blade bitmasks `a`, `b`: reordering transpositions
/// plus one `-1` per generator squared away.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> i64 {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of generators in a blade.
pub fn blade_grade(blade: usize) -> usize {
    blade.count_ones() as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<R> {
    n: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> Multivector<R> {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        Multivector {
            n,
            coeffs: vec![R::zero(); 1 << n],
        }
    }

    pub fn try_zero(n: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self::zero(n))
    }

    pub fn scalar(n: usize, value: R) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = value;
        m
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    /// The generator `e_i`, `1 ≤ i ≤ n`.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "generator e{i} not in R_{n}");
        Self::blade(n, 1 << (i - 1), R::one())
    }

    pub fn blade(n: usize, mask: usize, value: R) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[mask] = value;
        m
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<R>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: coeffs.len(),
                right: 1 << n,
            });
        }
        Ok(Multivector { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &R {
        &self.coeffs[mask]
    }

    pub fn scalar_part(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn set(&mut self, mask: usize, value: R) {
        self.coeffs[mask] = value;
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip(other, R::add))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip(other, R::sub))
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if b.is_zero() { a.clone() } else { f(a, b) })
            .collect();
        Multivector { n: self.n, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|c| c.mul(k))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Multivector<S> {
        Multivector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { S::zero() } else { f(c) })
                .collect(),
        }
    }

    /// Geometric product. Zero coefficients are skipped on both sides.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        let rhs: Vec<(usize, &R)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let neg = ca.neg();
            for &(b, cb) in &rhs {
                let factor = if blade_sign(a, b) > 0 { ca } else { &neg };
                out.coeffs[a ^ b].add_mul_assign(factor, cb);
            }
        }
        Ok(out)
    }

    /// Product of a chain of factors, left to right.
    pub fn product_of(factors: &[&Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::InvalidParams("empty product".into()))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, f| acc.geometric_product(f))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let m = c.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Largest blade grade carrying a nonzero coefficient.
    pub fn max_grade(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| blade_grade(m))
            .max()
            .unwrap_or(0)
    }

    /// Projects onto grades 0 and 1. Fails if anything else is nonzero.
    pub fn to_paravector(&self) -> Result<Paravector<R>> {
        if self.max_grade() > 1 {
            return Err(Error::InvalidParams(
                "multivector has components above grade 1".into(),
            ));
        }
        Ok(Paravector::new(
            self.coeffs[0].clone(),
            (0..self.n).map(|i| self.coeffs[1 << i].clone()).collect(),
        ))
    }
}

impl<R: Ring> std::ops::Add for &Multivector<R> {
    type Output = Multivector<R>;
    fn add(self, rhs: Self) -> Multivector<R> {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl<R: Ring> std::ops::Sub for &Multivector<R> {
    type Output = Multivector<R>;
    fn sub(self, rhs: Self) -> Multivector<R> {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl<R: Ring> std::ops::Mul for &Multivector<R> {
    type Output = Multivector<R>;
    fn mul(self, rhs: Self) -> Multivector<R> {
        self.geometric_product(rhs).expect("dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rational;

    type Mv = Multivector<Rational>;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let e1 = Mv::generator(3, 1);
        assert_eq!(&e1 * &e1, Mv::scalar(3, q(-1)));
    }

    #[test]
    fn e12_times_e1_is_e2() {
        // e1 e2 e1 = -e1 e1 e2 = e2
        let e12 = Mv::blade(3, 0b011, q(1));
        let e1 = Mv::generator(3, 1);
        assert_eq!(&e12 * &e1, Mv::generator(3, 2));
        // e1 e12 = e1 e1 e2 = -e2
        assert_eq!(&e1 * &e12, Mv::blade(3, 0b010, q(-1)));
    }

    #[test]
    fn difference_of_squares() {
        let one = Mv::one(2);
        let e1 = Mv::generator(2, 1);
        assert_eq!(&(&one + &e1) * &(&one - &e1), Mv::scalar(2, q(2)));
    }

    #[test]
    fn anticommutation_all_pairs() {
        let n = 6;
        for i in 1..=n {
            for j in 1..=n {
                let ei = Mv::generator(n, i);
                let ej = Mv::generator(n, j);
                let anti = &(&ei * &ej) + &(&ej * &ei);
                let expected = if i == j {
                    Mv::scalar(n, q(-2))
                } else {
                    Mv::zero(n)
                };
                assert_eq!(anti, expected, "e{i} e{j}");
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = Mv::one(2);
        let b = Mv::one(3);
        assert!(matches!(
            a.geometric_product(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Mv::try_zero(16).is_err());
    }

    #[test]
    fn blade_sign_matches_explicit_reordering() {
        // e2 e1 = -e12 ; e3 e12 = e12 e3 = e123 (two transpositions)
        assert_eq!(blade_sign(0b010, 0b001), -1);
        assert_eq!(blade_sign(0b100, 0b011), 1);
        assert_eq!(blade_sign(0b011, 0b011), -1); // e12 e12 = -1
    }
}
