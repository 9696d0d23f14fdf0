//! Coefficient rings for the Clifford algebra.
//!
//! Everything Clifford-valued in this crate is generic over [`Ring`]. Three
//! rings are provided: exact big rationals ([`Rational`]), `f64`, and
//! truncated multivariate Taylor jets ([`Jet`]) over either of them. Running
//! the same kernel code over jets is how derivatives are obtained.

mod jet;
mod qjet;

pub use jet::{Jet, JetShape, MultiIndex};
pub use qjet::QJet;

use crate::error::Result;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational (always normalized, positive denominator).
pub type Rational = BigRational;

/// Default absolute tolerance for zero tests over floats.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

/// Commutative coefficient ring contract.
///
/// `is_zero` is a structural test (exactly zero). Tolerance-aware tests go
/// through `is_negligible`, which is exact for rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Whether zero tests are exact (rationals) rather than tolerance based.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` when the element is (numerically) zero.
    fn try_inverse(&self, tol: f64) -> Option<Self>;

    /// Absolute size used for residuals and relative tolerances. For jets
    /// this is the size of the constant term.
    fn magnitude(&self) -> f64;

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(v.clone()))
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn scale_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }
}

/// A truncated Taylor jet whose coefficients live in `Scalar`.
pub trait TaylorJet: Ring {
    type Scalar: Ring;

    fn lift(value: &Self::Scalar) -> Self;
    fn seed(var: usize, value: &Self::Scalar, num_vars: usize, order: usize) -> Result<Self>;
    /// `∂^α f` at the expansion point.
    fn derivative(&self, alpha: &MultiIndex) -> Result<Self::Scalar>;
}

/// Scalars that have a preferred jet type for differentiation.
pub trait JetScalar: Ring {
    type Jet: TaylorJet<Scalar = Self>;
}

impl<R: Ring> TaylorJet for Jet<R> {
    type Scalar = R;
    fn lift(value: &R) -> Self {
        Jet::constant(value.clone())
    }
    fn seed(var: usize, value: &R, num_vars: usize, order: usize) -> Result<Self> {
        Jet::seed(var, value.clone(), num_vars, order)
    }
    fn derivative(&self, alpha: &MultiIndex) -> Result<R> {
        Jet::derivative(self, alpha)
    }
}

impl TaylorJet for QJet {
    type Scalar = Rational;
    fn lift(value: &Rational) -> Self {
        QJet::constant(value)
    }
    fn seed(var: usize, value: &Rational, num_vars: usize, order: usize) -> Result<Self> {
        QJet::seed(var, value, num_vars, order)
    }
    fn derivative(&self, alpha: &MultiIndex) -> Result<Rational> {
        QJet::derivative(self, alpha)
    }
}

impl JetScalar for Rational {
    type Jet = QJet;
}

impl JetScalar for f64 {
    type Jet = Jet<f64>;
}

impl Ring for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inverse(&self, _tol: f64) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self += a * b;
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Ring for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn try_inverse(&self, tol: f64) -> Option<Self> {
        if self.abs() <= tol {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// Converts a rational to the nearest `f64`, staying accurate for huge
/// numerators and denominators where a naive `num / den` would overflow.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = q.numer();
    let den = q.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    // Scale to a quotient in [2^52, 2^54) then restore the exponent.
    let scaled = if shift > 53 {
        num / (den << (shift - 53) as usize)
    } else {
        (num << (53 - shift) as usize) / den
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi((shift - 53) as i32)
}

/// Exact rational from a finite float. Every finite `f64` is a dyadic rational.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Parses `p`, `p/q`, or a plain decimal such as `-0.125` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(p) = t.parse::<BigInt>() {
        return Some(Rational::from_integer(p));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut value: BigInt = digits.parse().ok()?;
    if negative {
        value = -value;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(value, num_traits::pow(ten, (-scale) as usize))
    })
}

/// `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
