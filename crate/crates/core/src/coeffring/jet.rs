use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a partial derivative, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u8>);

impl MultiIndex {
    pub fn zero(num_vars: usize) -> Self {
        MultiIndex(vec![0; num_vars])
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.0.len(), other.0.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α! = α_0! α_1! ⋯`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| {
            (1..=e as u64).fold(acc, |acc, k| acc * k)
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Index tables for jets with a fixed number of variables and truncation order.
///
/// Multi-indices are stored in graded order, so all indices of total degree
/// `≤ d` form a prefix of length `degree_start[d + 1]`.
pub struct JetShape {
    pub(crate) num_vars: usize,
    pub(crate) order: usize,
    exponents: Vec<MultiIndex>,
    pub(crate) degrees: Vec<usize>,
    pub(crate) degree_start: Vec<usize>,
    lookup: HashMap<MultiIndex, usize>,
    /// `products[i][j]` is the index of `exponents[i] + exponents[j]`, for
    /// every `j` in the prefix of degree `≤ order - degree(i)`.
    pub(crate) products: Vec<Vec<u32>>,
}

impl fmt::Debug for JetShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetShape")
            .field("num_vars", &self.num_vars)
            .field("order", &self.order)
            .field("len", &self.exponents.len())
            .finish()
    }
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
    if parts == 1 {
        prefix.push(total as u8);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first as u8);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

impl JetShape {
    fn build(num_vars: usize, order: usize) -> Self {
        let mut exponents = Vec::new();
        let mut degree_start = Vec::with_capacity(order + 2);
        let mut degrees = Vec::new();
        for d in 0..=order {
            degree_start.push(exponents.len());
            let before = exponents.len();
            compositions(
                d,
                num_vars,
                &mut Vec::with_capacity(num_vars),
                &mut exponents,
            );
            degrees.extend(std::iter::repeat_n(d, exponents.len() - before));
        }
        degree_start.push(exponents.len());
        let lookup: HashMap<MultiIndex, usize> = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let products = exponents
            .iter()
            .zip(&degrees)
            .map(|(a, &da)| {
                exponents[..degree_start[order - da + 1]]
                    .iter()
                    .map(|b| lookup[&a.plus(b)] as u32)
                    .collect()
            })
            .collect();
        JetShape {
            num_vars,
            order,
            exponents,
            degrees,
            degree_start,
            lookup,
            products,
        }
    }

    /// Shared, cached shape for `(num_vars, order)`.
    pub fn get(num_vars: usize, order: usize) -> Arc<JetShape> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<JetShape>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(shape) = cache.lock().unwrap().get(&(num_vars, order)) {
            return shape.clone();
        }
        // Built outside the lock: large shapes take a while.
        let shape = Arc::new(JetShape::build(num_vars, order));
        cache
            .lock()
            .unwrap()
            .entry((num_vars, order))
            .or_insert(shape)
            .clone()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }

    pub fn exponents(&self) -> &[MultiIndex] {
        &self.exponents
    }

    pub(crate) fn same(&self, other: &JetShape) -> bool {
        self.num_vars == other.num_vars && self.order == other.order
    }
}

/// Truncated multivariate Taylor expansion.
///
/// Coefficients are Taylor coefficients `∂^α f / α!` at the base point, so
/// products are plain truncated convolutions. A jet without a shape is a
/// constant; it combines with any shaped jet by broadcasting, which lets
/// `Ring::zero()` and `Ring::one()` exist without knowing the shape.
#[derive(Clone)]
pub struct Jet<R> {
    shape: Option<Arc<JetShape>>,
    coeffs: Vec<R>,
}

impl<R: fmt::Debug> fmt::Debug for Jet<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            None => write!(f, "Jet::const({:?})", self.coeffs[0]),
            Some(s) => f
                .debug_struct("Jet")
                .field("num_vars", &s.num_vars)
                .field("order", &s.order)
                .field("coeffs", &self.coeffs)
                .finish(),
        }
    }
}

impl<R: Ring> Jet<R> {
    pub fn constant(value: R) -> Self {
        Jet {
            shape: None,
            coeffs: vec![value],
        }
    }

    pub fn zeros(shape: Arc<JetShape>) -> Self {
        let coeffs = vec![R::zero(); shape.len()];
        Jet {
            shape: Some(shape),
            coeffs,
        }
    }

    /// `value + t_var` in `num_vars` variables, truncated at `order`.
    pub fn seed(var: usize, value: R, num_vars: usize, order: usize) -> Result<Self> {
        if var >= num_vars {
            return Err(Error::VariableOutOfRange {
                index: var,
                num_vars,
            });
        }
        let shape = JetShape::get(num_vars, order);
        let mut jet = Jet::zeros(shape.clone());
        jet.coeffs[0] = value;
        if order >= 1 {
            let idx = shape.index_of(&MultiIndex::unit(num_vars, var)).unwrap();
            jet.coeffs[idx] = R::one();
        }
        Ok(jet)
    }

    /// Builds a jet from explicit Taylor coefficients.
    pub fn from_taylor(shape: Arc<JetShape>, terms: &[(MultiIndex, R)]) -> Result<Self> {
        let mut jet = Jet::zeros(shape.clone());
        for (alpha, c) in terms {
            let idx = shape.index_of(alpha).ok_or(Error::OrderExceeded {
                requested: alpha.order(),
                order: shape.order,
            })?;
            jet.coeffs[idx] = c.clone();
        }
        Ok(jet)
    }

    pub fn shape(&self) -> Option<&Arc<JetShape>> {
        self.shape.as_ref()
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    /// Taylor coefficient `∂^α f / α!`.
    pub fn taylor_coeff(&self, alpha: &MultiIndex) -> Result<R> {
        if alpha.order() == 0 {
            return Ok(self.coeffs[0].clone());
        }
        match &self.shape {
            None => Ok(R::zero()),
            Some(shape) => {
                if alpha.num_vars() != shape.num_vars {
                    return Err(Error::DimensionMismatch {
                        left: alpha.num_vars(),
                        right: shape.num_vars,
                    });
                }
                match shape.index_of(alpha) {
                    Some(i) => Ok(self.coeffs[i].clone()),
                    None => Err(Error::OrderExceeded {
                        requested: alpha.order(),
                        order: shape.order,
                    }),
                }
            }
        }
    }

    /// `∂^α f` at the base point.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<R> {
        let c = self.taylor_coeff(alpha)?;
        if c.is_zero() {
            return Ok(c);
        }
        Ok(c.mul(&R::from_bigint(&alpha.factorial())))
    }

    fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Jet {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_shapes(&self, other: &Self) -> Result<()> {
        if let (Some(a), Some(b)) = (&self.shape, &other.shape) {
            if !a.same(b) {
                return Err(Error::JetShapeMismatch(
                    a.num_vars, a.order, b.num_vars, b.order,
                ));
            }
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        self.check_shapes(other)?;
        Ok(match (&self.shape, &other.shape) {
            (None, None) => Jet::constant(f(&self.coeffs[0], &other.coeffs[0])),
            (Some(s), None) => {
                let zero = R::zero();
                let mut coeffs: Vec<R> = self.coeffs.iter().map(|a| f(a, &zero)).collect();
                coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
                Jet {
                    shape: Some(s.clone()),
                    coeffs,
                }
            }
            (None, Some(s)) => {
                let zero = R::zero();
                let mut coeffs: Vec<R> = other.coeffs.iter().map(|b| f(&zero, b)).collect();
                coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
                Jet {
                    shape: Some(s.clone()),
                    coeffs,
                }
            }
            (Some(s), Some(_)) => Jet {
                shape: Some(s.clone()),
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(a, b)| f(a, b))
                    .collect(),
            },
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    fn nonzeros(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Truncated Cauchy product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shapes(other)?;
        let (shape, a, b) = match (&self.shape, &other.shape) {
            (None, _) => {
                let c = &self.coeffs[0];
                return Ok(other.map(|b| c.mul(b)));
            }
            (_, None) => {
                let c = &other.coeffs[0];
                return Ok(self.map(|a| a.mul(c)));
            }
            (Some(s), Some(_)) => {
                // Outer loop over the sparser factor.
                if self.nonzeros() <= other.nonzeros() {
                    (s, &self.coeffs, &other.coeffs)
                } else {
                    (s, &other.coeffs, &self.coeffs)
                }
            }
        };
        let mut out = vec![R::zero(); shape.len()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (bj, &k) in b.iter().zip(&shape.products[i]) {
                if !bj.is_zero() {
                    out[k as usize].add_mul_assign(ai, bj);
                }
            }
        }
        Ok(Jet {
            shape: Some(shape.clone()),
            coeffs: out,
        })
    }

    /// Reciprocal by order-by-order recursion on total degree.
    pub fn reciprocal(&self, tol: f64) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse(tol)
            .ok_or(Error::NonInvertibleConstantTerm)?;
        let shape = match &self.shape {
            None => return Ok(Jet::constant(inv0)),
            Some(s) => s.clone(),
        };
        let neg_inv0 = inv0.neg();
        let mut out = vec![R::zero(); shape.len()];
        out[0] = inv0;
        for d in 1..=shape.order {
            let (lo, hi) = (shape.degree_start[d], shape.degree_start[d + 1]);
            for (i, ai) in self.coeffs.iter().enumerate().skip(1) {
                let di = shape.degrees[i];
                if di > d {
                    break;
                }
                if ai.is_zero() {
                    continue;
                }
                let (jlo, jhi) = (shape.degree_start[d - di], shape.degree_start[d - di + 1]);
                let row = &shape.products[i];
                for j in jlo..jhi {
                    if !out[j].is_zero() {
                        let k = row[j] as usize;
                        let (head, tail) = out.split_at_mut(k);
                        tail[0].add_mul_assign(ai, &head[j]);
                    }
                }
            }
            for c in &mut out[lo..hi] {
                if !c.is_zero() {
                    *c = c.mul(&neg_inv0);
                }
            }
        }
        Ok(Jet {
            shape: Some(shape),
            coeffs: out,
        })
    }
}

impl<R: Ring> PartialEq for Jet<R> {
    fn eq(&self, other: &Self) -> bool {
        match (&self.shape, &other.shape) {
            (Some(a), Some(b)) => a.same(b) && self.coeffs == other.coeffs,
            (None, None) => self.coeffs[0] == other.coeffs[0],
            (Some(_), None) => {
                self.coeffs[0] == other.coeffs[0] && self.coeffs[1..].iter().all(R::is_zero)
            }
            (None, Some(_)) => {
                self.coeffs[0] == other.coeffs[0] && other.coeffs[1..].iter().all(R::is_zero)
            }
        }
    }
}

impl<R: Ring> Ring for Jet<R> {
    const EXACT: bool = R::EXACT;
    fn zero() -> Self {
        Jet::constant(R::zero())
    }
    fn one() -> Self {
        Jet::constant(R::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("jet shape mismatch")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("jet shape mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("jet shape mismatch")
    }
    fn neg(&self) -> Self {
        self.map(R::neg)
    }
    fn from_rational(q: &Rational) -> Self {
        Jet::constant(R::from_rational(q))
    }
    fn from_i64(v: i64) -> Self {
        Jet::constant(R::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }
    fn try_inverse(&self, tol: f64) -> Option<Self> {
        self.reciprocal(tol).ok()
    }
    fn magnitude(&self) -> f64 {
        self.coeffs[0].magnitude()
    }
    fn add_assign(&mut self, rhs: &Self) {
        if rhs.shape.is_none() || self.shape.is_none() {
            *self = self.add(rhs);
            return;
        }
        self.check_shapes(rhs).expect("jet shape mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                a.add_assign(b);
            }
        }
    }
    fn scale_i64(&self, k: i64) -> Self {
        let c = R::from_i64(k);
        self.map(|a| a.mul(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    #[test]
    fn seed_and_square() {
        let t = Jet::seed(0, q(3), 2, 2).unwrap();
        let sq = t.mul(&t);
        assert_eq!(sq.taylor_coeff(&MultiIndex(vec![0, 0])).unwrap(), q(9));
        assert_eq!(sq.taylor_coeff(&MultiIndex(vec![1, 0])).unwrap(), q(6));
        assert_eq!(sq.taylor_coeff(&MultiIndex(vec![2, 0])).unwrap(), q(1));
        assert_eq!(sq.taylor_coeff(&MultiIndex(vec![1, 1])).unwrap(), q(0));
    }

    #[test]
    fn order_zero_seed_is_constant() {
        let t = Jet::seed(1, q(5), 2, 0).unwrap();
        assert_eq!(t.shape().unwrap().len(), 1);
        assert_eq!(t, Jet::constant(q(5)));
    }

    #[test]
    fn seed_out_of_range() {
        assert!(matches!(
            Jet::seed(2, q(0), 2, 1),
            Err(Error::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn difference_of_squares_and_truncation() {
        let t = Jet::seed(0, q(0), 1, 2).unwrap();
        let one = Jet::<Rational>::one();
        let p = one.add(&t).mul(&one.sub(&t));
        let expected = Jet::from_taylor(
            JetShape::get(1, 2),
            &[(MultiIndex(vec![0]), q(1)), (MultiIndex(vec![2]), q(-1))],
        )
        .unwrap();
        assert_eq!(p, expected);

        let t1 = Jet::seed(0, q(0), 1, 1).unwrap();
        assert!(t1.mul(&t1).is_zero());
    }

    #[test]
    fn constant_times_jet_scales() {
        let t = Jet::seed(0, q(1), 2, 2).unwrap();
        let c = Jet::constant(q(3));
        assert_eq!(c.mul(&t), t.scale_i64(3));
    }

    #[test]
    fn geometric_series_reciprocal() {
        let t = Jet::seed(0, q(0), 1, 3).unwrap();
        let r = Jet::<Rational>::one().sub(&t).reciprocal(0.0).unwrap();
        for k in 0..=3u8 {
            assert_eq!(r.taylor_coeff(&MultiIndex(vec![k])).unwrap(), q(1));
        }
        assert_eq!(
            Jet::constant(q(2)).reciprocal(0.0).unwrap(),
            Jet::constant(Rational::new(1.into(), 2.into()))
        );
        assert_eq!(
            t.reciprocal(0.0).unwrap_err(),
            Error::NonInvertibleConstantTerm
        );
    }

    #[test]
    fn polynomial_derivatives() {
        // x0^2 + x1^2 at (1, 2)
        let x0 = Jet::seed(0, q(1), 2, 2).unwrap();
        let x1 = Jet::seed(1, q(2), 2, 2).unwrap();
        let f = x0.mul(&x0).add(&x1.mul(&x1));
        assert_eq!(f.derivative(&MultiIndex(vec![1, 0])).unwrap(), q(2));
        assert_eq!(f.derivative(&MultiIndex(vec![0, 1])).unwrap(), q(4));
        assert_eq!(f.derivative(&MultiIndex(vec![2, 0])).unwrap(), q(2));
        assert!(matches!(
            f.derivative(&MultiIndex(vec![3, 0])),
            Err(Error::OrderExceeded { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = Jet::seed(0, q(1), 2, 2).unwrap();
        let b = Jet::seed(0, q(1), 2, 3).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::JetShapeMismatch(..))));
    }

    #[test]
    fn shape_prefix_sizes() {
        let s = JetShape::get(8, 5);
        // C(8 + 5, 5)
        assert_eq!(s.len(), 1287);
        assert_eq!(s.degree_start[6], 1287);
        assert!(s.exponents().iter().all(|e| e.order() <= 5));
    }
}
