use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::jet::{JetShape, MultiIndex};
use super::{rational_to_f64, Rational, Ring};
use crate::error::{Error, Result};

/// Exact rational jet stored as integer Taylor coefficients over one shared
/// positive denominator.
///
/// Semantically the same as `Jet<Rational>`, but products and sums run on
/// plain big integers; the common factor is removed once per operation
/// instead of after every scalar addition.
#[derive(Clone)]
pub struct QJet {
    shape: Option<Arc<JetShape>>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for QJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QJet")
            .field("order", &self.shape.as_ref().map(|s| s.order))
            .field("num", &self.num)
            .field("den", &self.den)
            .finish()
    }
}

impl QJet {
    pub fn constant(value: &Rational) -> Self {
        QJet {
            shape: None,
            num: vec![value.numer().clone()],
            den: value.denom().clone(),
        }
    }

    pub fn seed(var: usize, value: &Rational, num_vars: usize, order: usize) -> Result<Self> {
        if var >= num_vars {
            return Err(Error::VariableOutOfRange {
                index: var,
                num_vars,
            });
        }
        let shape = JetShape::get(num_vars, order);
        let mut num = vec![BigInt::zero(); shape.len()];
        num[0] = value.numer().clone();
        if order >= 1 {
            let idx = shape.index_of(&MultiIndex::unit(num_vars, var)).unwrap();
            num[idx] = value.denom().clone();
        }
        Ok(QJet {
            shape: Some(shape),
            num,
            den: value.denom().clone(),
        })
    }

    pub fn shape(&self) -> Option<&Arc<JetShape>> {
        self.shape.as_ref()
    }

    pub fn constant_term(&self) -> Rational {
        Rational::new(self.num[0].clone(), self.den.clone())
    }

    pub fn taylor_coeff(&self, alpha: &MultiIndex) -> Result<Rational> {
        if alpha.order() == 0 {
            return Ok(self.constant_term());
        }
        let shape = match &self.shape {
            None => return Ok(<Rational as Zero>::zero()),
            Some(s) => s,
        };
        if alpha.num_vars() != shape.num_vars {
            return Err(Error::DimensionMismatch {
                left: alpha.num_vars(),
                right: shape.num_vars,
            });
        }
        let i = shape.index_of(alpha).ok_or(Error::OrderExceeded {
            requested: alpha.order(),
            order: shape.order,
        })?;
        Ok(Rational::new(self.num[i].clone(), self.den.clone()))
    }

    pub fn derivative(&self, alpha: &MultiIndex) -> Result<Rational> {
        let c = self.taylor_coeff(alpha)?;
        Ok(c * Rational::from_integer(alpha.factorial()))
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

    /// Divides numerators and denominator by their common factor.
    fn normalize(mut self) -> Self {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return self;
                }
            }
        }
        for c in &mut self.num {
            if !c.is_zero() {
                *c /= &g;
            }
        }
        self.den /= &g;
        self
    }

    fn broadcast(&self, shape: &Arc<JetShape>) -> Vec<BigInt> {
        match &self.shape {
            Some(_) => self.num.clone(),
            None => {
                let mut v = vec![BigInt::zero(); shape.len()];
                v[0] = self.num[0].clone();
                v
            }
        }
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        self.check_shapes(other)?;
        let shape = self.shape.clone().or_else(|| other.shape.clone());
        let (fa, fb, den) = if self.den == other.den {
            (BigInt::one(), BigInt::one(), self.den.clone())
        } else {
            let g = self.den.gcd(&other.den);
            let fa = &other.den / &g;
            let fb = &self.den / &g;
            let den = &self.den * &fa;
            (fa, fb, den)
        };
        let (a, b) = match &shape {
            None => (self.num.clone(), other.num.clone()),
            Some(s) => (self.broadcast(s), other.broadcast(s)),
        };
        let num = a
            .into_iter()
            .zip(b)
            .map(|(x, y)| {
                let x = if fa.is_one() || x.is_zero() {
                    x
                } else {
                    x * &fa
                };
                let y = if fb.is_one() || y.is_zero() {
                    y
                } else {
                    y * &fb
                };
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Ok(QJet { shape, num, den }.normalize())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn nonzeros(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shapes(other)?;
        let den = &self.den * &other.den;
        let (shape, a, b) = match (&self.shape, &other.shape) {
            (None, _) | (_, None) => {
                let (c, jet) = if self.shape.is_none() {
                    (self, other)
                } else {
                    (other, self)
                };
                let k = &c.num[0];
                let num = jet
                    .num
                    .iter()
                    .map(|v| if v.is_zero() { BigInt::zero() } else { v * k })
                    .collect();
                return Ok(QJet {
                    shape: jet.shape.clone(),
                    num,
                    den,
                }
                .normalize());
            }
            (Some(s), Some(_)) => {
                if self.nonzeros() <= other.nonzeros() {
                    (s, &self.num, &other.num)
                } else {
                    (s, &other.num, &self.num)
                }
            }
        };
        let mut out = vec![BigInt::zero(); shape.len()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (bj, &k) in b.iter().zip(&shape.products[i]) {
                if !bj.is_zero() {
                    out[k as usize] += ai * bj;
                }
            }
        }
        Ok(QJet {
            shape: Some(shape.clone()),
            num: out,
            den,
        }
        .normalize())
    }

    /// Reciprocal. With `A` the integer numerator jet and `c = 1/A`, the
    /// scaled values `C_γ = c_γ A₀^{|γ|+1}` are integers satisfying
    /// `C_γ = -Σ_{α ≠ 0} A_α C_{γ-α} A₀^{|α|-1}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.num[0];
        if a0.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let shape = match &self.shape {
            None => {
                return Ok(QJet::constant(&Rational::new(self.den.clone(), a0.clone())));
            }
            Some(s) => s.clone(),
        };
        let order = shape.order;
        let mut pows = vec![BigInt::one()];
        for i in 0..=order {
            let next = &pows[i] * a0;
            pows.push(next);
        }
        let mut c = vec![BigInt::zero(); shape.len()];
        c[0] = BigInt::one();
        for d in 1..=order {
            let (lo, hi) = (shape.degree_start[d], shape.degree_start[d + 1]);
            for (i, ai) in self.num.iter().enumerate().skip(1) {
                let di = shape.degrees[i];
                if di > d {
                    break;
                }
                if ai.is_zero() {
                    continue;
                }
                let scaled = ai * &pows[di - 1];
                let (jlo, jhi) = (shape.degree_start[d - di], shape.degree_start[d - di + 1]);
                let row = &shape.products[i];
                for j in jlo..jhi {
                    if !c[j].is_zero() {
                        let k = row[j] as usize;
                        let (head, tail) = c.split_at_mut(k);
                        tail[0] -= &scaled * &head[j];
                    }
                }
            }
            debug_assert!(c[lo..hi].len() == hi - lo);
        }
        // common denominator A₀^{order+1}, then multiply by the old denominator
        let mut num: Vec<BigInt> = c
            .into_iter()
            .zip(&shape.degrees)
            .map(|(v, &d)| {
                if v.is_zero() {
                    v
                } else {
                    v * &pows[order - d] * &self.den
                }
            })
            .collect();
        let mut den = pows[order + 1].clone();
        if den.sign() == Sign::Minus {
            den = -den;
            for v in &mut num {
                *v = -std::mem::take(v);
            }
        }
        Ok(QJet {
            shape: Some(shape),
            num,
            den,
        }
        .normalize())
    }

    fn eq_semantic(&self, other: &Self) -> bool {
        let shape = self.shape.clone().or_else(|| other.shape.clone());
        if let (Some(a), Some(b)) = (&self.shape, &other.shape) {
            if !a.same(b) {
                return false;
            }
        }
        let (a, b) = match &shape {
            None => (self.num.clone(), other.num.clone()),
            Some(s) => (self.broadcast(s), other.broadcast(s)),
        };
        a.iter()
            .zip(&b)
            .all(|(x, y)| x * &other.den == y * &self.den)
    }
}

impl PartialEq for QJet {
    fn eq(&self, other: &Self) -> bool {
        self.eq_semantic(other)
    }
}

impl Ring for QJet {
    const EXACT: bool = true;

    fn zero() -> Self {
        QJet::constant(&<Rational as Zero>::zero())
    }
    fn one() -> Self {
        QJet::constant(&<Rational as One>::one())
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
        QJet {
            shape: self.shape.clone(),
            num: self.num.iter().map(|v| -v).collect(),
            den: self.den.clone(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        QJet::constant(q)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
    fn try_inverse(&self, _tol: f64) -> Option<Self> {
        self.reciprocal().ok()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.constant_term().abs())
    }
    fn scale_i64(&self, k: i64) -> Self {
        self.mul(&QJet::constant(&Rational::from_integer(k.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Jet;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn both(var: usize, v: Rational, nv: usize, order: usize) -> (QJet, Jet<Rational>) {
        (
            QJet::seed(var, &v, nv, order).unwrap(),
            Jet::seed(var, v, nv, order).unwrap(),
        )
    }

    fn agree(a: &QJet, b: &Jet<Rational>) {
        let shape = b.shape().unwrap();
        for alpha in shape.exponents() {
            assert_eq!(
                a.taylor_coeff(alpha).unwrap(),
                b.taylor_coeff(alpha).unwrap(),
                "{alpha}"
            );
        }
    }

    #[test]
    fn matches_generic_jet() {
        let (x, xg) = both(0, q(3, 7), 3, 4);
        let (y, yg) = both(1, q(-5, 4), 3, 4);
        let (z, zg) = both(2, q(1, 6), 3, 4);
        let c = QJet::constant(&q(2, 9));
        let cg = Jet::constant(q(2, 9));
        let f = x.mul(&x).add(&y.mul(&z)).sub(&c).mul(&x.add(&y));
        let fg = xg.mul(&xg).add(&yg.mul(&zg)).sub(&cg).mul(&xg.add(&yg));
        agree(&f, &fg);
        let r = f.reciprocal().unwrap();
        let rg = fg.reciprocal(0.0).unwrap();
        agree(&r, &rg);
        assert_eq!(r.mul(&f), QJet::one());
    }

    #[test]
    fn negative_constant_reciprocal() {
        let x = QJet::seed(0, &q(-2, 3), 1, 3).unwrap();
        let r = x.reciprocal().unwrap();
        assert!(r.den.is_positive());
        assert_eq!(r.mul(&x), QJet::one());
        assert_eq!(r.constant_term(), q(-3, 2));
    }

    #[test]
    fn zero_constant_is_rejected() {
        let x = QJet::seed(0, &q(0, 1), 2, 2).unwrap();
        assert_eq!(
            x.reciprocal().unwrap_err(),
            Error::NonInvertibleConstantTerm
        );
    }
}
