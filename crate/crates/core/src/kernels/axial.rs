use crate::clifford::Paravector;
use crate::coeffring::Ring;
use crate::error::{Error, Result};

/// `re + im·u` for a fixed 1-vector `u` with `u² = -sq`.
///
/// Elements of `ℝ[s]` (or `ℝ[x]`) all have this shape, so products and
/// inverses inside the subalgebra cost a handful of scalar operations
/// instead of a full Clifford product.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Axial<R> {
    pub re: R,
    pub im: R,
}

impl<R: Ring> Axial<R> {
    pub fn new(re: R, im: R) -> Self {
        Axial { re, im }
    }

    pub fn real(re: R) -> Self {
        Axial { re, im: R::zero() }
    }

    pub fn one() -> Self {
        Self::real(R::one())
    }

    pub fn zero() -> Self {
        Self::real(R::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Axial::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn scale(&self, k: &R) -> Self {
        Axial::new(self.re.mul(k), self.im.mul(k))
    }

    pub fn mul(&self, o: &Self, sq: &R) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im).mul(sq));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Axial::new(re, im)
    }

    pub fn norm_sq(&self, sq: &R) -> R {
        self.re.mul(&self.re).add(&self.im.mul(&self.im).mul(sq))
    }

    /// Inverse, failing with [`Error::SingularKernel`] when the element is
    /// zero: exactly over exact rings, below `tol · scale` otherwise.
    pub fn inverse(&self, sq: &R, tol: f64, scale: f64) -> Result<Self> {
        let ns = self.norm_sq(sq);
        if !R::EXACT && ns.magnitude().sqrt() <= tol * scale {
            return Err(Error::SingularKernel);
        }
        let inv = ns.try_inverse(0.0).ok_or(Error::SingularKernel)?;
        Ok(Axial::new(self.re.mul(&inv), self.im.neg().mul(&inv)))
    }

    /// Successive powers `self^0 ..= self^k`.
    pub fn powers(&self, k: usize, sq: &R) -> Vec<Self> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::one());
        for i in 0..k {
            let next = if i == 0 {
                self.clone()
            } else {
                out[i].mul(self, sq)
            };
            out.push(next);
        }
        out
    }

    pub fn to_paravector(&self, axis: &[R]) -> Paravector<R> {
        Paravector::new(
            self.re.clone(),
            axis.iter()
                .map(|a| {
                    if a.is_zero() {
                        R::zero()
                    } else {
                        a.mul(&self.im)
                    }
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rational;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    #[test]
    fn matches_clifford_product() {
        let axis = vec![q(1), q(-2), q(3)];
        let sq = q(14);
        let a = Axial::new(q(2), q(-1));
        let b = Axial::new(q(-3), q(5));
        let prod = a.mul(&b, &sq).to_paravector(&axis).to_multivector();
        let direct = a
            .to_paravector(&axis)
            .to_multivector()
            .geometric_product(&b.to_paravector(&axis).to_multivector())
            .unwrap();
        assert_eq!(prod, direct);
        let inv = a.inverse(&sq, 0.0, 1.0).unwrap();
        assert_eq!(a.mul(&inv, &sq), Axial::one());
    }

    #[test]
    fn zero_is_singular() {
        let a = Axial::new(q(0), q(0));
        assert_eq!(a.inverse(&q(3), 0.0, 1.0), Err(Error::SingularKernel));
        let f = Axial::new(1e-20, 0.0);
        assert_eq!(f.inverse(&1.0, 1e-12, 1.0), Err(Error::SingularKernel));
    }
}
