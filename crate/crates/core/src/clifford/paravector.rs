use super::{Multivector, MAX_DIM};
use crate::coeffring::{Ring, DEFAULT_ZERO_TOL};
use crate::error::{Error, Result};

/// `x = x_0 + x_1 e_1 + ⋯ + x_n e_n`, a point of `ℝ^{n+1}` inside `ℝ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector<R> {
    x0: R,
    xu: Vec<R>,
}

impl<R: Ring> Paravector<R> {
    pub fn new(x0: R, xu: Vec<R>) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&xu.len()),
            "dimension {} out of range",
            xu.len()
        );
        Paravector { x0, xu }
    }

    /// From `[x0, x1, …, xn]`.
    pub fn from_components(components: Vec<R>) -> Result<Self> {
        let n = components.len().saturating_sub(1);
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        let mut it = components.into_iter();
        let x0 = it.next().unwrap();
        Ok(Paravector {
            x0,
            xu: it.collect(),
        })
    }

    pub fn real(n: usize, x0: R) -> Self {
        Paravector::new(x0, vec![R::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.xu.len()
    }

    pub fn re(&self) -> &R {
        &self.x0
    }

    pub fn vector(&self) -> &[R] {
        &self.xu
    }

    pub fn components(&self) -> Vec<R> {
        std::iter::once(self.x0.clone())
            .chain(self.xu.iter().cloned())
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Paravector<S> {
        Paravector {
            x0: f(&self.x0),
            xu: self.xu.iter().map(f).collect(),
        }
    }

    pub fn to_multivector(&self) -> Multivector<R> {
        let mut m = Multivector::scalar(self.dim(), self.x0.clone());
        for (i, c) in self.xu.iter().enumerate() {
            m.set(1 << i, c.clone());
        }
        m
    }

    /// `x̄ = x_0 - x̲`
    pub fn conjugate(&self) -> Self {
        Paravector {
            x0: self.x0.clone(),
            xu: self.xu.iter().map(R::neg).collect(),
        }
    }

    /// `|x̲|²`
    pub fn vector_norm_sq(&self) -> R {
        self.xu.iter().fold(R::zero(), |acc, c| acc.add(&c.mul(c)))
    }

    /// `|x|² = x_0² + ⋯ + x_n²`
    pub fn norm_sq(&self) -> R {
        self.x0.mul(&self.x0).add(&self.vector_norm_sq())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Paravector {
            x0: self.x0.add(&other.x0),
            xu: self
                .xu
                .iter()
                .zip(&other.xu)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Paravector {
            x0: self.x0.sub(&other.x0),
            xu: self
                .xu
                .iter()
                .zip(&other.xu)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &R) -> Self {
        Paravector {
            x0: self.x0.mul(k),
            xu: self.xu.iter().map(|c| c.mul(k)).collect(),
        }
    }

    pub fn add_real(&self, r: &R) -> Self {
        Paravector {
            x0: self.x0.add(r),
            xu: self.xu.clone(),
        }
    }

    /// `x^{-1} = x̄ / |x|²`, exact over rationals, `tol`-guarded over floats.
    pub fn inverse_with_tol(&self, tol: f64) -> Result<Self> {
        let inv = self.norm_sq().try_inverse(tol).ok_or(Error::ZeroNorm)?;
        Ok(self.conjugate().scale(&inv))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_tol(DEFAULT_ZERO_TOL)
    }

    /// `x^k`. Powers of a paravector stay in `span{1, x̲}`: writing
    /// `x^j = a + b x̲` and using `x̲² = -|x̲|²`,
    /// `x^{j+1} = (a x_0 - b|x̲|²) + (a + b x_0) x̲`.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Paravector::real(self.dim(), R::one());
        }
        if k == 1 {
            return self.clone();
        }
        let v2 = self.vector_norm_sq();
        let (mut a, mut b) = (self.x0.clone(), R::one());
        for _ in 1..k {
            let na = a.mul(&self.x0).sub(&b.mul(&v2));
            let nb = a.add(&b.mul(&self.x0));
            a = na;
            b = nb;
        }
        Paravector {
            x0: a,
            xu: self.xu.iter().map(|c| c.mul(&b)).collect(),
        }
    }

    /// `x^k` for any integer `k`, negative powers through the inverse.
    pub fn powi(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.pow(k.unsigned_abs()).inverse()?)
        }
    }
}

/// `y ∈ [x]`: same real part and same `|x̲|`. Exact over rationals.
pub fn same_sphere<R: Ring>(x: &Paravector<R>, y: &Paravector<R>) -> bool {
    same_sphere_tol(x, y, 0.0)
}

/// Tolerance version of [`same_sphere`] for float coordinates.
pub fn same_sphere_tol<R: Ring>(x: &Paravector<R>, y: &Paravector<R>, tol: f64) -> bool {
    x.dim() == y.dim()
        && x.re().sub(y.re()).is_negligible(tol)
        && x.vector_norm_sq()
            .sub(&y.vector_norm_sq())
            .is_negligible(tol)
}
