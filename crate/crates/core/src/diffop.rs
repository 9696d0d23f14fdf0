//! Constant-coefficient differential operators in `x = (x_0, …, x_n)` with
//! Clifford coefficients acting from the left, and the jet oracle that
//! applies them to Clifford-valued functions.
//!
//! An operator is a finite term map `α ↦ c_α`; it acts as
//! `L f = Σ_α c_α ∂^α f`. Composition convolves multi-indices and multiplies
//! coefficients in order, since constants commute with `∂` but not with
//! each other.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{Multivector, Paravector};
use crate::coeffring::{JetScalar, MultiIndex, Rational, Ring, TaylorJet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct DiffOperator {
    n: usize,
    terms: BTreeMap<MultiIndex, Multivector<Rational>>,
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (alpha, c) in &self.terms {
            map.entry(&alpha.to_string(), &crate::clifford::format_multivector(c));
        }
        map.finish()
    }
}

impl DiffOperator {
    /// Operator with no terms (annihilates everything).
    pub fn zero(n: usize) -> Self {
        DiffOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n);
        op.insert(MultiIndex::zero(n + 1), Multivector::one(n));
        op
    }

    /// `∂_{x_var}` for `0 ≤ var ≤ n`.
    pub fn partial(n: usize, var: usize) -> Self {
        let mut op = Self::zero(n);
        op.insert(MultiIndex::unit(n + 1, var), Multivector::one(n));
        op
    }

    /// `D = ∂_0 + Σ e_i ∂_i`
    pub fn dirac(n: usize) -> Self {
        Self::dirac_with_sign(n, 1)
    }

    /// `D̄ = ∂_0 - Σ e_i ∂_i`
    pub fn dirac_conj(n: usize) -> Self {
        Self::dirac_with_sign(n, -1)
    }

    fn dirac_with_sign(n: usize, sign: i64) -> Self {
        let mut op = Self::partial(n, 0);
        for i in 1..=n {
            op.insert(
                MultiIndex::unit(n + 1, i),
                Multivector::blade(n, 1 << (i - 1), Rational::from_i64(sign)),
            );
        }
        op
    }

    /// `Δ_{n+1} = Σ_{i=0}^{n} ∂_i²`
    pub fn laplacian(n: usize) -> Self {
        let mut op = Self::zero(n);
        for i in 0..=n {
            let mut e = vec![0u8; n + 1];
            e[i] = 2;
            op.insert(MultiIndex(e), Multivector::one(n));
        }
        op
    }

    /// Builds an operator from explicit terms; zero coefficients are dropped.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Multivector<Rational>)>,
    ) -> Result<Self> {
        let mut op = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.num_vars() != n + 1 || c.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: c.dim(),
                });
            }
            op.insert(alpha, c);
        }
        Ok(op)
    }

    fn insert(&mut self, alpha: MultiIndex, c: Multivector<Rational>) {
        let merged = match self.terms.remove(&alpha) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Multivector<Rational>> {
        &self.terms
    }

    /// Highest derivative order among the terms.
    pub fn order(&self) -> usize {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
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
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.insert(alpha.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (alpha, c) in &self.terms {
            out.insert(alpha.clone(), c.scale(k));
        }
        out
    }

    /// `self ∘ other`: `(A∘B) f = A(B f)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.insert(a.plus(b), ca.geometric_product(cb)?);
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0` the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    /// `base^β ∘ Δ^m`.
    pub fn power_compose(base: &Self, beta: u32, laplacian_power: u32) -> Self {
        base.pow(beta)
            .compose(&Self::laplacian(base.n).pow(laplacian_power))
            .expect("same dimension")
    }

    /// Applies the operator to a function value already evaluated over jets
    /// seeded at the point of interest.
    pub fn apply_to_jets<J: TaylorJet>(
        &self,
        value: &Multivector<J>,
    ) -> Result<Multivector<J::Scalar>> {
        if value.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: value.dim(),
            });
        }
        let mut out = Multivector::<J::Scalar>::zero(self.n);
        for (alpha, c) in &self.terms {
            let deriv = Multivector::from_coeffs(
                self.n,
                value
                    .coeffs()
                    .iter()
                    .map(|j| j.derivative(alpha))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            if deriv.is_zero() {
                continue;
            }
            let coeff = c.map(J::Scalar::from_rational);
            out = &out + &coeff.geometric_product(&deriv)?;
        }
        Ok(out)
    }
}

/// Lifts a fixed parameter into constant jets.
pub fn lift_constant<R: JetScalar>(p: &Paravector<R>) -> Paravector<R::Jet> {
    p.map(R::Jet::lift)
}

/// Seeds the coordinates of `x` as jets of the given order in `n + 1` variables.
pub fn seed_point<R: JetScalar>(x: &Paravector<R>, order: usize) -> Result<Paravector<R::Jet>> {
    let v = x.dim() + 1;
    let comps = x
        .components()
        .into_iter()
        .enumerate()
        .map(|(i, c)| R::Jet::seed(i, &c, v, order))
        .collect::<Result<Vec<_>>>()?;
    Paravector::from_components(comps)
}

/// Evaluates `f` over jets at `x` and returns `Σ_α c_α ∂^α f(x)`.
///
/// `f` is a closure over the coefficient ring; parameters such as `s` are
/// captured by the closure (see [`lift_constant`]).
pub fn oracle_apply<R, F>(op: &DiffOperator, f: F, x: &Paravector<R>) -> Result<Multivector<R>>
where
    R: JetScalar,
    F: Fn(&Paravector<R::Jet>) -> Result<Multivector<R::Jet>>,
{
    if x.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: x.dim(),
        });
    }
    let xj = seed_point(x, op.order())?;
    let value = f(&xj)?;
    op.apply_to_jets(&value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::QJet;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    fn point(n: usize) -> Paravector<Rational> {
        Paravector::from_components(
            (0..=n)
                .map(|i| Rational::new((i as i64 * 3 - 2).into(), 5.into()))
                .collect(),
        )
        .unwrap()
    }

    fn identity_fn(x: &Paravector<QJet>) -> Result<Multivector<QJet>> {
        Ok(x.to_multivector())
    }

    #[test]
    fn dirac_of_identity_is_one_minus_n() {
        for n in 1..=5 {
            let x = point(n);
            let d = oracle_apply(&DiffOperator::dirac(n), identity_fn, &x).unwrap();
            assert_eq!(d, Multivector::scalar(n, q(1 - n as i64)));
            let db = oracle_apply(&DiffOperator::dirac_conj(n), identity_fn, &x).unwrap();
            assert_eq!(db, Multivector::scalar(n, q(1 + n as i64)));
            let lap = oracle_apply(&DiffOperator::laplacian(n), identity_fn, &x).unwrap();
            assert!(lap.is_zero());
        }
    }

    #[test]
    fn dirac_of_norm_squared() {
        let n = 3;
        let x = point(n);
        let d = oracle_apply(
            &DiffOperator::dirac(n),
            |y: &Paravector<QJet>| Ok(Multivector::scalar(n, y.norm_sq())),
            &x,
        )
        .unwrap();
        assert_eq!(d, x.scale(&q(2)).to_multivector());
    }

    #[test]
    fn laplacian_of_square() {
        let n = 3;
        let d = oracle_apply(
            &DiffOperator::laplacian(n),
            |y: &Paravector<QJet>| Ok(y.pow(2).to_multivector()),
            &point(n),
        )
        .unwrap();
        assert_eq!(d, Multivector::scalar(n, q(-4)));
    }

    #[test]
    fn dirac_factorizes_laplacian() {
        for n in 1..=9 {
            let d = DiffOperator::dirac(n);
            let db = DiffOperator::dirac_conj(n);
            let lap = DiffOperator::laplacian(n);
            assert_eq!(d.compose(&db).unwrap(), lap, "n = {n}");
            assert_eq!(db.compose(&d).unwrap(), lap, "n = {n}");
            assert_eq!(
                d.try_add(&db).unwrap(),
                DiffOperator::partial(n, 0).scale(&q(2))
            );
        }
    }

    #[test]
    fn dirac_squared_hand_expansion() {
        // D² = ∂0² + 2 Σ e_i ∂0∂i - Σ ∂i² (mixed e_i e_j terms cancel)
        let n = 3;
        let d2 = DiffOperator::dirac(n).pow(2);
        let mut expected = Vec::new();
        let mut e = vec![0u8; n + 1];
        e[0] = 2;
        expected.push((MultiIndex(e), Multivector::one(n)));
        for i in 1..=n {
            let mut e = vec![0u8; n + 1];
            e[0] = 1;
            e[i] = 1;
            expected.push((MultiIndex(e), Multivector::blade(n, 1 << (i - 1), q(2))));
            let mut e = vec![0u8; n + 1];
            e[i] = 2;
            expected.push((MultiIndex(e), Multivector::scalar(n, q(-1))));
        }
        assert_eq!(d2, DiffOperator::from_terms(n, expected).unwrap());
    }

    #[test]
    fn power_compose_edge_cases() {
        let n = 3;
        let d = DiffOperator::dirac(n);
        assert_eq!(DiffOperator::power_compose(&d, 1, 0), d);
        assert_eq!(
            DiffOperator::power_compose(&d, 0, 1),
            DiffOperator::laplacian(n)
        );
        assert_eq!(d.compose(&DiffOperator::identity(n)).unwrap(), d);
        // Δ has scalar coefficients, so it commutes with D^β.
        let lap = DiffOperator::laplacian(n);
        assert_eq!(
            lap.pow(2).compose(&d.pow(3)).unwrap(),
            DiffOperator::power_compose(&d, 3, 2)
        );
    }

    #[test]
    fn laplacian_squared_term_map() {
        let n = 2;
        let lap2 = DiffOperator::laplacian(n).pow(2);
        // Σ_{i,j} ∂i²∂j²: diagonal terms coefficient 1, off-diagonal 2
        assert_eq!(lap2.terms().len(), 6);
        assert_eq!(
            lap2.terms()[&MultiIndex(vec![4, 0, 0])],
            Multivector::one(n)
        );
        assert_eq!(
            lap2.terms()[&MultiIndex(vec![2, 2, 0])],
            Multivector::scalar(n, q(2))
        );
    }

    #[test]
    fn dimension_errors() {
        let a = DiffOperator::dirac(2);
        let b = DiffOperator::dirac(3);
        assert!(a.compose(&b).is_err());
        assert!(oracle_apply(&a, identity_fn, &point(3)).is_err());
    }

    #[test]
    fn scalar_left_factor_commutes_but_clifford_does_not() {
        let n = 2;
        let x = point(n);
        let d = DiffOperator::dirac(n);
        let e1 = Multivector::<Rational>::generator(n, 1);
        let e1j = e1.map(QJet::constant);
        let f = |y: &Paravector<QJet>| Ok(y.pow(2).to_multivector());
        let base = oracle_apply(&d, f, &x).unwrap();
        let scaled = oracle_apply(
            &d,
            |y: &Paravector<QJet>| Ok(f(y)?.scale(&QJet::constant(&q(3)))),
            &x,
        )
        .unwrap();
        assert_eq!(scaled, base.scale(&q(3)));
        let left =
            oracle_apply(&d, |y: &Paravector<QJet>| e1j.geometric_product(&f(y)?), &x).unwrap();
        assert_ne!(left, e1.geometric_product(&base).unwrap());
    }
}
