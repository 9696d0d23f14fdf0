//! Slice hyperholomorphic Cauchy kernels and the kernels obtained from them
//! by factorized Fueter–Sce maps.
//!
//! `Q` below is `Q_{c,s}(x) = s² - 2x₀s + |x|²`, an element of the
//! commutative subalgebra `ℝ[s]`. Closed forms multiply in the written
//! order; only factors inside `ℝ[s]` are ever reordered.

mod axial;
mod catalog;
mod closed;
mod expr;
mod lemmas;

pub use catalog::{catalog, catalog_fixture, CatalogEntry, CatalogOperator, CATALOG_IDS};
pub use closed::{
    cauchy_form2_left, cauchy_form2_right, d_beta_delta_m, dbar_beta_delta_m, fueter_sce, harmonic,
    laplacian_power, polyanalytic, pseudo_cauchy,
};
pub use expr::{ConjFactor, KernelExpr, KernelTerm};
pub use lemmas::{lemma_sides, LemmaCase, LemmaOp};

use serde::{Deserialize, Serialize};

use crate::clifford::{same_sphere_tol, Multivector, Paravector};
use crate::coeffring::{JetScalar, Ring, DEFAULT_ZERO_TOL};
use crate::coeffs::half_dim;
use crate::diffop::{lift_constant, oracle_apply, seed_point, DiffOperator};
use crate::error::{Error, Result};
use axial::Axial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Flavor {
    CauchyI,
    CauchyII,
    PseudoCauchy { m: u32 },
    FueterSce,
    DBetaDeltaM { beta: u64, m: u64 },
    DbarBetaDeltaM { beta: u64, m: u64 },
    Harmonic { m: u64 },
    LaplacianPower { m: u64 },
    Polyanalytic { l: u64 },
    Lemma { case: LemmaCase },
    Catalog { id: String },
}

/// Identifies one closed-form kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub n: usize,
    pub side: Side,
    pub flavor: Flavor,
}

impl KernelSpec {
    pub fn new(n: usize, side: Side, flavor: Flavor) -> Result<Self> {
        let spec = KernelSpec { n, side, flavor };
        spec.validate()?;
        Ok(spec)
    }

    pub fn left(n: usize, flavor: Flavor) -> Result<Self> {
        Self::new(n, Side::Left, flavor)
    }

    fn validate(&self) -> Result<()> {
        half_dim(self.n)?;
        let right_ok = matches!(
            self.flavor,
            Flavor::CauchyI | Flavor::CauchyII | Flavor::FueterSce
        );
        if self.side == Side::Right && !right_ok {
            return Err(Error::InvalidParams(
                "right-sided kernels exist only for cauchy-I, cauchy-II and fueter-sce".into(),
            ));
        }
        if let Flavor::Catalog { id } = &self.flavor {
            let entry = catalog_fixture(id)?;
            if entry.n != self.n {
                return Err(Error::InvalidParams(format!(
                    "catalog entry {id} lives in n = {}",
                    entry.n
                )));
            }
        }
        if self.flavor != Flavor::CauchyI {
            self.expression()?;
        }
        Ok(())
    }

    /// The kernel as a term list. Form I Cauchy kernels live in `ℝ[x]`
    /// rather than `ℝ[s]` and have no such representation.
    pub fn expression(&self) -> Result<KernelExpr> {
        let n = self.n;
        let right = self.side == Side::Right;
        match &self.flavor {
            Flavor::CauchyI => Err(Error::InvalidParams(
                "form I is not expressed through Q".into(),
            )),
            Flavor::CauchyII if right => Ok(cauchy_form2_right()),
            Flavor::CauchyII => Ok(cauchy_form2_left()),
            Flavor::PseudoCauchy { m } => pseudo_cauchy(*m),
            Flavor::FueterSce => fueter_sce(n, right),
            Flavor::DBetaDeltaM { beta, m } => d_beta_delta_m(n, *m, *beta),
            Flavor::DbarBetaDeltaM { beta, m } => dbar_beta_delta_m(n, *m, *beta),
            Flavor::Harmonic { m } => harmonic(n, *m),
            Flavor::LaplacianPower { m } => laplacian_power(n, *m),
            Flavor::Polyanalytic { l } => polyanalytic(n, *l),
            Flavor::Lemma { case } => case.rhs(n),
            Flavor::Catalog { id } => Ok(catalog_fixture(id)?.printed),
        }
    }

    pub fn evaluate<R: Ring>(
        &self,
        s: &Paravector<R>,
        x: &Paravector<R>,
    ) -> Result<Multivector<R>> {
        self.evaluate_with_tol(s, x, DEFAULT_ZERO_TOL)
    }

    pub fn evaluate_with_tol<R: Ring>(
        &self,
        s: &Paravector<R>,
        x: &Paravector<R>,
        tol: f64,
    ) -> Result<Multivector<R>> {
        check_point(self.n, s, x, tol)?;
        match self.flavor {
            Flavor::CauchyI => match self.side {
                Side::Left => cauchy_left(s, x, Form::I),
                Side::Right => cauchy_right(s, x, Form::I),
            },
            _ => self.expression()?.eval_with_tol(s, x, tol),
        }
    }

    /// The operator that produces this kernel from the Cauchy kernel, when
    /// there is one: `T` with `T S^{-1} = kernel`.
    pub fn generating_operator(&self) -> Result<Option<DiffOperator>> {
        let n = self.n;
        let h = half_dim(n)? as u32;
        let d = DiffOperator::dirac(n);
        let db = DiffOperator::dirac_conj(n);
        Ok(match &self.flavor {
            Flavor::CauchyI | Flavor::CauchyII => Some(DiffOperator::identity(n)),
            Flavor::PseudoCauchy { .. } | Flavor::Lemma { .. } => None,
            Flavor::FueterSce => Some(DiffOperator::power_compose(&d, 0, h)),
            Flavor::DBetaDeltaM { beta, m } => {
                Some(DiffOperator::power_compose(&d, *beta as u32, *m as u32))
            }
            Flavor::DbarBetaDeltaM { beta, m } => {
                Some(DiffOperator::power_compose(&db, *beta as u32, *m as u32))
            }
            Flavor::Harmonic { m } => Some(DiffOperator::power_compose(&d, 1, *m as u32 - 1)),
            Flavor::LaplacianPower { m } => Some(DiffOperator::power_compose(&d, 0, *m as u32)),
            Flavor::Polyanalytic { l } => {
                Some(DiffOperator::power_compose(&db, h - *l as u32, *l as u32))
            }
            Flavor::Catalog { id } => Some(catalog_fixture(id)?.operator.build(n)),
        })
    }

    pub fn label(&self) -> String {
        let side = match self.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        let body = match &self.flavor {
            Flavor::CauchyI => "cauchy-I".to_string(),
            Flavor::CauchyII => "cauchy-II".to_string(),
            Flavor::PseudoCauchy { m } => format!("pseudo-cauchy(m={m})"),
            Flavor::FueterSce => "fueter-sce".to_string(),
            Flavor::DBetaDeltaM { beta, m } => format!("d-beta-delta-m(beta={beta},m={m})"),
            Flavor::DbarBetaDeltaM { beta, m } => format!("dbar-beta-delta-m(beta={beta},m={m})"),
            Flavor::Harmonic { m } => format!("harmonic(m={m})"),
            Flavor::LaplacianPower { m } => format!("laplacian-power(m={m})"),
            Flavor::Polyanalytic { l } => format!("polyanalytic(l={l})"),
            Flavor::Lemma { case } => format!("lemma({})", case.key()),
            Flavor::Catalog { id } => format!("catalog({id})"),
        };
        format!("n={}/{}/{}", self.n, side, body)
    }
}

/// Dimension checks plus the `s ∉ [x]` guard.
pub fn check_point<R: Ring>(
    n: usize,
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Result<()> {
    for p in [s, x] {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: p.dim(),
            });
        }
    }
    let scale = (s.norm_sq().magnitude() + x.norm_sq().magnitude()).max(1.0);
    let stol = if R::EXACT { 0.0 } else { tol * scale };
    if same_sphere_tol(x, s, stol) {
        return Err(Error::SingularKernel);
    }
    Ok(())
}

fn scale_of<R: Ring>(s: &Paravector<R>, x: &Paravector<R>) -> f64 {
    (s.norm_sq().magnitude() + x.norm_sq().magnitude()).max(1.0)
}

/// `(x² - 2x s₀ + |s|²)^{-1}` as a paravector in `ℝ[x]`.
fn form1_denominator_inverse<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
) -> Result<Paravector<R>> {
    let sq = x.vector_norm_sq();
    let (x0, s0) = (x.re(), s.re());
    let re = x0
        .mul(x0)
        .sub(&sq)
        .sub(&s0.mul(x0).scale_i64(2))
        .add(&s.norm_sq());
    let im = x0.sub(s0).scale_i64(2);
    let inv = Axial::new(re, im).inverse(&sq, DEFAULT_ZERO_TOL, scale_of(s, x))?;
    Ok(inv.to_paravector(x.vector()))
}

/// Left Cauchy kernel `S_L^{-1}(s, x)` in the requested form.
pub fn cauchy_left<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    form: Form,
) -> Result<Multivector<R>> {
    check_point(x.dim(), s, x, DEFAULT_ZERO_TOL)?;
    match form {
        Form::II => cauchy_form2_left().eval(s, x),
        Form::I => {
            let inv = form1_denominator_inverse(s, x)?.to_multivector();
            let num = x.try_sub(&s.conjugate())?.to_multivector();
            Ok(inv.geometric_product(&num)?.neg())
        }
    }
}

/// Right Cauchy kernel `S_R^{-1}(s, x)` in the requested form.
pub fn cauchy_right<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    form: Form,
) -> Result<Multivector<R>> {
    check_point(x.dim(), s, x, DEFAULT_ZERO_TOL)?;
    match form {
        Form::II => cauchy_form2_right().eval(s, x),
        Form::I => {
            let inv = form1_denominator_inverse(s, x)?.to_multivector();
            let num = x.try_sub(&s.conjugate())?.to_multivector();
            Ok(num.geometric_product(&inv)?.neg())
        }
    }
}

/// `Q_{c,s}(x)^{-m}`
pub fn pseudo_cauchy_pow<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    m: u32,
) -> Result<Multivector<R>> {
    check_point(x.dim(), s, x, DEFAULT_ZERO_TOL)?;
    pseudo_cauchy(m)?.eval(s, x)
}

/// `F_L^n` or `F_R^n` at `(s, x)`.
pub fn fueter_sce_kernel<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    side: Side,
) -> Result<Multivector<R>> {
    let n = x.dim();
    check_point(n, s, x, DEFAULT_ZERO_TOL)?;
    fueter_sce(n, side == Side::Right)?.eval(s, x)
}

/// Partial sum `Σ_{k=0}^{N} x^k s^{-1-k}` of the left Cauchy kernel series.
pub fn cauchy_series_partial<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    terms: u32,
) -> Result<Multivector<R>> {
    Ok(cauchy_series_partials(s, x, terms)?
        .pop()
        .expect("at least one partial sum"))
}

/// All partial sums for `N = 0..=terms`.
pub fn cauchy_series_partials<R: Ring>(
    s: &Paravector<R>,
    x: &Paravector<R>,
    terms: u32,
) -> Result<Vec<Multivector<R>>> {
    if s.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: x.dim(),
        });
    }
    if x.norm_sq().magnitude() >= s.norm_sq().magnitude() {
        return Err(Error::OutsideDomain("series needs |x| < |s|".into()));
    }
    let sq = s.vector_norm_sq();
    let s_inv_ax = Axial::new(s.re().clone(), R::one())
        .inverse(&sq, DEFAULT_ZERO_TOL, 1.0)
        .map_err(|_| Error::ZeroNorm)?;
    // x^k as paravectors, s^{-1-k} inside ℝ[s]
    let mut xk = Paravector::real(x.dim(), R::one());
    let mut sk = s_inv_ax.clone();
    let mut acc = Multivector::zero(x.dim());
    let mut out = Vec::with_capacity(terms as usize + 1);
    for _ in 0..=terms {
        let term = xk
            .to_multivector()
            .geometric_product(&sk.to_paravector(s.vector()).to_multivector())?;
        acc = acc.try_add(&term)?;
        out.push(acc.clone());
        xk = mul_paravectors(&xk, x)?;
        sk = sk.mul(&s_inv_ax, &sq);
    }
    Ok(out)
}

/// `a·b` for paravectors in a common `ℝ[x]`; here `a` is always a power of `b`.
fn mul_paravectors<R: Ring>(a: &Paravector<R>, b: &Paravector<R>) -> Result<Paravector<R>> {
    // (a₀ + λb̲)(b₀ + b̲) = (a₀b₀ - λ|b̲|²) + (a₀ + λb₀) b̲
    let prod = a.to_multivector().geometric_product(&b.to_multivector())?;
    Ok(Paravector::new(
        prod.scalar_part().clone(),
        (0..b.dim()).map(|i| prod.coeff(1 << i).clone()).collect(),
    ))
}

/// `S^{-1}(s, ·)` evaluated over jets of the given order seeded at `x`.
/// Any operator of order at most `order` can then be applied with
/// [`DiffOperator::apply_to_jets`] without re-evaluating the kernel.
pub fn cauchy_jets<R: JetScalar>(
    side: Side,
    s: &Paravector<R>,
    x: &Paravector<R>,
    order: usize,
) -> Result<Multivector<R::Jet>> {
    check_point(x.dim(), s, x, DEFAULT_ZERO_TOL)?;
    let cauchy = match side {
        Side::Left => cauchy_form2_left(),
        Side::Right => cauchy_form2_right(),
    };
    cauchy.eval(&lift_constant(s), &seed_point(x, order)?)
}

/// `oracle_apply(T, S^{-1})` for the generating operator of `spec`, on the
/// same side as `spec`.
pub fn oracle_kernel<R: JetScalar>(
    spec: &KernelSpec,
    s: &Paravector<R>,
    x: &Paravector<R>,
) -> Result<Multivector<R>> {
    check_point(spec.n, s, x, DEFAULT_ZERO_TOL)?;
    let op = spec.generating_operator()?.ok_or_else(|| {
        Error::InvalidParams(format!("{} has no generating operator", spec.label()))
    })?;
    let cauchy = match spec.side {
        Side::Left => cauchy_form2_left(),
        Side::Right => cauchy_form2_right(),
    };
    let sj = lift_constant(s);
    oracle_apply(&op, |xj| cauchy.eval(&sj, xj), x)
}
