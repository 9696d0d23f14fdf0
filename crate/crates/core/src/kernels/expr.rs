use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::axial::Axial;
use crate::clifford::{Multivector, Paravector};
use crate::coeffring::{format_rational, Rational, Ring, DEFAULT_ZERO_TOL};
use crate::error::{Error, Result};

/// Where the non-commuting factor `(s - x̄)` sits in a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConjFactor {
    None,
    Left,
    Right,
}

/// `coeff · [(s - x̄)] · Q^{-q_pow} · (s - x₀)^{lin_pow} · [(s - x̄)]`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTerm {
    #[serde(with = "rational_text")]
    pub coeff: Rational,
    pub conj: ConjFactor,
    pub q_pow: u32,
    pub lin_pow: u32,
}

impl KernelTerm {
    pub fn new(coeff: Rational, conj: ConjFactor, q_pow: u32, lin_pow: u32) -> Self {
        KernelTerm {
            coeff,
            conj,
            q_pow,
            lin_pow,
        }
    }
}

mod rational_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        crate::coeffring::parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational '{text}'")))
    }
}

/// A linear combination of kernel terms. Every closed form in this crate
/// (Cauchy kernel form II, pseudo-Cauchy powers, the Fueter–Sce kernel and
/// all the factorized kernels) is one of these.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelExpr {
    pub terms: Vec<KernelTerm>,
}

impl KernelExpr {
    pub fn new() -> Self {
        KernelExpr::default()
    }

    pub fn term(coeff: Rational, conj: ConjFactor, q_pow: u32, lin_pow: u32) -> Self {
        let mut e = KernelExpr::new();
        e.push(coeff, conj, q_pow, lin_pow);
        e
    }

    /// Adds a term, dropping it when the coefficient is zero.
    pub fn push(&mut self, coeff: Rational, conj: ConjFactor, q_pow: u32, lin_pow: u32) {
        if !Zero::is_zero(&coeff) {
            self.terms
                .push(KernelTerm::new(coeff, conj, q_pow, lin_pow));
        }
    }

    pub fn extend(&mut self, other: &KernelExpr) {
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = KernelExpr::new();
        for t in &self.terms {
            out.push(&t.coeff * k, t.conj, t.q_pow, t.lin_pow);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval<R: Ring>(&self, s: &Paravector<R>, x: &Paravector<R>) -> Result<Multivector<R>> {
        self.eval_with_tol(s, x, DEFAULT_ZERO_TOL)
    }

    /// Evaluates the expression at `(s, x)`, multiplying in the written order.
    pub fn eval_with_tol<R: Ring>(
        &self,
        s: &Paravector<R>,
        x: &Paravector<R>,
        tol: f64,
    ) -> Result<Multivector<R>> {
        let pt = SlicePoint::new(s, x, tol)?;
        let max_q = self.terms.iter().map(|t| t.q_pow).max().unwrap_or(0) as usize;
        let max_k = self.terms.iter().map(|t| t.lin_pow).max().unwrap_or(0) as usize;
        let q_inv = if max_q > 0 {
            pt.q.inverse(&pt.sq, tol, pt.scale)?.powers(max_q, &pt.sq)
        } else {
            vec![Axial::one()]
        };
        let lin = pt.lin.powers(max_k, &pt.sq);

        let mut groups = [Axial::zero(), Axial::zero(), Axial::zero()];
        for t in &self.terms {
            let c = R::from_rational(&t.coeff);
            let v = q_inv[t.q_pow as usize]
                .mul(&lin[t.lin_pow as usize], &pt.sq)
                .scale(&c);
            let g = &mut groups[t.conj as usize];
            *g = g.add(&v);
        }

        let n = s.dim();
        let axis = s.vector();
        let mut out = groups[ConjFactor::None as usize]
            .to_paravector(axis)
            .to_multivector();
        let conj = pt.s_minus_xbar.to_multivector();
        let left = &groups[ConjFactor::Left as usize];
        if !left.re.is_zero() || !left.im.is_zero() {
            let v = conj.geometric_product(&left.to_paravector(axis).to_multivector())?;
            out = out.try_add(&v)?;
        }
        let right = &groups[ConjFactor::Right as usize];
        if !right.re.is_zero() || !right.im.is_zero() {
            let v = right
                .to_paravector(axis)
                .to_multivector()
                .geometric_product(&conj)?;
            out = out.try_add(&v)?;
        }
        debug_assert_eq!(out.dim(), n);
        Ok(out)
    }
}

/// Shared quantities at a point `(s, x)`.
pub(crate) struct SlicePoint<R> {
    /// `|s̲|²`
    pub sq: R,
    /// `Q_{c,s}(x) = s² - 2x₀s + |x|²` in `ℝ[s]`
    pub q: Axial<R>,
    /// `s - x₀`
    pub lin: Axial<R>,
    pub s_minus_xbar: Paravector<R>,
    /// Size used to make float singularity tests relative.
    pub scale: f64,
}

impl<R: Ring> SlicePoint<R> {
    pub fn new(s: &Paravector<R>, x: &Paravector<R>, _tol: f64) -> Result<Self> {
        if s.dim() != x.dim() {
            return Err(Error::DimensionMismatch {
                left: s.dim(),
                right: x.dim(),
            });
        }
        let sq = s.vector_norm_sq();
        let s0 = s.re();
        let x0 = x.re();
        let q_re = s0
            .mul(s0)
            .sub(&sq)
            .sub(&x0.mul(s0).scale_i64(2))
            .add(&x.norm_sq());
        let q_im = s0.sub(x0).scale_i64(2);
        let scale = (s.norm_sq().magnitude() + x.norm_sq().magnitude()).max(1.0);
        Ok(SlicePoint {
            q: Axial::new(q_re, q_im),
            lin: Axial::new(s0.sub(x0), R::one()),
            s_minus_xbar: s.try_sub(&x.conjugate())?,
            sq,
            scale,
        })
    }
}

fn factor_text(t: &KernelTerm) -> String {
    let mut parts = Vec::new();
    if t.conj == ConjFactor::Left {
        parts.push("(s-xbar)".to_string());
    }
    if t.q_pow > 0 {
        parts.push(format!("Q^-{}", t.q_pow));
    }
    match t.lin_pow {
        0 => {}
        1 => parts.push("(s-x0)".into()),
        k => parts.push(format!("(s-x0)^{k}")),
    }
    if t.conj == ConjFactor::Right {
        parts.push("(s-xbar)".to_string());
    }
    parts.join("*")
}

impl fmt::Display for KernelExpr {
    /// `8*(s-xbar)*Q^-2 - 16*Q^-2*(s-x0)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            let body = factor_text(t);
            let text = match (body.is_empty(), mag.is_one()) {
                (true, _) => format_rational(&mag),
                (false, true) => body,
                (false, false) => format!("{}*{}", format_rational(&mag), body),
            };
            match (i, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}
