//! Building-block identities for `D` and `D̄` applied to products of
//! `(s - x̄)`, `Q^{-m}` and `(s - x₀)^k`.

use serde::{Deserialize, Serialize};

use super::expr::{ConjFactor, KernelExpr};
use crate::clifford::{Multivector, Paravector};
use crate::coeffring::{JetScalar, Rational};
use crate::diffop::{lift_constant, oracle_apply, DiffOperator};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaOp {
    /// Blocks under `D`.
    Dirac,
    /// Blocks under `D̄`.
    DiracConj,
}

impl LemmaOp {
    pub fn label(&self) -> &'static str {
        match self {
            LemmaOp::Dirac => "dirac",
            LemmaOp::DiracConj => "dirac-conj",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "dirac" | "D" => Some(LemmaOp::Dirac),
            "dirac-conj" | "Dbar" => Some(LemmaOp::DiracConj),
            _ => None,
        }
    }

    pub fn operator(&self, n: usize) -> DiffOperator {
        match self {
            LemmaOp::Dirac => DiffOperator::dirac(n),
            LemmaOp::DiracConj => DiffOperator::dirac_conj(n),
        }
    }
}

/// One formula of a lemma: operator, formula number `1..=4`, the `Q`
/// exponent `m` (or `ℓ`) and the power `k` of `(s - x₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LemmaCase {
    pub op: LemmaOp,
    pub formula: u8,
    pub m: u32,
    pub k: u32,
}

impl LemmaCase {
    pub fn new(op: LemmaOp, formula: u8, m: u32, k: u32) -> Result<Self> {
        if !(1..=4).contains(&formula) {
            return Err(Error::InvalidParams(format!(
                "lemma formula must be 1..=4, got {formula}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParams(
                "lemma exponent m must be at least 1".into(),
            ));
        }
        Ok(LemmaCase { op, formula, m, k })
    }

    /// Whether the formula depends on `k`.
    pub fn uses_k(formula: u8) -> bool {
        formula >= 3
    }

    /// The function the operator is applied to.
    pub fn block(&self) -> KernelExpr {
        let one = Rational::from_integer(1.into());
        match self.formula {
            1 => KernelExpr::term(one, ConjFactor::Left, self.m, 0),
            2 => KernelExpr::term(one, ConjFactor::None, self.m, 0),
            3 => KernelExpr::term(one, ConjFactor::None, self.m, self.k),
            _ => KernelExpr::term(one, ConjFactor::Left, self.m, self.k),
        }
    }

    /// The closed form of the derivative of [`LemmaCase::block`].
    pub fn rhs(&self, n: usize) -> Result<KernelExpr> {
        let h = crate::coeffs::half_dim(n)? as i64;
        let m = self.m as i64;
        let k = self.k as i64;
        let (mq, kq) = (self.m, self.k);
        let r = |v: i64| Rational::from_integer(v.into());
        let mut e = KernelExpr::new();
        match (self.op, self.formula) {
            (LemmaOp::Dirac, 1) => e.push(r(-2 * (h - m + 1)), ConjFactor::None, mq, 0),
            (LemmaOp::Dirac, 2) => {
                e.push(r(4 * m), ConjFactor::None, mq + 1, 1);
                e.push(r(-2 * m), ConjFactor::Left, mq + 1, 0);
            }
            (LemmaOp::Dirac, 3) => {
                e.push(r(4 * m), ConjFactor::None, mq + 1, kq + 1);
                e.push(r(-2 * m), ConjFactor::Left, mq + 1, kq);
                if k > 0 {
                    e.push(r(-k), ConjFactor::None, mq, kq - 1);
                }
            }
            (LemmaOp::Dirac, _) => {
                e.push(r(2 * (m - h - 1)), ConjFactor::None, mq, kq);
                if k > 0 {
                    e.push(r(-k), ConjFactor::Left, mq, kq - 1);
                }
            }
            (LemmaOp::DiracConj, 1) => {
                e.push(r(2 * (h - m)), ConjFactor::None, mq, 0);
                e.push(r(4 * m), ConjFactor::Left, mq + 1, 1);
            }
            (LemmaOp::DiracConj, 2) => e.push(r(2 * m), ConjFactor::Left, mq + 1, 0),
            (LemmaOp::DiracConj, 3) => {
                if k > 0 {
                    e.push(r(-k), ConjFactor::None, mq, kq - 1);
                }
                e.push(r(2 * m), ConjFactor::Left, mq + 1, kq);
            }
            (LemmaOp::DiracConj, _) => {
                e.push(r(2 * (h - m)), ConjFactor::None, mq, kq);
                e.push(r(4 * m), ConjFactor::Left, mq + 1, kq + 1);
                if k > 0 {
                    e.push(r(-k), ConjFactor::Left, mq, kq - 1);
                }
            }
        }
        Ok(e)
    }

    pub fn key(&self) -> String {
        format!(
            "{}/{}/m={}/k={}",
            self.op.label(),
            self.formula,
            self.m,
            self.k
        )
    }
}

/// Left side by the jet oracle, right side from the closed form.
pub fn lemma_sides<R: JetScalar>(
    case: &LemmaCase,
    s: &Paravector<R>,
    x: &Paravector<R>,
) -> Result<(Multivector<R>, Multivector<R>)> {
    let n = x.dim();
    let block = case.block();
    let sj = lift_constant(s);
    let lhs = oracle_apply(&case.op.operator(n), |xj| block.eval(&sj, xj), x)?;
    let rhs = case.rhs(n)?.eval(s, x)?;
    Ok((lhs, rhs))
}
