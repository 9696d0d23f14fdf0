//! Previously published low-dimensional kernels, kept as regression
//! fixtures. Each entry stores the formula as printed and whether it is
//! expected to agree with the oracle.

use serde::Serialize;

use super::closed;
use super::expr::{ConjFactor, KernelExpr};
use crate::coeffring::Rational;
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};

pub const CATALOG_IDS: [&str; 9] = [
    "q-D",
    "q-Dbar",
    "n5-D",
    "n5-Delta",
    "n5-DeltaD",
    "n5-Dbar",
    "n5-D2",
    "n5-DeltaDbar",
    "n5-Dbar2",
];

/// Operator applied to the left Cauchy kernel: `D^β Δ^m` or `D̄^β Δ^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogOperator {
    pub conjugate: bool,
    pub beta: u32,
    pub m: u32,
}

impl CatalogOperator {
    pub fn build(&self, n: usize) -> DiffOperator {
        let base = if self.conjugate {
            DiffOperator::dirac_conj(n)
        } else {
            DiffOperator::dirac(n)
        };
        DiffOperator::power_compose(&base, self.beta, self.m)
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        if self.m > 0 {
            s.push_str("Delta");
            if self.m > 1 {
                s.push_str(&format!("^{}", self.m));
            }
        }
        if self.beta > 0 {
            s.push_str(if self.conjugate { "Dbar" } else { "D" });
            if self.beta > 1 {
                s.push_str(&format!("^{}", self.beta));
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub n: usize,
    pub operator: CatalogOperator,
    /// The formula as printed in the literature.
    pub printed_text: &'static str,
    pub printed: KernelExpr,
    pub expected_match: bool,
    /// Closed form from the general theorems (or the `Δ^m` special case),
    /// which the oracle arbitrates against the printed one.
    pub derived: KernelExpr,
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn catalog_fixture(id: &str) -> Result<CatalogEntry> {
    let op = |conjugate: bool, beta: u32, m: u32| CatalogOperator { conjugate, beta, m };
    let (id, n, operator, printed_text, printed, expected_match): (_, _, _, _, KernelExpr, _) =
        match id {
            "q-D" => (
                "q-D",
                3,
                op(false, 1, 0),
                "-2*Q^-1",
                KernelExpr::term(r(-2), ConjFactor::None, 1, 0),
                true,
            ),
            // -F s + x0 F with F = γ_3 (s - x̄) Q^{-2} = -4 (s - x̄) Q^{-2}
            "q-Dbar" => (
                "q-Dbar",
                3,
                op(true, 1, 0),
                "-F_L^3*s + x0*F_L^3",
                KernelExpr::term(r(4), ConjFactor::Left, 2, 1),
                true,
            ),
            "n5-D" => (
                "n5-D",
                5,
                op(false, 1, 0),
                "-4*Q^-1",
                KernelExpr::term(r(-4), ConjFactor::None, 1, 0),
                true,
            ),
            "n5-Delta" => (
                "n5-Delta",
                5,
                op(false, 0, 1),
                "8*(s-xbar)*Q^-2",
                KernelExpr::term(r(8), ConjFactor::Left, 2, 0),
                false,
            ),
            "n5-DeltaD" => (
                "n5-DeltaD",
                5,
                op(false, 1, 1),
                "16*Q^-2",
                KernelExpr::term(r(16), ConjFactor::None, 2, 0),
                true,
            ),
            "n5-Dbar" => (
                "n5-Dbar",
                5,
                op(true, 1, 0),
                "4*(s-xbar)*Q^-2*(s-x0) + 2*Q^-1",
                {
                    let mut e = KernelExpr::term(r(4), ConjFactor::Left, 2, 1);
                    e.push(r(2), ConjFactor::None, 1, 0);
                    e
                },
                true,
            ),
            "n5-D2" => (
                "n5-D2",
                5,
                op(false, 2, 0),
                "16*Q^-2*(s-x0) - 8*(s-xbar)*Q^-2",
                {
                    let mut e = KernelExpr::term(r(16), ConjFactor::None, 2, 1);
                    e.push(r(-8), ConjFactor::Left, 2, 0);
                    e
                },
                false,
            ),
            "n5-DeltaDbar" => (
                "n5-DeltaDbar",
                5,
                op(true, 1, 1),
                "-64*(s-xbar)*Q^-3*(s-x0)",
                KernelExpr::term(r(-64), ConjFactor::Left, 3, 1),
                true,
            ),
            "n5-Dbar2" => (
                "n5-Dbar2",
                5,
                op(true, 2, 0),
                "32*(s-xbar)*Q^-3*(s-x0)^3",
                KernelExpr::term(r(32), ConjFactor::Left, 3, 3),
                false,
            ),
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown catalog id '{other}'"
                )))
            }
        };
    let derived = derived_form(n, operator)?;
    Ok(CatalogEntry {
        id,
        n,
        operator,
        printed_text,
        printed,
        expected_match,
        derived,
    })
}

fn derived_form(n: usize, op: CatalogOperator) -> Result<KernelExpr> {
    let (m, beta) = (op.m as u64, op.beta as u64);
    if beta == 0 {
        return closed::laplacian_power(n, m);
    }
    if op.conjugate {
        closed::dbar_beta_delta_m(n, m, beta)
    } else {
        closed::d_beta_delta_m(n, m, beta)
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_IDS
        .iter()
        .map(|id| catalog_fixture(id).expect("catalog ids are valid"))
        .collect()
}
