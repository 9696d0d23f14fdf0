//! Closed-form kernels as [`KernelExpr`] values.

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::{ConjFactor, KernelExpr};
use crate::coeffring::Rational;
use crate::coeffs::{
    coeff, factorial, gamma_m, gamma_n, half_dim, pochhammer_neg, pow2, sigma_nm, CoeffParams,
    Family,
};
use crate::error::{Error, Result};

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// `S_L^{-1}` in form II: `(s - x̄) Q^{-1}`.
pub fn cauchy_form2_left() -> KernelExpr {
    KernelExpr::term(ratio(1, 1), ConjFactor::Left, 1, 0)
}

/// `S_R^{-1}` in form II: `Q^{-1} (s - x̄)`.
pub fn cauchy_form2_right() -> KernelExpr {
    KernelExpr::term(ratio(1, 1), ConjFactor::Right, 1, 0)
}

/// `Q_{c,s}(x)^{-m}`
pub fn pseudo_cauchy(m: u32) -> Result<KernelExpr> {
    if m == 0 {
        return Err(Error::InvalidParams(
            "pseudo-Cauchy power needs m >= 1".into(),
        ));
    }
    Ok(KernelExpr::term(ratio(1, 1), ConjFactor::None, m, 0))
}

/// `F_L^n = γ_n (s - x̄) Q^{-h_n-1}`; the right kernel puts `(s - x̄)` last.
pub fn fueter_sce(n: usize, right: bool) -> Result<KernelExpr> {
    let h = half_dim(n)? as u32;
    let conj = if right {
        ConjFactor::Right
    } else {
        ConjFactor::Left
    };
    Ok(KernelExpr::term(rat(gamma_n(n)?), conj, h + 1, 0))
}

fn check_theorem_range(n: usize, m: u64, beta: u64) -> Result<u64> {
    let h = half_dim(n)?;
    if beta == 0 {
        return Err(Error::InvalidParams("beta must be at least 1".into()));
    }
    if m + beta > h {
        return Err(Error::InvalidParams(format!(
            "need m + beta <= h_n, got m = {m}, beta = {beta}, h_n = {h}"
        )));
    }
    Ok(h)
}

fn family_term(family: Family, p: CoeffParams) -> Result<Rational> {
    Ok(rat(coeff(family, p)?))
}

/// Closed form of `D^β Δ^m S_L^{-1}`, `β ≥ 1`, `m ≥ 0`, `m + β ≤ h_n`.
pub fn d_beta_delta_m(n: usize, m: u64, beta: u64) -> Result<KernelExpr> {
    let h = check_theorem_range(n, m, beta)?;
    // 2^β (h_n - m) γ_m / m!
    let pre = rat(pow2(beta) * BigInt::from(h - m) * gamma_m(h, m)?) / rat(factorial(m));
    let mut e = KernelExpr::new();
    let m32 = m as u32;
    if beta % 2 == 1 {
        let k = (beta - 1) / 2;
        let k32 = k as u32;
        for j in 0..k {
            let a = family_term(Family::A1, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * a, ConjFactor::Left, m32 + j32 + 2 + k32, 2 * j32 + 1);
        }
        for j in 0..=k {
            let b = family_term(Family::B1, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(-&pre * b, ConjFactor::None, m32 + 1 + k32 + j32, 2 * j32);
        }
    } else {
        let k = beta / 2;
        let k32 = k as u32;
        for j in 0..k {
            let a = family_term(Family::A2, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * a, ConjFactor::Left, m32 + j32 + 1 + k32, 2 * j32);
        }
        for j in 0..k {
            let b = family_term(Family::B2, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(
                -&pre * b,
                ConjFactor::None,
                m32 + 1 + k32 + j32,
                2 * j32 + 1,
            );
        }
    }
    Ok(e)
}

/// Closed form of `D̄^β Δ^m S_L^{-1}`, same parameter range.
pub fn dbar_beta_delta_m(n: usize, m: u64, beta: u64) -> Result<KernelExpr> {
    let h = check_theorem_range(n, m, beta)?;
    // 2^β 4^m (-h_n)_m
    let pre = rat(pow2(beta) * pow2(2 * m) * pochhammer_neg(h, m));
    let mut e = KernelExpr::new();
    let m32 = m as u32;
    if beta % 2 == 1 {
        let k = (beta - 1) / 2;
        let k32 = k as u32;
        for j in 0..=k {
            let a = family_term(Family::BoldA1, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * a, ConjFactor::Left, m32 + j32 + 2 + k32, 2 * j32 + 1);
        }
        for j in 0..=k {
            let b = family_term(Family::BoldB1, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * b, ConjFactor::None, m32 + 1 + k32 + j32, 2 * j32);
        }
    } else {
        let k = beta / 2;
        let k32 = k as u32;
        for j in 0..=k {
            let a = family_term(Family::BoldA2, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * a, ConjFactor::Left, m32 + j32 + 1 + k32, 2 * j32);
        }
        for j in 0..k {
            let b = family_term(Family::BoldB2, CoeffParams::new(h, m, k, j))?;
            let j32 = j as u32;
            e.push(&pre * b, ConjFactor::None, m32 + 1 + k32 + j32, 2 * j32 + 1);
        }
    }
    Ok(e)
}

/// `D Δ^{m-1} S_L^{-1} = σ_{n,m} Q^{-m}`, `1 ≤ m ≤ h_n`.
pub fn harmonic(n: usize, m: u64) -> Result<KernelExpr> {
    let h = half_dim(n)?;
    Ok(KernelExpr::term(
        rat(sigma_nm(h, m)?),
        ConjFactor::None,
        m as u32,
        0,
    ))
}

/// `Δ^m S_L^{-1} = γ_m (s - x̄) Q^{-m-1}`, `0 ≤ m ≤ h_n`.
pub fn laplacian_power(n: usize, m: u64) -> Result<KernelExpr> {
    let h = half_dim(n)?;
    Ok(KernelExpr::term(
        rat(gamma_m(h, m)?),
        ConjFactor::Left,
        m as u32 + 1,
        0,
    ))
}

/// `((-1)^{h_n-ℓ} / (h_n-ℓ)!) F_L^n (s - x₀)^{h_n-ℓ}`, `0 ≤ ℓ ≤ h_n`.
pub fn polyanalytic(n: usize, l: u64) -> Result<KernelExpr> {
    let h = half_dim(n)?;
    if l > h {
        return Err(Error::InvalidParams(format!(
            "need l <= h_n, got l = {l}, h_n = {h}"
        )));
    }
    let d = h - l;
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let c = rat(gamma_n(n)? * sign) / rat(factorial(d));
    debug_assert!(!c.is_zero());
    Ok(KernelExpr::term(
        c,
        ConjFactor::Left,
        h as u32 + 1,
        d as u32,
    ))
}
