//! Exact integer coefficients for the factorized Fueter–Sce kernels.
//!
//! All arithmetic is big-integer. Binomials use a guarded convention:
//! `C(p, p) = 1` for every integer `p` (including negative ones), otherwise
//! `C(p, q) = 0` whenever `q < 0`, `q > p`, or `p < 0`. The boundary case
//! `β = h_n − m` of the conjugate-Dirac family needs `C(-1, -1) = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn factorial_signed(k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::InvalidParams(format!("factorial of negative {k}")));
    }
    Ok(factorial(k as u64))
}

pub fn pow2(k: u64) -> BigInt {
    BigInt::one() << k as usize
}

/// Guarded binomial coefficient.
pub fn binomial_guarded(p: i64, q: i64) -> BigInt {
    if p == q {
        return BigInt::one();
    }
    if q < 0 || p < 0 || q > p {
        return BigInt::zero();
    }
    let q = q.min(p - q) as u64;
    let mut acc = BigInt::one();
    for i in 0..q {
        acc = acc * (p as u64 - i) / (i + 1);
    }
    acc
}

/// `(-α)_β = (-1)^β α! / (α-β)!`, zero when `β > α`.
pub fn pochhammer_neg(alpha: u64, beta: u64) -> BigInt {
    if beta > alpha {
        return BigInt::zero();
    }
    let v: BigInt = ((alpha - beta + 1)..=alpha).fold(BigInt::one(), |acc, k| acc * k);
    if beta % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `h_n = (n-1)/2` for odd `n ≥ 3`.
pub fn half_dim(n: usize) -> Result<u64> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    Ok(((n - 1) / 2) as u64)
}

/// `γ_n = 4^{h_n} h_n! (-h_n)_{h_n}`
pub fn gamma_n(n: usize) -> Result<BigInt> {
    let h = half_dim(n)?;
    gamma_m(h, h)
}

/// `γ_m = 4^m m! (-h_n)_m`, `0 ≤ m ≤ h_n`.
pub fn gamma_m(hn: u64, m: u64) -> Result<BigInt> {
    if m > hn {
        return Err(Error::InvalidParams(format!(
            "gamma_m needs m <= h_n ({m} > {hn})"
        )));
    }
    Ok(pow2(2 * m) * factorial(m) * pochhammer_neg(hn, m))
}

/// `σ_{n,m} = 2^{2m-1} (m-1)! (-h_n)_m`, `1 ≤ m ≤ h_n`.
pub fn sigma_nm(hn: u64, m: u64) -> Result<BigInt> {
    if m == 0 || m > hn {
        return Err(Error::InvalidParams(format!(
            "sigma needs 1 <= m <= h_n, got m = {m}, h_n = {hn}"
        )));
    }
    Ok(pow2(2 * m - 1) * factorial(m - 1) * pochhammer_neg(hn, m))
}

/// Indices shared by the coefficient families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoeffParams {
    pub hn: u64,
    pub m: u64,
    /// `k_1` or `k_2` depending on the family.
    pub k: u64,
    pub j: u64,
}

impl CoeffParams {
    pub fn new(hn: u64, m: u64, k: u64, j: u64) -> Self {
        CoeffParams { hn, m, k, j }
    }

    fn ints(&self) -> (i64, i64, i64, i64) {
        (self.hn as i64, self.m as i64, self.k as i64, self.j as i64)
    }
}

/// The eight coefficient families: `a¹ b¹ a² b²` for the Dirac powers and
/// their bold counterparts for the conjugate Dirac powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A1,
    B1,
    A2,
    B2,
    BoldA1,
    BoldB1,
    BoldA2,
    BoldB2,
}

/// Largest `j` for which the family appears in its sum, given `k`.
/// `None` means the sum is empty.
pub fn family_max_j(family: Family, k: u64) -> Option<u64> {
    match family {
        Family::A1 | Family::A2 | Family::B2 | Family::BoldB2 => k.checked_sub(1),
        Family::B1 | Family::BoldA1 | Family::BoldB1 | Family::BoldA2 => Some(k),
    }
}

pub fn coeff(family: Family, p: CoeffParams) -> Result<BigInt> {
    match family {
        Family::A1 => coeff_a1(p),
        Family::B1 => coeff_b1(p),
        Family::A2 => coeff_a2(p),
        Family::B2 => coeff_b2(p),
        Family::BoldA1 => coeff_bold_a1(p),
        Family::BoldB1 => coeff_bold_b1(p),
        Family::BoldA2 => coeff_bold_a2(p),
        Family::BoldB2 => coeff_bold_b2(p),
    }
}

fn check_j(family: Family, p: CoeffParams) -> Result<()> {
    match family_max_j(family, p.k) {
        Some(max) if p.j <= max => Ok(()),
        _ => Err(Error::InvalidParams(format!(
            "{family:?}: j = {} out of range for k = {}",
            p.j, p.k
        ))),
    }
}

/// `a¹_{j,k₁,m} = 2^{2j+1} (m+k₁+1+j)! (k₁-j-1)! C(k₁+j, 2j+1) C(h_n-m-k₁-j-2, h_n-m-2k₁-1)`
pub fn coeff_a1(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::A1, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j + 1)
        * factorial_signed(m + k + 1 + j)?
        * factorial_signed(k - j - 1)?
        * binomial_guarded(k + j, 2 * j + 1)
        * binomial_guarded(h - m - k - j - 2, h - m - 2 * k - 1))
}

/// `b¹_{j,k₁,m} = 2^{2j} (k₁-j)! (m+k₁+j)! C(h_n-m-k₁-j-1, h_n-m-2k₁-1) C(k₁+j, 2j)`
pub fn coeff_b1(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::B1, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j)
        * factorial_signed(k - j)?
        * factorial_signed(m + k + j)?
        * binomial_guarded(h - m - k - j - 1, h - m - 2 * k - 1)
        * binomial_guarded(k + j, 2 * j))
}

/// `a²_{j,k₂,m} = 2^{2j} (m+k₂+j)! (k₂-j-1)! C(k₂+j-1, 2j) C(h_n-m-k₂-1-j, h_n-m-2k₂)`
pub fn coeff_a2(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::A2, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j)
        * factorial_signed(m + k + j)?
        * factorial_signed(k - j - 1)?
        * binomial_guarded(k + j - 1, 2 * j)
        * binomial_guarded(h - m - k - 1 - j, h - m - 2 * k))
}

/// `b²_{j,k₂,m} = 2^{2j+1} (k₂-j-1)! (m+k₂+j)! C(h_n-m-k₂-1-j, h_n-m-2k₂) C(k₂+j, 2j+1)`
pub fn coeff_b2(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::B2, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j + 1)
        * factorial_signed(k - j - 1)?
        * factorial_signed(m + k + j)?
        * binomial_guarded(h - m - k - 1 - j, h - m - 2 * k)
        * binomial_guarded(k + j, 2 * j + 1))
}

/// `𝐚¹_{j,k₁,m} = 2^{2j+1} (m+k₁+1+j)! (k₁-j)! C(k₁+j+1, 2j+1) C(h_n-m-k₁-j-2, h_n-m-2k₁-2)`
pub fn coeff_bold_a1(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::BoldA1, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j + 1)
        * factorial_signed(m + k + 1 + j)?
        * factorial_signed(k - j)?
        * binomial_guarded(k + j + 1, 2 * j + 1)
        * binomial_guarded(h - m - k - j - 2, h - m - 2 * k - 2))
}

/// `𝐛¹_{j,k₁,m} = 2^{2j} (k₁-j+1)! (m+k₁+j)! C(h_n-m-k₁-j-1, h_n-m-2k₁-2) C(k₁+j, 2j)`
pub fn coeff_bold_b1(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::BoldB1, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j)
        * factorial_signed(k - j + 1)?
        * factorial_signed(m + k + j)?
        * binomial_guarded(h - m - k - j - 1, h - m - 2 * k - 2)
        * binomial_guarded(k + j, 2 * j))
}

/// `𝐚²_{j,k₂,m} = 2^{2j} (m+k₂+j)! (k₂-j)! C(k₂+j, 2j) C(h_n-m-k₂-1-j, h_n-m-2k₂-1)`
pub fn coeff_bold_a2(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::BoldA2, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j)
        * factorial_signed(m + k + j)?
        * factorial_signed(k - j)?
        * binomial_guarded(k + j, 2 * j)
        * binomial_guarded(h - m - k - 1 - j, h - m - 2 * k - 1))
}

/// `𝐛²_{j,k₂,m} = 2^{2j+1} (k₂-j)! (m+k₂+j)! C(h_n-m-k₂-1-j, h_n-m-2k₂-1) C(k₂+j, 2j+1)`
pub fn coeff_bold_b2(p: CoeffParams) -> Result<BigInt> {
    check_j(Family::BoldB2, p)?;
    let (h, m, k, j) = p.ints();
    Ok(pow2(2 * p.j + 1)
        * factorial_signed(k - j)?
        * factorial_signed(m + k + j)?
        * binomial_guarded(h - m - k - 1 - j, h - m - 2 * k - 1)
        * binomial_guarded(k + j, 2 * j + 1))
}

/// The coefficient identities that drive the induction over `β`.
///
/// Lower-case identities step from `D^{2k₂}` to `D^{2k₂+1}`, upper-case ones
/// from `D^{2k₁+3}` to `D^{2k₁+4}`. `Stifel` is Pascal's rule, with
/// `(k, j)` playing `(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AppendixIdentity {
    C1,
    C2,
    C3,
    C4,
    C5,
    UpperC1,
    UpperC2,
    UpperC3,
    UpperC4,
    Stifel,
}

impl AppendixIdentity {
    pub const ALL: [AppendixIdentity; 10] = [
        AppendixIdentity::C1,
        AppendixIdentity::C2,
        AppendixIdentity::C3,
        AppendixIdentity::C4,
        AppendixIdentity::C5,
        AppendixIdentity::UpperC1,
        AppendixIdentity::UpperC2,
        AppendixIdentity::UpperC3,
        AppendixIdentity::UpperC4,
        AppendixIdentity::Stifel,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AppendixIdentity::C1 => "c1",
            AppendixIdentity::C2 => "c2",
            AppendixIdentity::C3 => "c3",
            AppendixIdentity::C4 => "c4",
            AppendixIdentity::C5 => "c5",
            AppendixIdentity::UpperC1 => "C1",
            AppendixIdentity::UpperC2 => "C2",
            AppendixIdentity::UpperC3 => "C3",
            AppendixIdentity::UpperC4 => "C4",
            AppendixIdentity::Stifel => "stifel",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.label() == s)
    }

    /// Whether `(h_n, m, k, j)` lies in the identity's range.
    ///
    /// The recursion that uses an identity starts from an admissible
    /// operator, so the source exponent must satisfy `m + β ≤ h_n`:
    /// `β = 2k₂` for the lower-case family and `β = 2k₁ + 3` for the
    /// upper-case one. Outside that range the identities are not claimed
    /// (and (c3), for one, fails).
    pub fn admissible(&self, p: CoeffParams) -> bool {
        let CoeffParams { hn, m, k, j } = p;
        match self {
            AppendixIdentity::C1 | AppendixIdentity::C3 | AppendixIdentity::C5 => {
                k >= 1 && j == 0 && m + 2 * k <= hn
            }
            AppendixIdentity::C2 => k >= 2 && j + 2 <= k && m + 2 * k <= hn,
            AppendixIdentity::C4 => k >= 1 && j >= 1 && j < k && m + 2 * k <= hn,
            AppendixIdentity::UpperC1 | AppendixIdentity::UpperC3 => j <= k && m + 2 * k + 3 <= hn,
            AppendixIdentity::UpperC2 | AppendixIdentity::UpperC4 => j == 0 && m + 2 * k + 3 <= hn,
            AppendixIdentity::Stifel => k >= 1 && j <= k,
        }
    }

    /// Left and right hand sides of the identity.
    pub fn sides(&self, p: CoeffParams) -> Result<(BigInt, BigInt)> {
        if !self.admissible(p) {
            return Err(Error::InvalidParams(format!(
                "{} not defined at h_n={}, m={}, k={}, j={}",
                self.label(),
                p.hn,
                p.m,
                p.k,
                p.j
            )));
        }
        let CoeffParams { hn, m, k, j } = p;
        let at = |k: u64, j: u64| CoeffParams::new(hn, m, k, j);
        let big = |v: u64| BigInt::from(v);
        Ok(match self {
            AppendixIdentity::C1 => (
                big(2 * (m + 2 * k)) * coeff_b2(at(k, k - 1))?,
                big(2) * coeff_a1(at(k, k - 1))?,
            ),
            AppendixIdentity::C2 => (
                -big(2 * j + 2) * coeff_a2(at(k, j + 1))?
                    + big(2 * (m + k + j + 1)) * coeff_b2(at(k, j))?,
                big(2) * coeff_a1(at(k, j))?,
            ),
            AppendixIdentity::C3 => (
                big(2) * coeff_a2(at(k, 0))? * (BigInt::from(hn) - big(m) - big(k))
                    - coeff_b2(at(k, 0))?,
                big(2) * coeff_b1(at(k, 0))?,
            ),
            AppendixIdentity::C4 => (
                big(2) * coeff_a2(at(k, j))? * (BigInt::from(hn) - big(m) - big(j) - big(k))
                    + big(4 * (m + k + j)) * coeff_b2(at(k, j - 1))?
                    - big(2 * j + 1) * coeff_b2(at(k, j))?,
                big(2) * coeff_b1(at(k, j))?,
            ),
            AppendixIdentity::C5 => (
                big(4 * (m + 2 * k)) * coeff_b2(at(k, k - 1))?,
                big(2) * coeff_b1(at(k, k))?,
            ),
            AppendixIdentity::UpperC1 => (
                -big(2 * j + 1) * coeff_a1(at(k + 1, j))?
                    + big(2 * (m + k + j + 2)) * coeff_b1(at(k + 1, j))?,
                big(2) * coeff_a2(at(k + 2, j))?,
            ),
            AppendixIdentity::UpperC2 => (
                big(2 * (m + 2 * k + 3)) * coeff_b1(at(k + 1, k + 1))?,
                big(2) * coeff_a2(at(k + 2, k + 1))?,
            ),
            AppendixIdentity::UpperC3 => (
                big(2)
                    * (BigInt::from(hn) - big(m) - big(k) - big(2) - big(j))
                    * coeff_a1(at(k + 1, j))?
                    + big(4 * (m + k + j + 2)) * coeff_b1(at(k + 1, j))?
                    - big(2 * (j + 1)) * coeff_b1(at(k + 1, j + 1))?,
                big(2) * coeff_b2(at(k + 2, j))?,
            ),
            AppendixIdentity::UpperC4 => (
                big(4 * (m + 2 * k + 3)) * coeff_b1(at(k + 1, k + 1))?,
                big(2) * coeff_b2(at(k + 2, k + 1))?,
            ),
            AppendixIdentity::Stifel => {
                let (n, kk) = (k as i64, j as i64);
                (
                    binomial_guarded(n, kk),
                    binomial_guarded(n - 1, kk) + binomial_guarded(n - 1, kk - 1),
                )
            }
        })
    }
}

/// Exact check of one identity at one parameter point.
pub fn check_appendix_identity(id: AppendixIdentity, p: CoeffParams) -> Result<bool> {
    let (lhs, rhs) = id.sides(p)?;
    Ok(lhs == rhs)
}

/// Every admissible parameter point with `h_n ≤ hn_max`.
pub fn admissible_points(id: AppendixIdentity, hn_max: u64) -> Vec<CoeffParams> {
    let mut out = Vec::new();
    for hn in 0..=hn_max {
        for m in 0..=hn {
            for k in 0..=hn {
                for j in 0..=k + 1 {
                    let p = CoeffParams::new(hn, m, k, j);
                    if id.admissible(p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn guarded_binomial() {
        assert_eq!(binomial_guarded(5, 2), b(10));
        assert_eq!(binomial_guarded(0, -1), b(0));
        assert_eq!(binomial_guarded(-1, -1), b(1));
        assert_eq!(binomial_guarded(-2, 1), b(0));
        assert_eq!(binomial_guarded(3, 4), b(0));
        assert_eq!(binomial_guarded(30, 15), b(155117520));
    }

    #[test]
    fn pochhammer() {
        assert_eq!(pochhammer_neg(2, 2), b(2));
        assert_eq!(pochhammer_neg(1, 1), b(-1));
        assert_eq!(pochhammer_neg(7, 0), b(1));
        assert_eq!(pochhammer_neg(2, 3), b(0));
        assert_eq!(pochhammer_neg(4, 2), b(12));
    }

    #[test]
    fn gamma_sigma_values() {
        assert_eq!(gamma_n(3).unwrap(), b(-4));
        assert_eq!(gamma_n(5).unwrap(), b(64));
        assert_eq!(sigma_nm(2, 1).unwrap(), b(-4));
        assert_eq!(gamma_m(2, 1).unwrap(), b(-8));
        assert!(gamma_n(4).is_err());
        assert!(sigma_nm(2, 0).is_err());
        assert!(sigma_nm(2, 3).is_err());
    }

    #[test]
    fn sigma_links_to_gamma() {
        for hn in 1..=12u64 {
            for m in 0..hn {
                let lhs = -b(2 * (hn - m) as i64) * gamma_m(hn, m).unwrap();
                assert_eq!(lhs, sigma_nm(hn, m + 1).unwrap(), "h_n={hn} m={m}");
            }
        }
    }

    #[test]
    fn family_examples() {
        // b¹_{0,0,m} = m!
        for m in 0..6 {
            assert_eq!(
                coeff_b1(CoeffParams::new(8, m, 0, 0)).unwrap(),
                factorial(m)
            );
        }
        assert_eq!(coeff_a1(CoeffParams::new(4, 1, 1, 0)).unwrap(), b(12));
        assert_eq!(coeff_b2(CoeffParams::new(4, 1, 1, 0)).unwrap(), b(4));
        assert_eq!(coeff_bold_a1(CoeffParams::new(2, 0, 0, 0)).unwrap(), b(2));
        assert_eq!(coeff_bold_b1(CoeffParams::new(2, 0, 0, 0)).unwrap(), b(1));
    }

    #[test]
    fn out_of_range_j_is_rejected() {
        assert!(coeff_a1(CoeffParams::new(4, 0, 0, 0)).is_err());
        assert!(coeff_b1(CoeffParams::new(4, 0, 1, 2)).is_err());
    }

    #[test]
    fn boundary_surviving_terms() {
        // β = h_n - m: everything vanishes except the top bold-a term.
        for hn in 1..=12u64 {
            for m in 0..hn {
                let beta = hn - m;
                let top = pow2(beta) * factorial(hn);
                if beta % 2 == 1 {
                    let k = (beta - 1) / 2;
                    for j in 0..=k {
                        let p = CoeffParams::new(hn, m, k, j);
                        let a = coeff_bold_a1(p).unwrap();
                        if j == k {
                            assert_eq!(a, top, "h_n={hn} m={m}");
                        } else {
                            assert_eq!(a, b(0));
                        }
                        assert_eq!(coeff_bold_b1(p).unwrap(), b(0));
                    }
                } else {
                    let k = beta / 2;
                    for j in 0..=k {
                        let p = CoeffParams::new(hn, m, k, j);
                        let a = coeff_bold_a2(p).unwrap();
                        if j == k {
                            assert_eq!(a, top, "h_n={hn} m={m}");
                        } else {
                            assert_eq!(a, b(0));
                        }
                        if j < k {
                            assert_eq!(coeff_bold_b2(p).unwrap(), b(0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn appendix_examples() {
        let (l, r) = AppendixIdentity::C1
            .sides(CoeffParams::new(4, 1, 1, 0))
            .unwrap();
        assert_eq!((l, r), (b(24), b(24)));
        assert!(
            check_appendix_identity(AppendixIdentity::C5, CoeffParams::new(3, 0, 1, 0)).unwrap()
        );
        assert!(
            check_appendix_identity(AppendixIdentity::Stifel, CoeffParams::new(0, 0, 6, 3))
                .unwrap()
        );
        assert!(AppendixIdentity::C2
            .sides(CoeffParams::new(4, 0, 1, 0))
            .is_err());
    }

    #[test]
    fn c3_fails_outside_its_range() {
        // h_n = 0, k = 1 would be D^2 applied with h_n = 0: not admissible and false.
        let p = CoeffParams::new(0, 0, 1, 0);
        assert!(!AppendixIdentity::C3.admissible(p));
        let (l, r) = (
            b(2) * coeff_a2(p).unwrap() * b(-1) - coeff_b2(p).unwrap(),
            b(2) * coeff_b1(p).unwrap(),
        );
        assert_ne!(l, r);
    }
}
