//! Seeded sample points. Every point depends only on `(seed, n, trial)`
//! and a per-family salt, so reports are reproducible regardless of how
//! cases are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{same_sphere, Paravector};
use crate::coeffring::Rational;

/// Largest numerator magnitude and denominator of sampled coordinates.
pub const COORD_BOUND: i64 = 16;

const SALT_KERNEL: u64 = 0;
const SALT_SERIES: u64 = 1;
const SALT_BALL: u64 = 2;

fn rng_for(seed: u64, salt: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((salt << 48) | ((n as u64) << 32) | trial as u64);
    rng
}

fn random_paravector(rng: &mut ChaCha8Rng, n: usize, dyadic: bool) -> Paravector<Rational> {
    let comps = (0..=n)
        .map(|_| {
            let num = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
            let den = if dyadic {
                1i64 << rng.gen_range(0..=4)
            } else {
                rng.gen_range(1..=COORD_BOUND)
            };
            Rational::new(num.into(), den.into())
        })
        .collect();
    Paravector::from_components(comps).expect("n >= 1")
}

/// A pair `(s, x)` with small rational coordinates and `s ∉ [x]`.
pub fn kernel_point(
    seed: u64,
    n: usize,
    trial: usize,
) -> (Paravector<Rational>, Paravector<Rational>) {
    let mut rng = rng_for(seed, SALT_KERNEL, n, trial);
    loop {
        let s = random_paravector(&mut rng, n, false);
        let x = random_paravector(&mut rng, n, false);
        if !same_sphere(&x, &s) {
            return (s, x);
        }
    }
}

/// A pair with dyadic coordinates (exact in `f64`) and `|x| ≤ |s|/2`,
/// `x ≠ 0`.
pub fn series_point(
    seed: u64,
    n: usize,
    trial: usize,
) -> (Paravector<Rational>, Paravector<Rational>) {
    let mut rng = rng_for(seed, SALT_SERIES, n, trial);
    let four = Rational::from_integer(4.into());
    loop {
        let s = random_paravector(&mut rng, n, true);
        let x = random_paravector(&mut rng, n, true);
        let (xs, ss) = (x.norm_sq(), s.norm_sq());
        if !num_traits::Zero::is_zero(&xs) && &xs * &four <= ss {
            return (s, x);
        }
    }
}

/// A point of the open unit ball on the grid `ℤ/64`.
pub fn ball_point(seed: u64, n: usize, trial: usize) -> Paravector<f64> {
    let mut rng = rng_for(seed, SALT_BALL, n, trial);
    loop {
        let comps: Vec<f64> = (0..=n)
            .map(|_| rng.gen_range(-63i32..=63) as f64 / 64.0)
            .collect();
        let r2: f64 = comps.iter().map(|c| c * c).sum();
        if r2 < 1.0 {
            return Paravector::from_components(comps).expect("n >= 1");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    #[test]
    fn points_are_reproducible_and_distinct() {
        assert_eq!(kernel_point(7, 5, 3), kernel_point(7, 5, 3));
        assert_ne!(kernel_point(7, 5, 3), kernel_point(7, 5, 4));
        assert_ne!(kernel_point(7, 5, 3), kernel_point(8, 5, 3));
        assert_eq!(ball_point(1, 3, 0), ball_point(1, 3, 0));
    }

    #[test]
    fn coordinates_stay_small() {
        for t in 0..20 {
            let (s, x) = kernel_point(0, 3, t);
            for c in s.components().iter().chain(x.components().iter()) {
                assert!(c.numer().abs() <= COORD_BOUND.into());
                assert!(c.denom() <= &COORD_BOUND.into());
            }
            assert!(!same_sphere(&x, &s));
        }
    }

    #[test]
    fn series_points_are_dyadic_and_inside_half_radius() {
        let four = Rational::from_integer(4.into());
        for t in 0..20 {
            let (s, x) = series_point(3, 5, t);
            assert!(x.norm_sq() * &four <= s.norm_sq());
            for c in s.components().iter().chain(x.components().iter()) {
                let d = c.denom().clone();
                assert_eq!(
                    &d & (&d - BigInt::from(1)),
                    BigInt::from(0),
                    "denominator {d}"
                );
            }
        }
    }

    #[test]
    fn ball_points_are_interior() {
        for t in 0..20 {
            assert!(ball_point(0, 5, t).norm_sq() < 1.0);
        }
    }
}
