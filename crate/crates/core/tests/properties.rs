use proptest::prelude::*;

use fueter_core::clifford::{format_multivector, parse_multivector, same_sphere};
use fueter_core::coeffring::{MultiIndex, QJet};
use fueter_core::diffop::{lift_constant, oracle_apply};
use fueter_core::kernels::{cauchy_form2_left, Flavor, KernelSpec, Side};
use fueter_core::{DiffOperator, Jet, Multivector, Paravector, Rational, Ring};

fn q(v: i64, d: i64) -> Rational {
    Rational::new(v.into(), d.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(v, d)| q(v, d))
}

fn multivector(n: usize) -> impl Strategy<Value = Multivector<Rational>> {
    prop::collection::vec(rational(), 1 << n)
        .prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
}

fn paravector(n: usize) -> impl Strategy<Value = Paravector<Rational>> {
    prop::collection::vec(rational(), n + 1).prop_map(|c| Paravector::from_components(c).unwrap())
}

/// Kernel points with `s` off the sphere of `x`.
fn kernel_pair(n: usize) -> impl Strategy<Value = (Paravector<Rational>, Paravector<Rational>)> {
    (paravector(n), paravector(n)).prop_filter("s in [x]", |(s, x)| !same_sphere(x, s))
}

/// A jet in two variables of order 3 with small Taylor coefficients.
fn qjet() -> impl Strategy<Value = QJet> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| {
        let u = QJet::seed(0, &a, 2, 3).unwrap();
        let v = QJet::seed(1, &b, 2, 3).unwrap();
        let k = QJet::constant(&c);
        let w = QJet::constant(&d);
        u.mul(&v).add(&k.mul(&u)).add(&w.mul(&v.mul(&v)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geometric_product_is_associative(a in multivector(3), b in multivector(3), c in multivector(3)) {
        let left = (&(&a * &b)) * &c;
        let right = &a * &(&b * &c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn geometric_product_distributes(a in multivector(4), b in multivector(4), c in multivector(4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn paravector_times_conjugate_is_norm(x in paravector(5)) {
        let xm = x.to_multivector();
        let xc = x.conjugate().to_multivector();
        let norm = Multivector::scalar(5, x.norm_sq());
        prop_assert_eq!(&xm * &xc, norm.clone());
        prop_assert_eq!(&xc * &xm, norm);
    }

    #[test]
    fn paravector_inverse(x in paravector(3)) {
        prop_assume!(!x.norm_sq().is_zero());
        let inv = x.inverse().unwrap().to_multivector();
        prop_assert_eq!(&x.to_multivector() * &inv, Multivector::one(3));
    }

    #[test]
    fn text_round_trip(a in multivector(4)) {
        let text = format_multivector(&a);
        prop_assert_eq!(parse_multivector::<Rational>(&text, 4).unwrap(), a);
    }

    #[test]
    fn jet_ring_axioms(a in qjet(), b in qjet(), c in qjet()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), QJet::zero());
        prop_assert_eq!(a.mul(&QJet::one()), a.clone());
    }

    #[test]
    fn jet_reciprocal(a in qjet(), shift in 1i64..5) {
        let b = a.add(&QJet::constant(&q(shift * 100, 1)));
        let r = b.reciprocal().unwrap();
        let one = b.mul(&r);
        for alpha in [MultiIndex(vec![0, 0]), MultiIndex(vec![1, 0]), MultiIndex(vec![1, 2])] {
            let expected = if alpha.order() == 0 { q(1, 1) } else { q(0, 1) };
            prop_assert_eq!(one.taylor_coeff(&alpha).unwrap(), expected);
        }
    }

    #[test]
    fn float_and_exact_jets_agree(a in rational(), b in rational()) {
        let e = QJet::seed(0, &a, 2, 3).unwrap().mul(&QJet::seed(1, &b, 2, 3).unwrap());
        let fa: f64 = num_traits::ToPrimitive::to_f64(&a).unwrap();
        let fb: f64 = num_traits::ToPrimitive::to_f64(&b).unwrap();
        let f = Jet::seed(0, fa, 2, 3).unwrap().mul(&Jet::seed(1, fb, 2, 3).unwrap());
        for alpha in [MultiIndex(vec![1, 1]), MultiIndex(vec![1, 0]), MultiIndex(vec![0, 0])] {
            let exact: f64 = num_traits::ToPrimitive::to_f64(&e.derivative(&alpha).unwrap()).unwrap();
            prop_assert!((exact - f.derivative(&alpha).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_is_linear_in_the_function((s, x) in kernel_pair(3), t in paravector(3), k in rational()) {
        prop_assume!(!same_sphere(&x, &t));
        let op = DiffOperator::power_compose(&DiffOperator::dirac(3), 1, 1);
        let cauchy = cauchy_form2_left();
        let (sj, tj) = (lift_constant(&s), lift_constant(&t));
        let f = |y: &Paravector<QJet>| cauchy.eval(&sj, y);
        let g = |y: &Paravector<QJet>| cauchy.eval(&tj, y);
        let kj = QJet::constant(&k);
        let combined = oracle_apply(&op, |y| f(y)?.try_add(&g(y)?.scale(&kj)), &x).unwrap();
        let separate = oracle_apply(&op, f, &x).unwrap().try_add(&oracle_apply(&op, g, &x).unwrap().scale(&k)).unwrap();
        prop_assert_eq!(combined, separate);
    }

    #[test]
    fn dirac_then_conjugate_is_laplacian_on_kernels((s, x) in kernel_pair(3)) {
        let n = 3;
        let spec = KernelSpec::new(n, Side::Left, Flavor::CauchyII).unwrap();
        let cauchy = spec.expression().unwrap();
        let sj = lift_constant(&s);
        let composed = DiffOperator::dirac(n).compose(&DiffOperator::dirac_conj(n)).unwrap();
        let a = oracle_apply(&composed, |y| cauchy.eval(&sj, y), &x).unwrap();
        let b = oracle_apply(&DiffOperator::laplacian(n), |y| cauchy.eval(&sj, y), &x).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn dirac_factors_the_laplacian_in_every_dimension() {
    for n in 1..=7 {
        let d = DiffOperator::dirac(n);
        let db = DiffOperator::dirac_conj(n);
        let lap = DiffOperator::laplacian(n);
        assert_eq!(d.compose(&db).unwrap(), lap);
        assert_eq!(db.compose(&d).unwrap(), lap);
    }
}
