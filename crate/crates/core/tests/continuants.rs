use dtu_core::{cf_of, CfConvention, Fraction, GoldenScalar, Orientation, QuadraticSurd, QuotientSeq};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn quotients(max_len: usize, max_q: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_q, 1..=max_len)
}

fn seq(v: &[u64]) -> QuotientSeq {
    QuotientSeq::new(v.to_vec()).unwrap()
}

/// Euler's rule: sum over all ways of deleting disjoint adjacent pairs.
fn euler(a: &[u64]) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        1 => BigInt::from(a[0]),
        _ => BigInt::from(a[0]) * euler(&a[1..]) + euler(&a[2..]),
    }
}

/// `[0; a1, ..., an]` evaluated from the back.
fn cf_back(a: &[u64]) -> Fraction {
    let mut x = Fraction::zero();
    for &q in a.iter().rev() {
        x = (Fraction::from_integer(q.into()) + x).recip();
    }
    x
}

proptest! {
    #[test]
    fn continuant_matches_euler_rule(a in quotients(10, 30)) {
        prop_assert_eq!(seq(&a).continuant(), euler(&a));
    }

    #[test]
    fn reversal_keeps_continuant(a in quotients(12, 50)) {
        let s = seq(&a);
        prop_assert_eq!(s.reversed().continuant(), s.continuant());
    }

    #[test]
    fn split_identity(a in quotients(8, 20), b in quotients(8, 20)) {
        let (x, y) = (seq(&a), seq(&b));
        let whole = QuotientSeq::concat([&x, &y]).continuant();
        let split = x.continuant() * y.continuant() + x.without_last().continuant() * y.without_first().continuant();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn matrix_entries_and_determinant(a in quotients(10, 40)) {
        let s = seq(&a);
        let m = s.matrix().unwrap();
        let [[p, q], [r, t]] = m.entries();
        prop_assert_eq!(&p, &s.continuant());
        prop_assert_eq!(&q, &s.without_last().continuant());
        prop_assert_eq!(&r, &s.without_first().continuant());
        // ⟨a_2..a_{n-1}⟩, with the length -1 continuant equal to zero
        let inner = if a.len() == 1 { BigInt::zero() } else { s.without_first().without_last().continuant() };
        prop_assert_eq!(&t, &inner);
        let sign = if a.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(m.det(), sign);
    }

    #[test]
    fn value_round_trip(a in quotients(10, 25)) {
        prop_assume!(a != [1]);
        let s = seq(&a).canonical();
        let x = s.value().unwrap();
        prop_assert_eq!(&x, &cf_back(&a));
        prop_assert_eq!(cf_of(&x, CfConvention::LastAtLeastTwo).unwrap(), s.clone());
        let alt = cf_of(&x, CfConvention::LastIsOne).unwrap();
        prop_assert_eq!(alt.last().copied(), Some(1));
        prop_assert_eq!(alt.value().unwrap(), x);
    }

    #[test]
    fn weights_swap_under_even_reversal(a in prop::collection::vec(1u64..=40, 1..=6)) {
        let s = seq(&[a.clone(), a.clone()].concat());
        prop_assert_eq!(s.weighted_sum(Orientation::Phi), s.reversed().weighted_sum(Orientation::Tau));
        prop_assert_eq!(s.weighted_sum(Orientation::Phi) + s.weighted_sum(Orientation::Tau), 3 * s.sum());
    }

    #[test]
    fn golden_powers_multiply(j in -40i64..40, k in -40i64..40) {
        let prod = &GoldenScalar::phi_pow(j) * &GoldenScalar::phi_pow(k);
        prop_assert_eq!(prod, GoldenScalar::phi_pow(j + k));
    }

    #[test]
    fn golden_field_inverse(a in -50i64..50, b in -50i64..50) {
        prop_assume!(a != 0 || b != 0);
        let x = GoldenScalar::from_ints(a, b);
        prop_assert_eq!(&x * &x.recip().unwrap(), GoldenScalar::one());
        prop_assert_eq!(x.norm(), Fraction::from_integer((a * a + a * b - b * b).into()));
    }

    #[test]
    fn golden_order_agrees_with_floats(a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500) {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let (x, y) = (a as f64 + b as f64 * phi, c as f64 + d as f64 * phi);
        prop_assume!((x - y).abs() > 1e-6);
        let cmp = GoldenScalar::from_ints(a, b).cmp(&GoldenScalar::from_ints(c, d));
        prop_assert_eq!(cmp, x.partial_cmp(&y).unwrap());
    }

    #[test]
    fn surd_order_agrees_with_floats(p in -200i64..200, q in -20i64..20, d in 2i64..60, r in 1i64..30,
                                     p2 in -200i64..200, q2 in -20i64..20) {
        let u = QuadraticSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap();
        let v = QuadraticSurd::new(p2.into(), q2.into(), d.into(), r.into()).unwrap();
        let (x, y) = ((p as f64 + q as f64 * (d as f64).sqrt()) / r as f64, (p2 as f64 + q2 as f64 * (d as f64).sqrt()) / r as f64);
        prop_assume!((x - y).abs() > 1e-9);
        prop_assert_eq!(u.cmp(&v), x.partial_cmp(&y).unwrap());
    }

    #[test]
    fn surd_arithmetic_round_trip(p in -100i64..100, q in 1i64..20, d in 2i64..40, r in 1i64..20, k in 1i64..50) {
        let u = QuadraticSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap();
        let w = QuadraticSurd::new(k.into(), 1.into(), d.into(), 1.into()).unwrap();
        prop_assert_eq!(u.mul(&w).unwrap().div(&w).unwrap(), u.clone());
        prop_assert_eq!(u.add(&w).unwrap().sub(&w).unwrap(), u);
    }
}

#[test]
fn golden_scalar_parses_its_display() {
    for (a, b) in [(0, 0), (3, -2), (-7, 5), (1, 1)] {
        let x = GoldenScalar::from_ints(a, b);
        assert_eq!(x.to_string().parse::<GoldenScalar>().unwrap(), x);
    }
    assert_eq!(GoldenScalar::phi().pow(10), GoldenScalar::phi_pow(10));
    assert_eq!(GoldenScalar::phi_pow(10), GoldenScalar::from_ints(34, 55));
}
