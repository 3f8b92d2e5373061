//! Theta-function identities on random monomial arguments `±q^(k/5)`.

use proptest::prelude::*;
use qrr::theta::{self, Monomial, ThetaPair};
use qrr::{rr, LaurentSeries};

const BOUND: i64 = 200;

fn mono() -> impl Strategy<Value = (bool, i64)> {
    (any::<bool>(), -12i64..30)
}

fn m((neg, k): (bool, i64)) -> Monomial {
    Monomial::new(neg, k, 5)
}

fn f(a: Monomial, b: Monomial) -> LaurentSeries {
    theta::theta_sum(&ThetaPair::new(a, b).unwrap(), 5, BOUND).unwrap()
}

fn mono_series(a: Monomial) -> LaurentSeries {
    let sign = if a.negative { -1 } else { 1 };
    LaurentSeries::monomial(5, a.index(5), sign.into(), BOUND + 100)
}

fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let n = a.bound().min(b.bound());
    a.truncate(n) == b.truncate(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_matches_product((a, b) in (mono(), mono()).prop_filter("convergent", |(a, b)| a.1 + b.1 > 0)) {
        let p = ThetaPair::new(m(a), m(b)).unwrap();
        prop_assert_eq!(
            theta::theta_sum(&p, 5, BOUND).unwrap(),
            theta::theta_product(&p, 5, BOUND).unwrap()
        );
    }

    #[test]
    fn symmetric((a, b) in (mono(), mono()).prop_filter("convergent", |(a, b)| a.1 + b.1 > 0)) {
        prop_assert_eq!(f(m(a), m(b)), f(m(b), m(a)));
    }

    #[test]
    fn even_and_odd_parts((a, b) in (mono(), mono()).prop_filter("convergent", |(a, b)| a.1 + b.1 > 0)) {
        let (a, b) = (m(a), m(b));
        let plus = f(a, b).add(&f(a.negated(), b.negated())).unwrap();
        let two = LaurentSeries::monomial(5, 0, 2.into(), 1000);
        let even = two.mul(&f(a.pow(3) * b, a * b.pow(3))).unwrap();
        prop_assert!(agree(&plus, &even));
        let minus = f(a, b).sub(&f(a.negated(), b.negated())).unwrap();
        let odd = two
            .mul(&mono_series(a))
            .unwrap()
            .mul(&f(b * a.inv(), a.pow(5) * b.pow(3)))
            .unwrap();
        prop_assert!(agree(&minus, &odd));
    }

    #[test]
    fn product_formula_when_ab_equals_cd(
        (a, b, c) in (mono(), mono(), mono())
            .prop_filter("convergent", |(a, b, c)| a.1 + b.1 > 0 && a.1 + b.1 - c.1 > -12 && c.1 > -12),
    ) {
        let (a, b, c) = (m(a), m(b), m(c));
        let d = a * b * c.inv();
        prop_assume!(c.exp + d.exp > 0.into());
        let lhs = f(a, b).mul(&f(c, d)).unwrap();
        let first = f(a * c, b * d).mul(&f(a * d, b * c)).unwrap();
        let second = mono_series(a)
            .mul(&f(b * c.inv(), a * c.pow(2) * d))
            .unwrap()
            .mul(&f(b * d.inv(), a * c * d.pow(2)))
            .unwrap();
        prop_assert!(agree(&lhs, &first.add(&second).unwrap()));
    }
}

#[test]
fn rogers_ramanujan_sum_and_product_forms() {
    assert_eq!(rr::g_sum(60), rr::g_product(60));
    assert_eq!(rr::h_sum(60), rr::h_product(60));
}

#[test]
fn named_special_cases() {
    let q = |k| Monomial::q(k);
    let bound = 60;
    let on = |s: LaurentSeries| s.to_denom(5).unwrap().truncate(bound * 5);
    let by = |a: Monomial, b: Monomial| {
        theta::theta_sum(&ThetaPair::new(a, b).unwrap(), 5, bound * 5).unwrap()
    };
    assert_eq!(by(q(1), q(1)), on(theta::phi(bound)));
    assert_eq!(by(q(1), q(3)), on(theta::psi(bound)));
    assert_eq!(
        by(Monomial::neg_q(1), Monomial::neg_q(2)),
        on(theta::fm(bound))
    );
}
