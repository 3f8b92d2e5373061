//! Algebraic properties of the series kernel on random small series.

use num_bigint::BigInt;
use proptest::prelude::*;
use qrr::LaurentSeries;

fn series(denom: u32) -> impl Strategy<Value = LaurentSeries> {
    (-6i64..6, prop::collection::vec(-5i64..=5, 1..12), 8i64..30).prop_map(
        move |(lo, cs, extra)| {
            let bound = lo + cs.len() as i64 + extra;
            LaurentSeries::from_i64s(denom, lo, &cs, bound)
        },
    )
}

/// Series with leading coefficient ±1 at a nonnegative exponent.
fn unit_leading(denom: u32) -> impl Strategy<Value = LaurentSeries> {
    (
        0i64..4,
        any::<bool>(),
        prop::collection::vec(-4i64..=4, 0..10),
        20i64..40,
    )
        .prop_map(move |(lo, neg, mut cs, bound)| {
            cs.insert(0, if neg { -1 } else { 1 });
            LaurentSeries::from_i64s(denom, lo, &cs, lo + bound)
        })
}

fn integral() -> impl Strategy<Value = LaurentSeries> {
    series(1)
}

/// Equality on the common range where both sides are known.
fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let n = a.bound().min(b.bound());
    a.truncate(n) == b.truncate(n)
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(agree(&l, &r));
        prop_assert!(a.sub(&a).unwrap().is_zero_to_bound());
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&l, &r));
        let one = LaurentSeries::one(5, a.bound() + 10);
        prop_assert!(agree(&a.mul(&one).unwrap(), &a));
    }

    #[test]
    fn distributive(a in series(1), b in series(1), c in series(1)) {
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&l, &r));
    }

    #[test]
    fn division_undoes_multiplication(a in series(5), b in unit_leading(5)) {
        let q = a.mul(&b).unwrap().div(&b).unwrap();
        prop_assert!(agree(&q, &a));
        let inv = b.invert().unwrap();
        prop_assert!(agree(&b.mul(&inv).unwrap(), &LaurentSeries::one(5, 1000)));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in integral(), b in integral(), k in 1u32..5) {
        let l = a.mul(&b).unwrap().substitute_power(k);
        let r = a.substitute_power(k).mul(&b.substitute_power(k)).unwrap();
        prop_assert!(agree(&l, &r));
        let l = a.add(&b).unwrap().substitute_power(k);
        let r = a.substitute_power(k).add(&b.substitute_power(k)).unwrap();
        prop_assert!(agree(&l, &r));
    }

    #[test]
    fn negate_q_is_an_involutive_homomorphism(a in integral(), b in integral()) {
        let l = a.mul(&b).unwrap().negate_q().unwrap();
        let r = a.negate_q().unwrap().mul(&b.negate_q().unwrap()).unwrap();
        prop_assert!(agree(&l, &r));
        prop_assert_eq!(a.negate_q().unwrap().negate_q().unwrap(), a);
    }

    #[test]
    fn dissection_is_linear_idempotent_and_orthogonal(
        a in integral(), b in integral(), m in 2u32..7, r in 0u32..7, s in 0u32..7,
    ) {
        let (r, s) = (r % m, s % m);
        let da = a.dissect(m, r).unwrap();
        prop_assert_eq!(
            a.add(&b).unwrap().dissect(m, r).unwrap(),
            da.add(&b.dissect(m, r).unwrap()).unwrap()
        );
        prop_assert_eq!(da.dissect(m, r).unwrap(), da.clone());
        if r != s {
            prop_assert!(da.dissect(m, s).unwrap().is_zero_to_bound());
        }
        let total = (0..m).fold(LaurentSeries::zero(1, a.bound()), |acc, t| {
            acc.add(&a.dissect(m, t).unwrap()).unwrap()
        });
        prop_assert_eq!(total, a);
    }

    #[test]
    fn truncation_is_sound(cs in prop::collection::vec(-3i64..=3, 1..8), n in 10i64..40) {
        // (1 + c1 q + ...)^2 / (1 - q) evaluated with bound n and 2n.
        let mut cs = cs;
        cs[0] = 1;
        let pipeline = |bound: i64| {
            let a = LaurentSeries::from_i64s(1, 0, &cs, bound);
            let b = LaurentSeries::from_i64s(1, 0, &[1, -1], bound);
            a.pow(2).unwrap().div(&b).unwrap().add(&a).unwrap()
        };
        let small = pipeline(n);
        let large = pipeline(2 * n);
        prop_assert!(small.bound() >= n);
        prop_assert_eq!(small.truncate(n), large.truncate(n));
    }

    #[test]
    fn coefficients_are_arbitrary_precision(e in 20u32..60) {
        let big = BigInt::from(3).pow(e);
        let s = LaurentSeries::monomial(1, 0, big.clone(), 4);
        let sq = s.mul(&s).unwrap();
        prop_assert_eq!(sq.coeff(0).unwrap(), &big * &big);
    }
}
