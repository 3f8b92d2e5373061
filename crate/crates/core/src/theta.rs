//! Ramanujan's theta function `f(a, b)` at signed monomial arguments, its
//! named special cases, and infinite q-Pochhammer products.
//!
//! Each theta function is available as a bilateral sum and as a Jacobi
//! triple product so the two can be checked against each other.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;
use crate::series::{LaurentSeries, VerifyOutcome};

type Result<T> = std::result::Result<T, SeriesError>;

/// `±q^e` with a rational exponent `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub negative: bool,
    pub exp: Rational64,
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Self) -> Self {
        Monomial {
            negative: self.negative != other.negative,
            exp: self.exp + other.exp,
        }
    }
}

impl Monomial {
    pub fn new(negative: bool, num: i64, den: i64) -> Self {
        Monomial {
            negative,
            exp: Rational64::new(num, den),
        }
    }

    /// `q^p`
    pub fn q(p: i64) -> Self {
        Self::new(false, p, 1)
    }

    /// `-q^p`
    pub fn neg_q(p: i64) -> Self {
        Self::new(true, p, 1)
    }

    pub fn pow(self, n: i64) -> Self {
        Monomial {
            negative: self.negative && n.is_odd(),
            exp: self.exp * n,
        }
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }

    pub fn negated(self) -> Self {
        Monomial {
            negative: !self.negative,
            exp: self.exp,
        }
    }

    /// Smallest lattice denominator holding the exponent.
    pub fn lattice(&self) -> u32 {
        *self.exp.denom() as u32
    }

    /// Exponent in units of `1/denom`; `denom` must be a multiple of the lattice.
    pub fn index(&self, denom: u32) -> i64 {
        let scaled = self.exp * Rational64::from_integer(denom as i64);
        assert!(
            scaled.is_integer(),
            "q^{} is not on the 1/{denom} lattice",
            self.exp
        );
        scaled.to_integer()
    }

    fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.exp.is_one() {
            write!(f, "q")
        } else if self.exp.is_integer() && !self.exp.is_negative() {
            write!(f, "q^{}", self.exp)
        } else {
            write!(f, "q^({})", self.exp)
        }
    }
}

/// The argument pair `(a, b)` of `f(a, b)`; convergence needs `|ab| < 1`,
/// i.e. a positive exponent sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPair {
    pub a: Monomial,
    pub b: Monomial,
}

impl ThetaPair {
    pub fn new(a: Monomial, b: Monomial) -> Result<Self> {
        let sum = a.exp + b.exp;
        if sum <= Rational64::zero() {
            return Err(SeriesError::DivergentPair(sum));
        }
        Ok(ThetaPair { a, b })
    }

    pub fn lattice(&self) -> u32 {
        lcm(self.a.lattice(), self.b.lattice())
    }

    pub fn swapped(self) -> Self {
        ThetaPair {
            a: self.b,
            b: self.a,
        }
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn check_lattice(denom: u32, need: u32) -> Result<()> {
    if denom % need != 0 {
        return Err(SeriesError::InvalidArgument(format!(
            "arguments need the q^(1/{need}) lattice, got q^(1/{denom})"
        )));
    }
    Ok(())
}

/// `f(a, b) = Σ_n a^(n(n+1)/2) b^(n(n-1)/2)` over the exact window of `n`
/// whose term exponent lies below `bound` (units of `1/denom`).
pub fn theta_sum(pair: &ThetaPair, denom: u32, bound: i64) -> Result<LaurentSeries> {
    check_lattice(denom, pair.lattice())?;
    let ea = pair.a.index(denom);
    let eb = pair.b.index(denom);
    let total = ea + eb;
    // term(n) = (total·n² + (ea - eb)·n) / 2, a convex quadratic in n.
    let term = |n: i64| -> i128 {
        let n = n as i128;
        (ea as i128 * n * (n + 1) + eb as i128 * n * (n - 1)) / 2
    };
    let lin = (ea - eb) as f64;
    let disc = lin * lin + 8.0 * total as f64 * bound as f64;
    if disc < 0.0 {
        return Ok(LaurentSeries::zero(denom, bound));
    }
    let root = disc.sqrt();
    let two_s = 2.0 * total as f64;
    let lo_n = ((-lin - root) / two_s).floor() as i64 - 2;
    let hi_n = ((-lin + root) / two_s).ceil() as i64 + 2;
    let terms = (lo_n..=hi_n).filter_map(|n| {
        let e = term(n);
        if e >= bound as i128 {
            return None;
        }
        let mut sign = 1;
        if pair.a.negative && (n * (n + 1) / 2).is_odd() {
            sign = -sign;
        }
        if pair.b.negative && (n * (n - 1) / 2).is_odd() {
            sign = -sign;
        }
        Some((e as i64, BigInt::from(sign)))
    });
    Ok(LaurentSeries::from_terms(denom, terms, bound))
}

/// `f(a, b)` through the Jacobi triple product `(-a;ab)∞ (-b;ab)∞ (ab;ab)∞`.
pub fn theta_product(pair: &ThetaPair, denom: u32, bound: i64) -> Result<LaurentSeries> {
    check_lattice(denom, pair.lattice())?;
    let pair = ThetaPair::new(pair.a, pair.b)?;
    // f(a,b) = f(b,a) = a·f(1/a, a²b) moves every exponent to a nonnegative one.
    let mut prefactor = Monomial::q(0);
    let mut p = pair;
    for _ in 0..64 {
        if p.a.exp.is_negative() {
            prefactor = prefactor * p.a;
            p = ThetaPair {
                a: p.a.inv(),
                b: p.a.pow(2) * p.b,
            };
        } else if p.b.exp.is_negative() {
            p = p.swapped();
        } else {
            break;
        }
    }
    let shift = prefactor.index(denom);
    let inner_bound = bound - shift;
    let ab = p.a * p.b;
    let mut acc = vec![BigInt::zero(); inner_bound.max(0) as usize];
    if let Some(first) = acc.first_mut() {
        *first = BigInt::one();
    }
    for x in [p.a.negated(), p.b.negated(), ab] {
        poch_signed(&mut acc, x, ab, denom);
    }
    let body = LaurentSeries::from_coeffs(denom, 0, acc, inner_bound.max(0));
    let body = if inner_bound < 0 {
        LaurentSeries::zero(denom, inner_bound)
    } else {
        body
    };
    Ok(body.scale(&BigInt::from(prefactor.sign())).shift(shift))
}

/// Multiplies a dense run from exponent 0 by `(x; y)∞ = Π_{k≥0} (1 - x·y^k)`.
/// A negative base `y = -Q` splits into `(x; Q²)∞ (-xQ; Q²)∞`.
fn poch_signed(acc: &mut [BigInt], x: Monomial, y: Monomial, denom: u32) {
    let (r, s) = (x.index(denom), y.index(denom));
    if y.negative {
        poch_in_place(acc, x.negative, r, 2 * s);
        poch_in_place(acc, !x.negative, r + s, 2 * s);
    } else {
        poch_in_place(acc, x.negative, r, s);
    }
}

/// Multiplies a dense run from exponent 0 by `Π_{k≥0} (1 - c·q^(r + k·s))`
/// where `c = -1` when `plus` is set. A factor with exponent 0 is the
/// constant `1 - c`.
fn poch_in_place(acc: &mut [BigInt], plus: bool, r: i64, s: i64) {
    assert!(r >= 0 && s > 0);
    let n = acc.len() as i64;
    let mut e = r;
    if e == 0 {
        let c: i64 = if plus { 2 } else { 0 };
        for x in acc.iter_mut() {
            *x *= c;
        }
        e += s;
    }
    while e < n {
        let step = e as usize;
        for k in (step..acc.len()).rev() {
            let t = acc[k - step].clone();
            if t.is_zero() {
                continue;
            }
            if plus {
                acc[k] += t;
            } else {
                acc[k] -= t;
            }
        }
        e += s;
    }
}

/// `Π_{k≥0} (1 - sign·q^(r + k·s))` with `sign = ±1`, to `bound`; `r` and
/// `s` are exponent indices on the `1/denom` lattice.
pub fn pochhammer(sign: i8, r: i64, s: i64, denom: u32, bound: i64) -> Result<LaurentSeries> {
    if r < 1 || s < 1 {
        return Err(SeriesError::InvalidArgument(format!(
            "infinite product needs positive exponents, got r = {r}, s = {s}"
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(SeriesError::InvalidArgument(format!(
            "sign must be ±1, got {sign}"
        )));
    }
    if bound <= 0 {
        return Ok(LaurentSeries::one(denom, bound));
    }
    let mut acc = vec![BigInt::zero(); bound as usize];
    acc[0] = BigInt::one();
    poch_in_place(&mut acc, sign < 0, r, s);
    Ok(LaurentSeries::from_coeffs(denom, 0, acc, bound))
}

/// `(a; base)∞` for monomials `a = ±q^α`, `base = ±q^β`.
pub fn poch_monomial(a: Monomial, base: Monomial, denom: u32, bound: i64) -> Result<LaurentSeries> {
    check_lattice(denom, lcm(a.lattice(), base.lattice()))?;
    if !a.exp.is_positive() || !base.exp.is_positive() {
        return Err(SeriesError::InvalidArgument(format!(
            "infinite product needs positive exponents, got ({a}; {base})"
        )));
    }
    if bound <= 0 {
        return Ok(LaurentSeries::one(denom, bound));
    }
    let mut acc = vec![BigInt::zero(); bound as usize];
    acc[0] = BigInt::one();
    poch_signed(&mut acc, a, base, denom);
    Ok(LaurentSeries::from_coeffs(denom, 0, acc, bound))
}

fn mono_pair(a: Monomial, b: Monomial) -> ThetaPair {
    ThetaPair::new(a, b).expect("named theta pairs converge")
}

fn agree(name: &str, sum: &LaurentSeries, product: &LaurentSeries) {
    assert_eq!(sum, product, "{name}: sum and product forms disagree");
}

fn fm_product(k: i64, bound: i64) -> LaurentSeries {
    pochhammer(1, k, k, 1, bound).expect("positive exponents")
}

/// `φ(q) = f(q, q) = (q²;q²)⁵ / ((q;q)² (q⁴;q⁴)²)`
pub fn phi(bound: i64) -> LaurentSeries {
    let sum = theta_sum(&mono_pair(Monomial::q(1), Monomial::q(1)), 1, bound).unwrap();
    let product = fm_product(2, bound)
        .pow(5)
        .and_then(|n| n.mul(&fm_product(1, bound).pow(-2)?))
        .and_then(|n| n.mul(&fm_product(4, bound).pow(-2)?))
        .unwrap();
    agree("phi", &sum, &product);
    sum
}

/// `ψ(q) = f(q, q³) = (q²;q²)² / (q;q)`
pub fn psi(bound: i64) -> LaurentSeries {
    let sum = theta_sum(&mono_pair(Monomial::q(1), Monomial::q(3)), 1, bound).unwrap();
    let product = fm_product(2, bound)
        .pow(2)
        .and_then(|n| n.mul(&fm_product(1, bound).invert()?))
        .unwrap();
    agree("psi", &sum, &product);
    sum
}

/// `χ(q) = (-q; q²)∞ = (q²;q²)² / ((q;q)(q⁴;q⁴))`
pub fn chi(bound: i64) -> LaurentSeries {
    let product = pochhammer(-1, 1, 2, 1, bound).unwrap();
    let quotient = fm_product(2, bound)
        .pow(2)
        .and_then(|n| n.mul(&fm_product(1, bound).invert()?))
        .and_then(|n| n.mul(&fm_product(4, bound).invert()?))
        .unwrap();
    agree("chi", &product, &quotient);
    product
}

/// `f(-q) = f(-q, -q²) = (q;q)∞`
pub fn fm(bound: i64) -> LaurentSeries {
    let sum = theta_sum(&mono_pair(Monomial::neg_q(1), Monomial::neg_q(2)), 1, bound).unwrap();
    let product = fm_product(1, bound);
    agree("fm", &sum, &product);
    sum
}

/// Checks the quintuple product identity
///
/// `f(B³q, q⁵/B³) - B² f(q/B³, B³q⁵) = f(-q²) f(-B², -q²/B²) / f(Bq, q/B)`
///
/// after the substitution `q ↦ q^base`, up to `q^bound`. The lattice is the
/// least common denominator of every argument, e.g. 1/10 for half-integer
/// specializations.
pub fn quintuple(b: Monomial, base: Rational64, bound: i64) -> Result<VerifyOutcome> {
    if !base.is_positive() {
        return Err(SeriesError::InvalidArgument(format!(
            "base exponent must be positive, got {base}"
        )));
    }
    let q = Monomial {
        negative: false,
        exp: base,
    };
    let b3 = b.pow(3);
    let lhs1 = ThetaPair::new(b3 * q, q.pow(5) * b3.inv())?;
    let pref = b.pow(2);
    let lhs2 = ThetaPair::new(q * b3.inv(), b3 * q.pow(5))?;
    let fm2 = ThetaPair::new(q.pow(2).negated(), q.pow(4).negated())?;
    let num = ThetaPair::new(b.pow(2).negated(), (q.pow(2) * b.pow(-2)).negated())?;
    let den = ThetaPair::new(b * q, q * b.inv())?;

    let denom = [lhs1, lhs2, fm2, num, den]
        .iter()
        .map(ThetaPair::lattice)
        .fold(pref.lattice(), lcm);
    let target = bound * denom as i64;
    let shift = pref.index(denom);

    let mut margin = shift.abs() + 2 * denom as i64;
    for _ in 0..8 {
        let n = target + margin;
        let l1 = theta_sum(&lhs1, denom, n)?;
        let l2 = theta_sum(&lhs2, denom, n)?
            .shift(shift)
            .scale(&BigInt::from(pref.sign()));
        let rhs = theta_sum(&fm2, denom, n)?
            .mul(&theta_sum(&num, denom, n)?)?
            .div(&theta_sum(&den, denom, n)?)?;
        let diff = l1.sub(&l2)?.sub(&rhs)?;
        if diff.bound() >= target {
            let diff = diff.truncate(target);
            // Restrict back to the coarsest lattice the difference lives on.
            let coarse = if diff.is_zero_to_bound() {
                diff.coarsen(1).unwrap_or(diff)
            } else {
                diff.reduce_lattice()
            };
            return Ok(coarse.is_zero());
        }
        margin += target - diff.bound() + denom as i64;
    }
    Err(SeriesError::InvalidArgument(
        "quintuple specialization loses too much precision".into(),
    ))
}

/// Exponent of the lowest term of `f(a, b)`, useful when sizing margins.
pub fn theta_low_index(pair: &ThetaPair, denom: u32) -> i64 {
    let ea = pair.a.index(denom) as f64;
    let eb = pair.b.index(denom) as f64;
    let total = ea + eb;
    let vertex = -(ea - eb) / (2.0 * total);
    let term = |n: i64| (pair.a.index(denom) * n * (n + 1) + pair.b.index(denom) * n * (n - 1)) / 2;
    let c = vertex.round() as i64;
    (c - 1..=c + 1).map(term).min().unwrap()
}

#[allow(dead_code)]
fn to_i64(c: &BigInt) -> i64 {
    c.to_i64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: Monomial, b: Monomial) -> ThetaPair {
        ThetaPair::new(a, b).unwrap()
    }

    #[test]
    fn phi_sum_terms() {
        let s = theta_sum(&pair(Monomial::q(1), Monomial::q(1)), 1, 16).unwrap();
        let expect = LaurentSeries::from_i64s(1, 0, &[1, 2, 0, 0, 2, 0, 0, 0, 0, 2], 16);
        assert_eq!(s, expect);
    }

    #[test]
    fn psi_sum_triangular() {
        let s = theta_sum(&pair(Monomial::q(1), Monomial::q(3)), 1, 11).unwrap();
        let tri: Vec<i64> = s.terms().map(|(k, _)| k).collect();
        assert_eq!(tri, vec![0, 1, 3, 6, 10]);
    }

    #[test]
    fn pentagonal_sum() {
        let s = theta_sum(&pair(Monomial::neg_q(1), Monomial::neg_q(2)), 1, 27).unwrap();
        let terms: Vec<(i64, i64)> = s.terms().map(|(k, c)| (k, to_i64(c))).collect();
        assert_eq!(
            terms,
            vec![
                (0, 1),
                (1, -1),
                (2, -1),
                (5, 1),
                (7, 1),
                (12, -1),
                (15, -1),
                (22, 1),
                (26, 1)
            ]
        );
    }

    #[test]
    fn mixed_signs_match_product() {
        for (a, b) in [(3, 7), (12, 3), (-10, 20), (1, 1), (0, 5)] {
            for (na, nb) in [(false, true), (true, false)] {
                let p = pair(Monomial::new(na, a, 5), Monomial::new(nb, b, 5));
                assert_eq!(
                    theta_sum(&p, 5, 120).unwrap(),
                    theta_product(&p, 5, 120).unwrap(),
                    "f({}, {})",
                    p.a,
                    p.b
                );
            }
        }
    }

    #[test]
    fn negative_base_product() {
        let q = Monomial::q;
        let direct = poch_monomial(q(1), Monomial::neg_q(1), 1, 30).unwrap();
        let split = poch_monomial(q(1), q(2), 1, 30)
            .unwrap()
            .mul(&poch_monomial(Monomial::neg_q(2), q(2), 1, 30).unwrap())
            .unwrap();
        assert_eq!(direct, split);
    }

    #[test]
    fn divergent_pair_rejected() {
        assert!(matches!(
            ThetaPair::new(Monomial::q(-2), Monomial::q(1)),
            Err(SeriesError::DivergentPair(_))
        ));
    }

    #[test]
    fn product_matches_sum_with_negative_exponent() {
        let p = pair(Monomial::q(-2), Monomial::q(17));
        assert_eq!(
            theta_sum(&p, 1, 80).unwrap(),
            theta_product(&p, 1, 80).unwrap()
        );
        let p = pair(Monomial::neg_q(0), Monomial::neg_q(3));
        assert_eq!(
            theta_sum(&p, 1, 40).unwrap(),
            theta_product(&p, 1, 40).unwrap()
        );
    }

    #[test]
    fn euler_identity() {
        let a = pochhammer(-1, 1, 1, 1, 60).unwrap();
        let b = pochhammer(1, 1, 2, 1, 60).unwrap();
        assert_eq!(a.mul(&b).unwrap(), LaurentSeries::one(1, 60));
    }

    #[test]
    fn pochhammer_requires_positive_start() {
        assert!(pochhammer(1, 0, 1, 1, 10).is_err());
    }

    #[test]
    fn named_constructors_cross_check() {
        for n in [1, 7, 60] {
            phi(n);
            psi(n);
            chi(n);
            fm(n);
        }
    }

    #[test]
    fn quintuple_half_integer() {
        let b = Monomial {
            negative: false,
            exp: Rational64::new(3, 2),
        };
        let out = quintuple(b, Rational64::new(5, 2), 60).unwrap();
        assert!(out.is_zero(), "{out:?}");
    }

    #[test]
    fn low_index() {
        assert_eq!(
            theta_low_index(&pair(Monomial::q(-2), Monomial::q(17)), 1),
            -2
        );
        assert_eq!(theta_low_index(&pair(Monomial::q(1), Monomial::q(1)), 1), 0);
    }
}
