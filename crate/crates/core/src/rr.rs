//! The Rogers-Ramanujan functions `G`, `H`, their quotient `T = H/G`, the
//! continued fraction `R = q^(1/5) T`, and its finite convergents.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::series::{LaurentSeries, VerifyOutcome};
use crate::theta::pochhammer;
use crate::LATTICE;

type Result<T> = std::result::Result<T, SeriesError>;

/// `q^(prefix/5) · body`.
///
/// Values whose terms all share one residue class modulo `1/5` keep an
/// integral body (lattice 1) starting at `q^0`, with the prefix carrying the
/// full order; anything else is held as a single series on the `1/5` lattice
/// with a zero prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixedSeries {
    prefix: i64,
    body: LaurentSeries,
}

impl PrefixedSeries {
    pub fn new(prefix: i64, body: LaurentSeries) -> Result<Self> {
        match body.denom() {
            1 => Ok(Self::canonical_integral(prefix, body)),
            LATTICE => Ok(Self::canonical_fifths(body.shift(prefix))),
            d => Err(SeriesError::InvalidArgument(format!(
                "prefixed series need lattice 1 or 1/{LATTICE}, got 1/{d}"
            ))),
        }
    }

    pub fn integral(body: LaurentSeries) -> Self {
        Self::new(0, body).expect("lattice 1")
    }

    fn canonical_integral(prefix: i64, body: LaurentSeries) -> Self {
        let five = LATTICE as i64;
        if body.is_zero_to_bound() {
            return PrefixedSeries {
                prefix: prefix.rem_euclid(five),
                body: body.shift(prefix.div_euclid(five)),
            };
        }
        let lo = body.lo();
        PrefixedSeries {
            prefix: prefix + five * lo,
            body: body.shift(-lo),
        }
    }

    fn canonical_fifths(body: LaurentSeries) -> Self {
        let five = LATTICE as i64;
        if body.is_zero_to_bound() {
            return PrefixedSeries { prefix: 0, body };
        }
        let class = body.lo().rem_euclid(five);
        if body.terms().all(|(k, _)| k.rem_euclid(five) == class) {
            let integral = body
                .shift(-class)
                .coarsen(1)
                .expect("single residue class lies on the integer lattice");
            return Self::canonical_integral(class, integral);
        }
        PrefixedSeries { prefix: 0, body }
    }

    /// Prefix in fifths (always 0 for a value on the `1/5` lattice).
    pub fn prefix(&self) -> i64 {
        self.prefix
    }

    pub fn body(&self) -> &LaurentSeries {
        &self.body
    }

    pub fn is_integral_body(&self) -> bool {
        self.body.denom() == 1
    }

    /// The whole value as a series on the `1/5` lattice.
    pub fn to_fifths(&self) -> LaurentSeries {
        if self.body.denom() == LATTICE {
            self.body.clone()
        } else {
            self.body
                .to_denom(LATTICE)
                .expect("1 divides 5")
                .shift(self.prefix)
        }
    }

    /// Exactness bound in fifths of q.
    pub fn bound_fifths(&self) -> i64 {
        if self.body.denom() == LATTICE {
            self.body.bound()
        } else {
            self.body.bound() * LATTICE as i64 + self.prefix
        }
    }

    pub fn q_order(&self) -> Option<Rational64> {
        self.to_fifths().q_order()
    }

    /// Drops terms at and above `q^(bound/5)`; an integral body keeps its
    /// lattice, so the result may stay exact up to four fifths further.
    pub fn truncate_fifths(&self, bound: i64) -> Self {
        if self.is_integral_body() {
            let five = LATTICE as i64;
            let body_bound = (bound - self.prefix).div_euclid(five)
                + i64::from((bound - self.prefix).rem_euclid(five) != 0);
            return Self::canonical_integral(self.prefix, self.body.truncate(body_bound));
        }
        Self::canonical_fifths(self.body.truncate(bound))
    }

    pub fn is_zero(&self) -> VerifyOutcome {
        self.to_fifths().is_zero()
    }

    pub fn constant(c: BigInt, bound_fifths: i64) -> Self {
        let bound = bound_fifths.div_euclid(LATTICE as i64).max(0) + 1;
        Self::integral(LaurentSeries::monomial(1, 0, c, bound))
    }

    /// `q^(m/5)`
    pub fn q_power(m: i64, bound_fifths: i64) -> Self {
        let bound = (bound_fifths - m).div_euclid(LATTICE as i64) + 1;
        let body = LaurentSeries::monomial(1, 0, BigInt::one(), bound.max(0));
        Self::canonical_integral(m, body)
    }

    fn same_class(&self, other: &Self) -> bool {
        self.is_integral_body()
            && other.is_integral_body()
            && (self.prefix - other.prefix).rem_euclid(LATTICE as i64) == 0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.same_class(other) {
            let base = self.prefix.min(other.prefix);
            let five = LATTICE as i64;
            let a = self.body.shift((self.prefix - base) / five);
            let b = other.body.shift((other.prefix - base) / five);
            return Ok(Self::canonical_integral(base, a.add(&b)?));
        }
        Ok(Self::canonical_fifths(
            self.to_fifths().add(&other.to_fifths())?,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PrefixedSeries {
            prefix: self.prefix,
            body: self.body.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_integral_body() && other.is_integral_body() {
            return Ok(Self::canonical_integral(
                self.prefix + other.prefix,
                self.body.mul(&other.body)?,
            ));
        }
        Ok(Self::canonical_fifths(
            self.to_fifths().mul(&other.to_fifths())?,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.is_integral_body() && other.is_integral_body() {
            return Ok(Self::canonical_integral(
                self.prefix - other.prefix,
                self.body.div(&other.body)?,
            ));
        }
        Ok(Self::canonical_fifths(
            self.to_fifths().div(&other.to_fifths())?,
        ))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            if self.is_integral_body() {
                return Ok(Self::canonical_integral(self.prefix * n, self.body.pow(n)?));
            }
            return Ok(Self::canonical_fifths(self.to_fifths().pow(n)?));
        }
        let positive = self.pow(-n)?;
        let rel = positive.bound_fifths() - positive.to_fifths().lo();
        Self::constant(BigInt::one(), rel).div(&positive)
    }

    /// `q ↦ -q`; fails unless every term has an integral exponent.
    pub fn negate_q(&self) -> Result<Self> {
        if self.is_integral_body() && self.prefix == 0 {
            return Ok(Self::integral(self.body.negate_q()?));
        }
        Ok(Self::canonical_fifths(self.to_fifths().negate_q()?))
    }

    pub fn substitute_power(&self, k: u32) -> Self {
        if self.is_integral_body() {
            Self::canonical_integral(self.prefix * k as i64, self.body.substitute_power(k))
        } else {
            Self::canonical_fifths(self.body.substitute_power(k))
        }
    }
}

fn base_order(bound: i64, k: u32) -> i64 {
    bound.div_euclid(k as i64) + 1
}

/// `1/((q;q⁵)∞ (q⁴;q⁵)∞)` to `q^bound`.
pub fn g_product(bound: i64) -> LaurentSeries {
    pochhammer(1, 1, 5, 1, bound)
        .and_then(|a| a.mul(&pochhammer(1, 4, 5, 1, bound)?))
        .and_then(|p| p.invert())
        .expect("unit-leading products")
}

/// `1/((q²;q⁵)∞ (q³;q⁵)∞)` to `q^bound`.
pub fn h_product(bound: i64) -> LaurentSeries {
    pochhammer(1, 2, 5, 1, bound)
        .and_then(|a| a.mul(&pochhammer(1, 3, 5, 1, bound)?))
        .and_then(|p| p.invert())
        .expect("unit-leading products")
}

/// `Σ_{n≥0} q^(n² + shift·n) / (q;q)_n`
fn rr_sum(shift: i64, bound: i64) -> LaurentSeries {
    let len = bound.max(0) as usize;
    let mut acc = vec![BigInt::zero(); len];
    // 1/(q;q)_n, grown one factor at a time.
    let mut partial = vec![BigInt::zero(); len];
    if len > 0 {
        partial[0] = BigInt::one();
    }
    let mut n: i64 = 0;
    loop {
        let e = n * n + shift * n;
        if e >= bound {
            break;
        }
        if n > 0 {
            let step = n as usize;
            for k in step..len {
                let t = partial[k - step].clone();
                partial[k] += t;
            }
        }
        for k in e as usize..len {
            acc[k] += &partial[k - e as usize];
        }
        n += 1;
    }
    LaurentSeries::from_coeffs(1, 0, acc, bound.max(0))
}

/// `G(q)` from its defining sum.
pub fn g_sum(bound: i64) -> LaurentSeries {
    rr_sum(0, bound)
}

/// `H(q)` from its defining sum.
pub fn h_sum(bound: i64) -> LaurentSeries {
    rr_sum(1, bound)
}

/// `G(q^k)` to `q^bound`.
pub fn g(k: u32, bound: i64) -> LaurentSeries {
    let n = base_order(bound, k);
    let prod = g_product(n);
    assert_eq!(prod, g_sum(n), "G: sum and product forms disagree");
    prod.substitute_power(k).truncate(bound)
}

/// `H(q^k)` to `q^bound`.
pub fn h(k: u32, bound: i64) -> LaurentSeries {
    let n = base_order(bound, k);
    let prod = h_product(n);
    assert_eq!(prod, h_sum(n), "H: sum and product forms disagree");
    prod.substitute_power(k).truncate(bound)
}

/// `T(q) = (q;q⁵)(q⁴;q⁵) / ((q²;q⁵)(q³;q⁵))`
pub fn t_product(bound: i64) -> LaurentSeries {
    let num = pochhammer(1, 1, 5, 1, bound)
        .and_then(|a| a.mul(&pochhammer(1, 4, 5, 1, bound)?))
        .unwrap();
    let den = pochhammer(1, 2, 5, 1, bound)
        .and_then(|a| a.mul(&pochhammer(1, 3, 5, 1, bound)?))
        .unwrap();
    num.div(&den).unwrap()
}

/// `T(q^k) = H(q^k) / G(q^k)`, integral in q.
pub fn t(k: u32, bound: i64) -> LaurentSeries {
    let n = base_order(bound, k);
    let quotient = h(1, n).div(&g(1, n)).expect("G is unit-leading");
    quotient.substitute_power(k).truncate(bound)
}

/// `R(q^k) = q^(k/5) T(q^k)`; `bound` is in fifths of q.
pub fn r(k: u32, bound_fifths: i64) -> PrefixedSeries {
    let body_bound = (bound_fifths - k as i64).div_euclid(LATTICE as i64) + 1;
    PrefixedSeries::new(k as i64, t(k, body_bound.max(0))).expect("lattice 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    G,
    H,
    T,
}

/// `G(-q)`, `H(-q)` or `T(-q)` from the q-product quotients
///
/// `G(-q) = G(q²)H²(q²) / (G(q)H(q⁴))`, `H(-q) = H(q²)G²(q²) / (H(q)G(q⁴))`,
/// `T(-q) = T(q⁴) / (T(q)T(q²))`,
///
/// checked against `q ↦ -q` applied to the series itself.
pub fn twisted(which: Twist, bound: i64) -> Result<LaurentSeries> {
    let quotient = match which {
        Twist::G => g(2, bound)
            .mul(&h(2, bound).pow(2)?)?
            .div(&g(1, bound).mul(&h(4, bound))?)?,
        Twist::H => h(2, bound)
            .mul(&g(2, bound).pow(2)?)?
            .div(&h(1, bound).mul(&g(4, bound))?)?,
        Twist::T => t(4, bound).div(&t(1, bound).mul(&t(2, bound))?)?,
    };
    let direct = match which {
        Twist::G => g(1, bound),
        Twist::H => h(1, bound),
        Twist::T => t(1, bound),
    }
    .negate_q()?;
    if quotient != direct {
        return Err(SeriesError::InvalidArgument(format!(
            "{which:?}(-q): quotient form disagrees with the direct substitution"
        )));
    }
    Ok(direct)
}

/// Depth-`depth` truncation `q^(1/5) / (1 + q/(1 + q²/(1 + ... + q^depth)))`.
pub fn cf_convergent(depth: u32, bound_fifths: i64) -> PrefixedSeries {
    let bound = (bound_fifths - 1).div_euclid(LATTICE as i64) + 1;
    let bound = bound.max(0);
    let one = LaurentSeries::one(1, bound);
    let mut tail = one.clone();
    for j in (1..=depth as i64).rev() {
        let step = LaurentSeries::monomial(1, j, BigInt::one(), bound)
            .div(&tail)
            .expect("partial denominators are unit-leading");
        tail = one.add(&step).unwrap();
    }
    let body = tail
        .invert()
        .expect("partial denominators are unit-leading");
    PrefixedSeries::new(1, body).expect("lattice 1")
}

/// Continued-fraction depth that agrees with `R` beyond `bound_fifths`.
pub fn default_cf_depth(bound_fifths: i64) -> u32 {
    (2 * bound_fifths / LATTICE as i64).max(1) as u32
}
