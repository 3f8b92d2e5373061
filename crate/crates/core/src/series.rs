//! Exact truncated Laurent series with exponents on the lattice `(1/D)·Z`.
//!
//! A series stores a dense run of coefficients starting at its least nonzero
//! exponent `lo` and is known exactly for every exponent index `k < bound`.
//! Nothing is assumed about exponents at or beyond `bound`, and every
//! operation propagates the tightest bound that is still sound.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    denom: u32,
    /// Least exponent index with a nonzero coefficient; equals `bound` for
    /// a series that vanishes up to its bound.
    lo: i64,
    coeffs: Vec<BigInt>,
    bound: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Zero,
    Nonzero,
}

/// Result of checking a series for vanishing below its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub status: Status,
    pub first_nonzero_exponent: Option<Rational64>,
    pub first_nonzero_coefficient: Option<BigInt>,
    /// In units of `1/denom`.
    pub checked_bound: i64,
    pub denom: u32,
}

impl VerifyOutcome {
    pub fn is_zero(&self) -> bool {
        self.status == Status::Zero
    }

    /// Checked bound expressed as an exponent of q.
    pub fn checked_exponent(&self) -> Rational64 {
        Rational64::new(self.checked_bound, self.denom as i64)
    }
}

impl LaurentSeries {
    pub fn zero(denom: u32, bound: i64) -> Self {
        assert!(denom > 0, "lattice denominator must be positive");
        LaurentSeries {
            denom,
            lo: bound,
            coeffs: Vec::new(),
            bound,
        }
    }

    pub fn one(denom: u32, bound: i64) -> Self {
        Self::monomial(denom, 0, BigInt::one(), bound)
    }

    /// `c · q^(k/denom)`, truncated at `bound`.
    pub fn monomial(denom: u32, k: i64, c: BigInt, bound: i64) -> Self {
        if k >= bound || c.is_zero() {
            return Self::zero(denom, bound);
        }
        let mut coeffs = vec![BigInt::zero(); (bound - k) as usize];
        coeffs[0] = c;
        LaurentSeries {
            denom,
            lo: k,
            coeffs,
            bound,
        }
    }

    /// Builds a series from a dense coefficient run starting at `lo`. Missing
    /// trailing coefficients below `bound` are zero; extras are dropped.
    pub fn from_coeffs(denom: u32, lo: i64, mut coeffs: Vec<BigInt>, bound: i64) -> Self {
        assert!(denom > 0, "lattice denominator must be positive");
        if lo >= bound {
            return Self::zero(denom, bound);
        }
        coeffs.resize((bound - lo) as usize, BigInt::zero());
        let mut s = LaurentSeries {
            denom,
            lo,
            coeffs,
            bound,
        };
        s.normalize();
        s
    }

    /// Builds a series from sparse `(index, coefficient)` terms; repeated
    /// indices accumulate and terms at or beyond `bound` are ignored.
    pub fn from_terms<I>(denom: u32, terms: I, bound: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().filter(|(k, _)| *k < bound).collect();
        let Some(lo) = terms.iter().map(|(k, _)| *k).min() else {
            return Self::zero(denom, bound);
        };
        let mut coeffs = vec![BigInt::zero(); (bound - lo) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_coeffs(denom, lo, coeffs, bound)
    }

    pub fn from_i64s(denom: u32, lo: i64, coeffs: &[i64], bound: i64) -> Self {
        Self::from_coeffs(
            denom,
            lo,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            bound,
        )
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.lo = self.bound;
            }
            Some(0) => {}
            Some(p) => {
                self.coeffs.drain(..p);
                self.lo += p as i64;
            }
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Least exponent index with a nonzero coefficient (`bound` when zero).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Dense coefficients from `lo` up to `bound`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Vanishes everywhere below the bound.
    pub fn is_zero_to_bound(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at index `k`, or `None` when `k` is at or past the bound.
    pub fn coeff(&self, k: i64) -> Option<BigInt> {
        if k >= self.bound {
            None
        } else if k < self.lo {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[(k - self.lo) as usize].clone())
        }
    }

    /// Nonzero terms as `(index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn exponent(&self, k: i64) -> Rational64 {
        Rational64::new(k, self.denom as i64)
    }

    /// Drops everything at or above `bound` (no-op if already tighter).
    pub fn truncate(&self, bound: i64) -> Self {
        if bound >= self.bound {
            return self.clone();
        }
        if bound <= self.lo {
            return Self::zero(self.denom, bound);
        }
        let mut out = self.clone();
        out.coeffs.truncate((bound - self.lo) as usize);
        out.bound = bound;
        out.normalize();
        out
    }

    fn check_denom(&self, other: &Self) -> Result<()> {
        if self.denom != other.denom {
            Err(SeriesError::DenomMismatch(self.denom, other.denom))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        self.check_denom(other)?;
        let bound = self.bound.min(other.bound);
        let lo = self.lo.min(other.lo).min(bound);
        let mut coeffs = vec![BigInt::zero(); (bound - lo) as usize];
        for (k, c) in self.terms() {
            if k < bound {
                coeffs[(k - lo) as usize] += c;
            }
        }
        for (k, c) in other.terms() {
            if k < bound {
                if subtract {
                    coeffs[(k - lo) as usize] -= c;
                } else {
                    coeffs[(k - lo) as usize] += c;
                }
            }
        }
        Ok(Self::from_coeffs(self.denom, lo, coeffs, bound))
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.denom, self.bound);
        }
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= factor;
        }
        out
    }

    /// Multiplication by `q^(k/denom)`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.lo += k;
        out.bound += k;
        out
    }

    /// Cauchy product. The bound is `min(a.bound + b.lo, b.bound + a.lo)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_denom(other)?;
        let bound = (self.bound + other.lo).min(other.bound + self.lo);
        if self.is_zero_to_bound() || other.is_zero_to_bound() {
            return Ok(Self::zero(self.denom, bound));
        }
        let lo = self.lo + other.lo;
        let len = (bound - lo) as usize;
        let coeffs = kernel::mul(&self.coeffs, &other.coeffs, len);
        Ok(Self::from_coeffs(self.denom, lo, coeffs, bound))
    }

    fn leading(&self) -> Result<&BigInt> {
        self.coeffs.first().ok_or(SeriesError::ZeroSeries)
    }

    /// Multiplicative inverse of a series whose lowest coefficient is `±1`.
    pub fn invert(&self) -> Result<Self> {
        let lead = self.leading()?;
        if !lead.abs().is_one() {
            return Err(SeriesError::NonUnitLeading {
                exponent: self.exponent(self.lo),
                coefficient: lead.clone(),
            });
        }
        let lo = -self.lo;
        let len = (self.bound - self.lo) as usize;
        let mut one = vec![BigInt::zero(); len];
        one[0] = BigInt::one();
        let coeffs = kernel::div_exact(&one, &self.coeffs, len)
            .expect("division by a unit never leaves the integers");
        Ok(Self::from_coeffs(self.denom, lo, coeffs, lo + len as i64))
    }

    /// Exact quotient `self / divisor`. Unlike [`invert`](Self::invert) the
    /// divisor may have any nonzero leading coefficient, provided every
    /// quotient coefficient comes out integral.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_denom(divisor)?;
        divisor.leading()?;
        let lo = self.lo - divisor.lo;
        let rel = (self.bound - self.lo).min(divisor.bound - divisor.lo);
        let bound = lo + rel;
        if self.is_zero_to_bound() {
            return Ok(Self::zero(self.denom, bound));
        }
        let len = rel as usize;
        match kernel::div_exact(&self.coeffs, &divisor.coeffs, len) {
            Ok(coeffs) => Ok(Self::from_coeffs(self.denom, lo, coeffs, bound)),
            Err(i) => Err(SeriesError::InexactDivision(self.exponent(lo + i as i64))),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            // Known to the relative precision of the base.
            return Ok(Self::one(self.denom, self.bound - self.lo));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result.expect("n > 0"))
    }

    /// The substitution `q ↦ q^(p/d)`: lattice `1/D` becomes `1/(D·d)`.
    pub fn substitute_rational(&self, p: u32, d: u32) -> Self {
        let mut out = self.substitute_power(p);
        out.denom *= d;
        out
    }

    /// The substitution `q ↦ q^k` for a positive integer `k`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k > 0, "substitution power must be positive");
        let k64 = k as i64;
        if self.is_zero_to_bound() {
            return Self::zero(self.denom, self.bound * k64);
        }
        let lo = self.lo * k64;
        let bound = self.bound * k64;
        let mut coeffs = vec![BigInt::zero(); (bound - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        LaurentSeries {
            denom: self.denom,
            lo,
            coeffs,
            bound,
        }
    }

    /// Embeds into the finer lattice `1/new_denom` (a multiple of the current one).
    pub fn to_denom(&self, new_denom: u32) -> Result<Self> {
        if new_denom % self.denom != 0 {
            return Err(SeriesError::InvalidArgument(format!(
                "cannot embed q^(1/{}) lattice into q^(1/{new_denom})",
                self.denom
            )));
        }
        let f = new_denom / self.denom;
        let mut out = self.substitute_power(f);
        out.denom = new_denom;
        Ok(out)
    }

    /// Restricts to the coarser lattice `1/new_denom`; every nonzero term must
    /// already lie on it.
    pub fn coarsen(&self, new_denom: u32) -> Result<Self> {
        if self.denom % new_denom != 0 {
            return Err(SeriesError::InvalidArgument(format!(
                "q^(1/{new_denom}) is not a sublattice of q^(1/{})",
                self.denom
            )));
        }
        let f = (self.denom / new_denom) as i64;
        if let Some((k, _)) = self.terms().find(|(k, _)| k.rem_euclid(f) != 0) {
            return Err(SeriesError::FractionalExponent(self.exponent(k)));
        }
        // Every fine index below the new bound must already be known.
        let bound = self.bound.div_euclid(f);
        Ok(Self::from_terms(
            new_denom,
            self.terms().map(|(k, c)| (k / f, c.clone())),
            bound,
        ))
    }

    /// Coarsens to the smallest lattice that still holds every nonzero term.
    pub fn reduce_lattice(&self) -> Self {
        let mut g = self.denom as i64;
        for (k, _) in self.terms() {
            g = g.gcd(&k);
            if g == 1 {
                return self.clone();
            }
        }
        // A zero series carries no lattice information; keep it as is.
        if self.is_zero_to_bound() {
            return self.clone();
        }
        self.coarsen(self.denom / g as u32)
            .expect("gcd divides every exponent")
    }

    fn check_integral(&self) -> Result<()> {
        let d = self.denom as i64;
        match self.terms().find(|(k, _)| k.rem_euclid(d) != 0) {
            Some((k, _)) => Err(SeriesError::FractionalExponent(self.exponent(k))),
            None => Ok(()),
        }
    }

    /// The substitution `q ↦ -q`; defined only for series integral in q.
    pub fn negate_q(&self) -> Result<Self> {
        self.check_integral()?;
        let d = self.denom as i64;
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let k = self.lo + i as i64;
            if (k / d).is_odd() {
                *c = -std::mem::take(c);
            }
        }
        Ok(out)
    }

    /// Terms whose integer exponent is `≡ residue (mod modulus)`; exponents
    /// are kept as they are.
    pub fn dissect(&self, modulus: u32, residue: u32) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(SeriesError::InvalidArgument(format!(
                "residue {residue} out of range for modulus {modulus}"
            )));
        }
        self.check_integral()?;
        let d = self.denom as i64;
        let m = modulus as i64;
        Ok(Self::from_terms(
            self.denom,
            self.terms()
                .filter(|(k, _)| (k / d).rem_euclid(m) == residue as i64)
                .map(|(k, c)| (k, c.clone())),
            self.bound,
        ))
    }

    /// Least exponent with a nonzero coefficient.
    pub fn q_order(&self) -> Option<Rational64> {
        (!self.is_zero_to_bound()).then(|| self.exponent(self.lo))
    }

    pub fn is_zero(&self) -> VerifyOutcome {
        match self.coeffs.first() {
            None => VerifyOutcome {
                status: Status::Zero,
                first_nonzero_exponent: None,
                first_nonzero_coefficient: None,
                checked_bound: self.bound,
                denom: self.denom,
            },
            Some(c) => VerifyOutcome {
                status: Status::Nonzero,
                first_nonzero_exponent: Some(self.exponent(self.lo)),
                first_nonzero_coefficient: Some(c.clone()),
                checked_bound: self.bound,
                denom: self.denom,
            },
        }
    }

    /// Small-coefficient view used by tests and diagnostics.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let e = self.exponent(k);
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "q^({e})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", fmt_exp(self.exponent(self.bound)))
    }
}

fn fmt_exp(e: Rational64) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

/// Coefficient loops. Each tries a machine-word path first and falls back to
/// big integers only when the bounds say the words could overflow.
mod kernel {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    fn bits(v: &[BigInt]) -> u64 {
        v.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    fn to_i128(v: &[BigInt]) -> Option<Vec<i128>> {
        v.iter().map(|c| c.to_i128()).collect()
    }

    /// First `len` coefficients of the product of two dense runs.
    pub fn mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
        let terms = a.len().min(b.len()).max(1) as u64;
        let len_bits = 64 - terms.leading_zeros() as u64;
        if bits(a) <= 62 && bits(b) <= 62 && bits(a) + bits(b) + len_bits <= 125 {
            let a: Vec<i128> = a.iter().map(|c| c.to_i128().unwrap()).collect();
            let b: Vec<i128> = b.iter().map(|c| c.to_i128().unwrap()).collect();
            let nz: Vec<(usize, i128)> = b
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(j, c)| (j, *c))
                .collect();
            let mut out = vec![0i128; len];
            for (i, x) in a.iter().enumerate().take(len) {
                if *x == 0 {
                    continue;
                }
                let room = len - i;
                for &(j, y) in &nz {
                    if j >= room {
                        break;
                    }
                    out[i + j] += x * y;
                }
            }
            return out.into_iter().map(BigInt::from).collect();
        }
        let nz: Vec<(usize, &BigInt)> =
            b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            let room = len - i;
            for &(j, y) in &nz {
                if j >= room {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        out
    }

    /// First `len` coefficients of `num / den` (both dense from their leading
    /// term). `Err(i)` reports the first index whose coefficient is not
    /// divisible by the leading coefficient of `den`.
    pub fn div_exact(num: &[BigInt], den: &[BigInt], len: usize) -> Result<Vec<BigInt>, usize> {
        if let (Some(n), Some(d)) = (
            to_i128(&num[..num.len().min(len)]),
            to_i128(&den[..den.len().min(len)]),
        ) {
            if let Some(r) = div_i128(&n, &d, len) {
                return r.map(|v| v.into_iter().map(BigInt::from).collect());
            }
        }
        div_big(num, den, len)
    }

    fn div_i128(num: &[i128], den: &[i128], len: usize) -> Option<Result<Vec<i128>, usize>> {
        let lead = den[0];
        let nz: Vec<(usize, i128)> = den
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| (j, *c))
            .collect();
        let mut out = vec![0i128; len];
        for n in 0..len {
            let mut acc = num.get(n).copied().unwrap_or(0);
            for &(j, d) in &nz {
                if j > n {
                    break;
                }
                acc = acc.checked_sub(d.checked_mul(out[n - j])?)?;
            }
            if acc % lead != 0 {
                return Some(Err(n));
            }
            out[n] = acc / lead;
        }
        Some(Ok(out))
    }

    fn div_big(num: &[BigInt], den: &[BigInt], len: usize) -> Result<Vec<BigInt>, usize> {
        let lead = &den[0];
        let nz: Vec<(usize, &BigInt)> = den
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = num.get(n).cloned().unwrap_or_default();
            for &(j, d) in &nz {
                if j > n {
                    break;
                }
                acc -= d * &out[n - j];
            }
            let (q, r) = num_integer::Integer::div_rem(&acc, lead);
            if !r.is_zero() {
                return Err(n);
            }
            out.push(q);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lo: i64, c: &[i64], bound: i64) -> LaurentSeries {
        LaurentSeries::from_i64s(1, lo, c, bound)
    }

    #[test]
    fn cancellation() {
        let a = s(0, &[1, 1], 10);
        let b = s(0, &[1, -1], 10);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, LaurentSeries::monomial(1, 0, BigInt::from(2), 10));
    }

    #[test]
    fn fifth_root_product() {
        let a = LaurentSeries::monomial(5, 1, BigInt::one(), 50);
        let b = LaurentSeries::monomial(5, 4, BigInt::one(), 50);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.q_order(), Some(Rational64::from_integer(1)));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn mul_bound_propagation() {
        let a = s(2, &[1], 10);
        let b = s(-1, &[1, 1], 20);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.bound(), 9);
        assert_eq!(p.lo(), 1);
    }

    #[test]
    fn denom_mismatch() {
        let a = LaurentSeries::one(1, 5);
        let b = LaurentSeries::one(5, 5);
        assert_eq!(a.add(&b), Err(SeriesError::DenomMismatch(1, 5)));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let inv = s(0, &[1, -1], 12).invert().unwrap();
        assert_eq!(inv.to_i64s().unwrap(), vec![1; 12]);
    }

    #[test]
    fn non_unit_leading_is_rejected() {
        let err = s(0, &[2, 1], 12).invert().unwrap_err();
        assert!(matches!(err, SeriesError::NonUnitLeading { .. }));
        assert_eq!(
            LaurentSeries::zero(1, 4).invert(),
            Err(SeriesError::ZeroSeries)
        );
    }

    #[test]
    fn laurent_inverse_shifts_lo() {
        let inv = s(3, &[-1, 1], 20).invert().unwrap();
        assert_eq!(inv.lo(), -3);
        assert_eq!(inv.bound(), 14);
        assert_eq!(inv.to_i64s().unwrap(), vec![-1; 17]);
    }

    #[test]
    fn exact_division_with_non_unit_divisor() {
        let num = s(0, &[3, 3], 10).mul(&s(0, &[1, 2, 5], 10)).unwrap();
        let q = num.div(&s(0, &[3, 3], 10)).unwrap();
        assert_eq!(q, s(0, &[1, 2, 5], 10));
        let err = s(0, &[1], 10).div(&s(0, &[3, 3], 10)).unwrap_err();
        assert!(matches!(err, SeriesError::InexactDivision(_)));
    }

    #[test]
    fn binomial_square() {
        assert_eq!(s(0, &[1, 1], 8).pow(2).unwrap(), s(0, &[1, 2, 1], 8));
        assert_eq!(s(0, &[1, 1], 8).pow(0).unwrap(), LaurentSeries::one(1, 8));
    }

    #[test]
    fn substitution_scales_bound() {
        let a = s(1, &[1, 2], 5).substitute_power(3);
        assert_eq!(a.lo(), 3);
        assert_eq!(a.bound(), 15);
        assert_eq!(a.coeff(6), Some(BigInt::from(2)));
        assert_eq!(a.coeff(7), Some(BigInt::zero()));
        assert_eq!(a.coeff(15), None);
    }

    #[test]
    fn negate_q_rejects_fractional() {
        let r = LaurentSeries::monomial(5, 1, BigInt::one(), 20);
        assert!(matches!(
            r.negate_q(),
            Err(SeriesError::FractionalExponent(_))
        ));
        let a = LaurentSeries::from_i64s(5, 0, &[1, 0, 0, 0, 0, 3], 20);
        assert_eq!(a.negate_q().unwrap().coeff(5), Some(BigInt::from(-3)));
    }

    #[test]
    fn dissection_classes_partition_terms() {
        let a = s(0, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], 11);
        let mut total = LaurentSeries::zero(1, 11);
        for r in 0..3 {
            total = total.add(&a.dissect(3, r).unwrap()).unwrap();
        }
        assert_eq!(total, a);
        assert_eq!(a.dissect(3, 1).unwrap().coeff(4), Some(BigInt::from(5)));
        assert!(a.dissect(3, 3).is_err());
    }

    #[test]
    fn lattice_round_trip() {
        let a = s(-1, &[1, 0, 4], 6);
        let fine = a.to_denom(5).unwrap();
        assert_eq!(fine.bound(), 30);
        assert_eq!(fine.coarsen(1).unwrap(), a);
        assert_eq!(fine.reduce_lattice(), a);
        let frac = LaurentSeries::monomial(5, 2, BigInt::one(), 30);
        assert!(frac.coarsen(1).is_err());
    }

    #[test]
    fn zero_outcome_reports_bound() {
        let a = s(0, &[1, 1], 10);
        let o = a.sub(&a).unwrap().is_zero();
        assert!(o.is_zero());
        assert_eq!(o.checked_bound, 10);
    }

    #[test]
    fn big_coefficients_fall_back() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let a = LaurentSeries::from_coeffs(1, 0, vec![BigInt::one(), big.clone()], 4);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(1), Some(&big * 2));
        assert_eq!(sq.coeff(2), Some(&big * &big));
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), LaurentSeries::one(1, 4));
    }

    #[test]
    fn display_terms() {
        let a = LaurentSeries::from_i64s(5, 1, &[1, 0, 0, 0, -2], 10);
        assert_eq!(a.to_string(), "q^(1/5) - 2*q + O(q^2)");
    }
}
