//! Exact integer and rational arithmetic: generalized binomials, multinomials,
//! a Pascal-row cache, and reduced probabilities with decimal rendering.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A count of arrangements.
pub type ExactCount = BigUint;

/// A signed intermediate of an alternating sum.
pub type SignedExact = BigInt;

/// Generalized binomial coefficient `C(a, b)`.
///
/// Zero for `b < 0`. Otherwise the falling factorial `a(a-1)...(a-b+1) / b!`,
/// which gives `C(-1, b) = (-1)^b` and `C(a, 0) = 1` for every `a`.
pub fn binomial(a: i64, b: i64) -> SignedExact {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 {
        if b > a {
            return BigInt::zero();
        }
        return BigInt::from(choose(a as u64, b as u64));
    }
    // C(a, b) = (-1)^b C(b - a - 1, b) for a < 0
    let magnitude = choose((b - a - 1) as u64, b as u64);
    let sign = if b % 2 == 0 { Sign::Plus } else { Sign::Minus };
    BigInt::from_biguint(sign, magnitude)
}

/// Ordinary `C(n, k)` for `0 <= k`, zero when `k > n`.
fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Multinomial coefficient `(sum parts)! / prod(part!)`.
pub fn multinomial(parts: &[usize]) -> ExactCount {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &part in parts {
        total += part as u64;
        acc *= choose(total, part as u64);
    }
    acc
}

/// Immutable table of `C(a, b)` for `0 <= b <= a <= max_n`.
///
/// Built once by Pascal additions. Lookups outside the table fall back to
/// direct evaluation, so every generalized value is still available.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for a in 1..=max_n {
            let prev = &rows[a - 1];
            let mut row = Vec::with_capacity(a + 1);
            row.push(BigUint::one());
            for b in 1..a {
                row.push(&prev[b - 1] + &prev[b]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        BinomialTable { rows, zero: BigUint::zero() }
    }

    /// Largest upper index held in the table.
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(a, b)` for nonnegative indices. Panics if `a` exceeds the table.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> &BigUint {
        if b > a {
            &self.zero
        } else {
            &self.rows[a][b]
        }
    }

    /// Generalized `C(a, b)` with the same conventions as [`binomial`].
    pub fn signed(&self, a: i64, b: i64) -> SignedExact {
        if b < 0 {
            return BigInt::zero();
        }
        if a >= 0 {
            if b > a {
                return BigInt::zero();
            }
            return BigInt::from(self.unsigned(a as u64, b as u64));
        }
        let magnitude = self.unsigned((b - a - 1) as u64, b as u64);
        let sign = if b % 2 == 0 { Sign::Plus } else { Sign::Minus };
        BigInt::from_biguint(sign, magnitude)
    }

    /// Sign and magnitude of the generalized `C(a, b)`; `None` when it is zero.
    ///
    /// Avoids cloning for in-table lookups, which dominate the inner loops.
    #[inline]
    pub fn signed_parts(&self, a: i64, b: i64) -> Option<(bool, BinomialRef<'_>)> {
        if b < 0 {
            return None;
        }
        let (negative, top) = if a >= 0 {
            if b > a {
                return None;
            }
            (false, a as u64)
        } else {
            (b % 2 == 1, (b - a - 1) as u64)
        };
        let value = if (top as usize) <= self.max_n() {
            BinomialRef::Cached(&self.rows[top as usize][b as usize])
        } else {
            BinomialRef::Owned(choose(top, b as u64))
        };
        Some((negative, value))
    }

    fn unsigned(&self, a: u64, b: u64) -> BigUint {
        if (a as usize) <= self.max_n() {
            self.get(a as usize, b as usize).clone()
        } else {
            choose(a, b)
        }
    }

    /// Multinomial coefficient using the cached rows where possible.
    pub fn multinomial(&self, parts: &[usize]) -> ExactCount {
        let mut total = 0usize;
        let mut acc = BigUint::one();
        for &part in parts {
            total += part;
            if total <= self.max_n() {
                acc *= self.get(total, part);
            } else {
                acc *= choose(total as u64, part as u64);
            }
        }
        acc
    }
}

/// Borrowed or computed binomial magnitude.
#[derive(Debug)]
pub enum BinomialRef<'a> {
    Cached(&'a BigUint),
    Owned(BigUint),
}

impl core::ops::Deref for BinomialRef<'_> {
    type Target = BigUint;

    fn deref(&self) -> &BigUint {
        match self {
            BinomialRef::Cached(v) => v,
            BinomialRef::Owned(v) => v,
        }
    }
}

/// Exact probability in `[0, 1]`, always stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProbability(BigRational);

impl ExactProbability {
    /// `count / total`. Fails when `total` is zero or `count > total`.
    pub fn new(count: BigUint, total: BigUint) -> Result<Self> {
        if total.is_zero() {
            return Err(Error::Invalid("probability denominator is zero".to_string()));
        }
        if count > total {
            return Err(Error::Invalid(format!("probability {count}/{total} exceeds one")));
        }
        Ok(ExactProbability(BigRational::new(count.into(), total.into())))
    }

    /// Wraps a rational already known to lie in `[0, 1]`.
    pub fn from_ratio(ratio: BigRational) -> Result<Self> {
        if ratio.is_negative() || ratio > BigRational::one() {
            return Err(Error::Invalid(format!("{ratio} is not a probability")));
        }
        // `BigRational::new` reduces, but a raw ratio may not have been built that way.
        Ok(ExactProbability(BigRational::new(ratio.numer().clone(), ratio.denom().clone())))
    }

    pub fn zero() -> Self {
        ExactProbability(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactProbability(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// `1 - p`.
    pub fn complement(&self) -> Self {
        ExactProbability(BigRational::one() - &self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Nearest `f64`; lossy, for diagnostics and statistical checks only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point rendering with `places` decimals, rounding half to even.
    pub fn to_fixed(&self, places: usize) -> String {
        format_fixed(&self.0, places)
    }

    /// Rendering with `digits` significant digits, rounding half to even.
    pub fn to_significant(&self, digits: usize) -> String {
        format_significant(&self.0, digits)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Exact `num/den` text of a rational.
pub fn format_exact(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Fixed-point decimal text of `value` with `places` decimals, half-even.
pub fn format_fixed(value: &BigRational, places: usize) -> String {
    let negative = value.is_negative();
    let numer = value.numer().magnitude();
    let denom = value.denom().magnitude();
    let scaled = numer * BigUint::from(10u32).pow(places as u32);
    let (mut quotient, remainder) = scaled.div_rem(denom);
    let twice = &remainder << 1usize;
    if twice > *denom || (twice == *denom && quotient.is_odd()) {
        quotient += 1u32;
    }
    let mut digits = quotient.to_str_radix(10);
    if digits.len() <= places {
        let pad = places + 1 - digits.len();
        digits.insert_str(0, &"0".repeat(pad));
    }
    let split = digits.len() - places;
    let mut out = String::with_capacity(digits.len() + 2);
    if negative && quotient_nonzero(&digits) {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if places > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

fn quotient_nonzero(digits: &str) -> bool {
    digits.bytes().any(|b| b != b'0')
}

/// Decimal text of `value` rounded to `digits` significant digits, half-even.
///
/// Values of magnitude at least `10^digits` are printed as rounded integers.
pub fn format_significant(value: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return format_fixed(value, digits - 1);
    }
    let numer = value.numer().magnitude();
    let denom = value.denom().magnitude();
    // exponent e with 10^e <= |value| < 10^(e+1)
    let mut e = numer.to_str_radix(10).len() as i64 - denom.to_str_radix(10).len() as i64;
    if !at_least_power(numer, denom, e) {
        e -= 1;
    }
    let places = (digits as i64 - 1 - e).max(0) as usize;
    format_fixed(value, places)
}

fn at_least_power(numer: &BigUint, denom: &BigUint, e: i64) -> bool {
    let ten = BigUint::from(10u32);
    if e >= 0 {
        *numer >= denom * ten.pow(e as u32)
    } else {
        numer * ten.pow((-e) as u32) >= *denom
    }
}
