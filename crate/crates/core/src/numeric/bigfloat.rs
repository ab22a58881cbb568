//! Binary floating point with an arbitrary-precision mantissa.
//!
//! A value is `mantissa * 2^exponent`. Nonzero values keep exactly
//! `precision` significant bits, and every operation rounds its exact result
//! to nearest, ties to even.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

impl BigFloat {
    /// Zero at the given precision (raised to at least [`MIN_PRECISION`]).
    pub fn zero(precision: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision: precision.max(MIN_PRECISION),
        }
    }

    pub fn from_int(n: impl Into<BigInt>, precision: u32) -> Self {
        Self::round(n.into(), 0, precision)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if r.is_zero() {
            return Self::zero(precision);
        }
        Self::round_quotient(r.numer(), r.denom(), 0, precision)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            let den = BigInt::one() << (-self.exponent) as usize;
            Rational::new(self.mantissa.clone(), den).expect("power of two")
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Rounds to a different precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::round(self.mantissa.clone(), self.exponent, precision)
    }

    /// Round `m * 2^e` to `precision` bits, half to even.
    fn round(m: BigInt, e: i64, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if m.is_zero() {
            return Self::zero(precision);
        }
        let bits = bit_len(&m);
        let p = precision as u64;
        if bits <= p {
            let shift = p - bits;
            return BigFloat {
                mantissa: m << shift as usize,
                exponent: e - shift as i64,
                precision,
            };
        }
        let shift = bits - p;
        let negative = m.is_negative();
        let mag = m.magnitude();
        let mut q = mag >> shift as usize;
        let rem = mag - (&q << shift as usize);
        let half = num_bigint::BigUint::one() << (shift - 1) as usize;
        let round_up = match rem.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => q.is_odd(),
        };
        let mut exponent = e + shift as i64;
        if round_up {
            q += 1u32;
            if q.bits() > p {
                q >>= 1;
                exponent += 1;
            }
        }
        let mantissa = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, q);
        BigFloat {
            mantissa,
            exponent,
            precision,
        }
    }

    /// Round `num / den * 2^e` with a sticky bit carrying the remainder.
    fn round_quotient(num: &BigInt, den: &BigInt, e: i64, precision: u32) -> Self {
        let target = precision.max(MIN_PRECISION) as i64 + 2;
        let shift = (target + bit_len(den) as i64 - bit_len(num) as i64).max(0);
        let scaled = num.abs() << shift as usize;
        let (q, r) = scaled.div_rem(&den.abs());
        let mut m = q << 1usize;
        if !r.is_zero() {
            m += 1;
        }
        if num.is_negative() != den.is_negative() {
            m = -m;
        }
        Self::round(m, e - shift - 1, precision)
    }

    /// Upper bound on log2|x|: |x| < 2^top.
    fn top(&self) -> i64 {
        self.exponent + bit_len(&self.mantissa) as i64
    }

    fn add_with(&self, other: &BigFloat, precision: u32) -> Self {
        if other.is_zero() {
            return self.with_precision(precision);
        }
        if self.is_zero() {
            return other.with_precision(precision);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        // When the smaller operand sits entirely below three guard bits of
        // the result, only its sign matters for rounding.
        let width = bit_len(&big.mantissa).max(precision as u64) + 3;
        let s = width - bit_len(&big.mantissa);
        let low = big.exponent - s as i64;
        if small.top() <= low {
            let m = (&big.mantissa << (s as usize + 1)) + BigInt::from(small.signum());
            return Self::round(m, low - 1, precision);
        }
        let e = big.exponent.min(small.exponent);
        let a = &big.mantissa << (big.exponent - e) as usize;
        let b = &small.mantissa << (small.exponent - e) as usize;
        Self::round(a + b, e, precision)
    }

    fn result_precision(&self, other: &BigFloat) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &BigFloat) -> Self {
        self.add_with(other, self.result_precision(other))
    }

    pub fn sub(&self, other: &BigFloat) -> Self {
        self.add_with(&other.neg(), self.result_precision(other))
    }

    pub fn mul(&self, other: &BigFloat) -> Self {
        Self::round(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            self.result_precision(other),
        )
    }

    pub fn div(&self, other: &BigFloat) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let precision = self.result_precision(other);
        if self.is_zero() {
            return Ok(Self::zero(precision));
        }
        Ok(Self::round_quotient(
            &self.mantissa,
            &other.mantissa,
            self.exponent - other.exponent,
            precision,
        ))
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
            precision: self.precision,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
            precision: self.precision,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
            precision: self.precision,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self.mul(&BigFloat::from_rational(r, self.precision))
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        self.add(&BigFloat::from_rational(r, self.precision))
    }

    pub fn recip(&self) -> Result<Self> {
        BigFloat::from_int(1, self.precision).div(self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.powi(-exp)?.recip();
        }
        let mut result = BigFloat::from_int(1, self.precision);
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Correctly rounded square root.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let want = 2 * (self.precision as i64 + 2);
        let mut shift = (want - bit_len(&self.mantissa) as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as usize;
        let e = self.exponent - shift;
        let r = m.sqrt();
        let mut out = &r << 1usize;
        if &r * &r != m {
            out += 1;
        }
        Ok(Self::round(out, e / 2 - 1, self.precision))
    }

    /// Natural logarithm.
    pub fn ln(&self) -> Result<Self> {
        if self.signum() <= 0 {
            return Err(Error::Domain("logarithm of a non-positive number".into()));
        }
        let precision = self.precision;
        let work = precision + 32;
        // x = y * 2^t with y in [1/2, 1)
        let bits = bit_len(&self.mantissa) as i64;
        let t = self.exponent + bits;
        let y = BigFloat::round(self.mantissa.clone(), -bits, work);
        let one = BigFloat::from_int(1, work);
        let ratio = y.sub(&one).div(&y.add(&one))?;
        let mut result = atanh_series(&ratio, work).mul_pow2(1);
        if t != 0 {
            result = result.add(&ln2(work).mul(&BigFloat::from_int(t, work)));
        }
        Ok(result.with_precision(precision))
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Nearest `f64`, saturating to infinity for huge exponents.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mantissa) as i64;
        let keep = bits.min(60);
        let top = (&self.mantissa >> (bits - keep) as usize).to_f64().unwrap_or(0.0);
        let e = self.exponent + bits - keep;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// log10 |x|, or negative infinity for zero. Accurate to about 1e-15.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = bit_len(&self.mantissa) as i64;
        let keep = bits.min(60);
        let top = (self.mantissa.abs() >> (bits - keep) as usize)
            .to_f64()
            .unwrap_or(1.0);
        top.log10() + ((self.exponent + bits - keep) as f64) * std::f64::consts::LOG10_2
    }
}

/// Σ t^(2i+1)/(2i+1) for |t| well below 1.
fn atanh_series(t: &BigFloat, precision: u32) -> BigFloat {
    let t2 = t.mul(t);
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut i: i64 = 1;
    loop {
        power = power.mul(&t2);
        let term = power
            .div(&BigFloat::from_int(2 * i + 1, precision))
            .expect("odd denominator");
        if term.is_zero() || term.top() < sum.top() - precision as i64 - 4 {
            break;
        }
        sum = sum.add(&term);
        i += 1;
    }
    sum
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(precision: u32) -> BigFloat {
    let work = precision + 16;
    let third = BigFloat::from_rational(&Rational::new(1, 3).expect("nonzero"), work);
    atanh_series(&third, work).mul_pow2(1).with_precision(precision)
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // Rounding never changes the sign of a difference.
        Some(self.sub(other).signum().cmp(&0))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigFloat({}, p={})",
            super::to_decimal_rational(&self.to_rational(), 20),
            self.precision
        )
    }
}
