//! Scalar tower shared by every scheme: exact rationals, rounded binary
//! floats, the tagged [`Scalar`] over both, and a few combinatorial helpers.

mod bigfloat;
mod rational;
mod scalar;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use bigfloat::{ln2, BigFloat, MIN_PRECISION};
pub use rational::{rat, Rational};
pub use scalar::Scalar;

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Central binomial coefficient C(2n, n).
pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

/// Decimal rendering with `digits` significant digits, rounded half to even.
///
/// Values with magnitude in `[1e-4, 1e8)` are written positionally, anything
/// else as `d.ddd...e<exp>`. Zero renders as `0.000...e0`.
pub fn to_decimal(x: &Scalar, digits: usize) -> String {
    to_decimal_rational(&x.to_rational(), digits)
}

pub fn to_decimal_rational(x: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return scientific("0".repeat(digits), 0, false);
    }
    let negative = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // Decimal exponent: 10^exp <= |x| < 10^(exp+1).
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    if cmp_scaled(&num, &den, exp) == Ordering::Less {
        exp -= 1;
    }

    let shift = digits as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let (mut q, r) = n.div_rem(&d);
    let twice = r * 2u32;
    let round_up = match twice.cmp(&d) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => q.is_odd(),
    };
    if round_up {
        q += 1u32;
    }
    let mut mantissa = q.to_string();
    if mantissa.len() > digits {
        mantissa.truncate(digits);
        exp += 1;
    }

    if (-4..8).contains(&exp) {
        positional(mantissa, exp, negative)
    } else {
        scientific(mantissa, exp, negative)
    }
}

/// Compares `num/den` with `10^exp`.
fn cmp_scaled(num: &BigInt, den: &BigInt, exp: i64) -> Ordering {
    if exp >= 0 {
        num.cmp(&(den * pow10(exp as u32)))
    } else {
        (num * pow10((-exp) as u32)).cmp(den)
    }
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

fn scientific(mantissa: String, exp: i64, negative: bool) -> String {
    let sign = if negative { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

fn positional(mantissa: String, exp: i64, negative: bool) -> String {
    let sign = if negative { "-" } else { "" };
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{mantissa}");
    }
    let int_len = exp as usize + 1;
    if mantissa.len() <= int_len {
        let pad = "0".repeat(int_len - mantissa.len());
        format!("{sign}{mantissa}{pad}")
    } else {
        let (head, tail) = mantissa.split_at(int_len);
        format!("{sign}{head}.{tail}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_rule_exhaustive() {
        for n in 1..=64u64 {
            for k in 1..=n + 1 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&Scalar::from(rat(1, 3)), 5), "0.33333");
        assert_eq!(to_decimal(&Scalar::zero(), 5), "0.0000e0");
        assert_eq!(to_decimal(&Scalar::from(rat(2, 3)), 3), "0.667");
        assert_eq!(to_decimal(&Scalar::from(rat(-115, 96)), 6), "-1.19792");
        assert_eq!(to_decimal(&Scalar::from(rat(123, 1)), 3), "123");
        assert_eq!(to_decimal(&Scalar::from(rat(123, 1)), 5), "123.00");
        assert_eq!(to_decimal(&Scalar::from(rat(1, 10000)), 2), "0.00010");
        assert_eq!(to_decimal(&Scalar::from(rat(1, 100000)), 2), "1.0e-5");
        assert_eq!(to_decimal(&Scalar::from(rat(100_000_000, 1)), 3), "1.00e8");
        // ties go to even
        assert_eq!(to_decimal(&Scalar::from(rat(25, 1000)), 1), "0.02");
        assert_eq!(to_decimal(&Scalar::from(rat(35, 1000)), 1), "0.04");
        // carry bumps the exponent
        assert_eq!(to_decimal(&Scalar::from(rat(9999, 1000)), 2), "10");
        assert_eq!(to_decimal(&Scalar::from(rat(7, 1)), 1), "7");
    }

    #[test]
    fn float_decimal_rendering_uses_exact_value() {
        let x = BigFloat::from_rational(&rat(1, 3), 128);
        assert_eq!(to_decimal(&Scalar::from(x), 10), "0.3333333333");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn float_conversion_is_within_relative_bound(a in small_rational(), p in 64u32..300) {
            let f = BigFloat::from_rational(&a, p);
            let err = (f.to_rational() - &a).abs();
            let bound = a.abs() * Rational::new(2, BigInt::one() << p as usize).unwrap();
            prop_assert!(err <= bound);
        }

        #[test]
        fn float_ops_are_correctly_rounded(a in small_rational(), b in small_rational()) {
            let p = 64;
            let fa = BigFloat::from_rational(&a, p);
            let fb = BigFloat::from_rational(&b, p);
            let exact = fa.to_rational() * fb.to_rational();
            prop_assert_eq!(fa.mul(&fb), BigFloat::from_rational(&exact, p));
            let exact = fa.to_rational() + fb.to_rational();
            prop_assert_eq!(fa.add(&fb), BigFloat::from_rational(&exact, p));
            if !b.is_zero() {
                let exact = fa.to_rational().checked_div(&fb.to_rational()).unwrap();
                prop_assert_eq!(fa.div(&fb).unwrap(), BigFloat::from_rational(&exact, p));
            }
        }

        #[test]
        fn mixed_arithmetic_promotes(a in small_rational(), b in small_rational()) {
            let fb = Scalar::from(BigFloat::from_rational(&b, 100));
            let sum = &Scalar::from(a.clone()) + &fb;
            prop_assert!(!sum.is_exact());
            let exact = &Scalar::from(a) + &Scalar::from(b);
            prop_assert!(exact.is_exact());
        }
    }
}
