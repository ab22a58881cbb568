use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BigFloat, Rational};
use crate::error::{Error, Result};

/// A field element: exact rational or rounded binary float.
///
/// Mixed operations promote the rational operand to the float's precision.
/// Operations on two rationals never round.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Float(BigFloat),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    /// Zero in the same representation as `self`.
    pub fn zero_like(&self) -> Self {
        match self {
            Scalar::Rational(_) => Scalar::zero(),
            Scalar::Float(f) => Scalar::Float(BigFloat::zero(f.precision())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Exact value; floats are converted without rounding.
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Float(f) => f.to_rational(),
        }
    }

    /// Converts to a float at `precision`, rounding once if needed.
    pub fn to_float(&self, precision: u32) -> BigFloat {
        match self {
            Scalar::Rational(r) => BigFloat::from_rational(r, precision),
            Scalar::Float(f) => f.with_precision(precision),
        }
    }

    /// Re-expresses the value in the same backend as `like`.
    pub fn promote_like(&self, like: &Scalar) -> Scalar {
        match like {
            Scalar::Rational(_) => self.clone(),
            Scalar::Float(f) => Scalar::Float(self.to_float(f.precision())),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => r.signum(),
            Scalar::Float(f) => f.signum(),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        match self {
            Scalar::Rational(r) => r.recip().map(Scalar::Rational),
            Scalar::Float(f) => f.recip().map(Scalar::Float),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.checked_div(b).map(Scalar::Rational),
            _ => {
                let p = float_precision(self, rhs);
                self.to_float(p).div(&rhs.to_float(p)).map(Scalar::Float)
            }
        }
    }

    /// log10 |x| in double precision.
    pub fn log10_abs(&self) -> f64 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    BigFloat::from_rational(r, 64).log10_abs()
                }
            }
            Scalar::Float(f) => f.log10_abs(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => BigFloat::from_rational(r, 64).to_f64(),
            Scalar::Float(f) => f.to_f64(),
        }
    }
}

fn float_precision(a: &Scalar, b: &Scalar) -> u32 {
    match (a, b) {
        (Scalar::Float(x), Scalar::Float(y)) => x.precision().max(y.precision()),
        (Scalar::Float(x), _) | (_, Scalar::Float(x)) => x.precision(),
        _ => unreachable!("called only with a float operand"),
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<BigFloat> for Scalar {
    fn from(f: BigFloat) -> Self {
        Scalar::Float(f)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$method(b)),
                    _ => {
                        let p = float_precision(self, rhs);
                        Scalar::Float(self.to_float(p).$method(&rhs.to_float(p)))
                    }
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(f) => Scalar::Float(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Float(x) => {
                let digits = (x.precision() as f64 * std::f64::consts::LOG10_2) as usize;
                f.write_str(&super::to_decimal_rational(&x.to_rational(), digits.max(1)))
            }
        }
    }
}
