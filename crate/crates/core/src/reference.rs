//! High-precision values of every target constant, computed by classical
//! methods that share no code with the product schemes: Euler-Maclaurin
//! summation for zeta and Hurwitz zeta, the asymptotic expansion with upward
//! recurrence for digamma, and Machin's formula for pi.
//!
//! All results carry [`GUARD_DIGITS`] extra decimal digits of working
//! precision; absolute errors are below `10^-digits`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{BigFloat, Rational};
use crate::schemes::ConstantDescriptor;

pub const GUARD_DIGITS: u32 = 10;

/// A reference value and the number of decimal digits it is claimed to.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub value: BigFloat,
    pub digits: u32,
}

/// Binary precision carrying `digits` plus the guard digits.
pub fn working_precision(digits: u32) -> u32 {
    let decimal = (digits + GUARD_DIGITS) as f64;
    (decimal * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn tolerance_log10(digits: u32) -> f64 {
    -((digits + GUARD_DIGITS) as f64)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// Tangent numbers `T_1..T_n` (1, 2, 16, 272, ...) by the in-place
/// recurrence of Brent and Harvey.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// `B_2, B_4, ..., B_{2n}`.
pub fn bernoulli_even(n: usize) -> Vec<Rational> {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap_or_else(|p| p.into_inner());
    if guard.len() < n {
        let want = n.max(2 * guard.len());
        let t = tangent_numbers(want);
        *guard = (1..=want)
            .map(|i| {
                let four = BigInt::one() << (2 * i);
                let num = BigInt::from(2 * i) * &t[i];
                let den = &four * (&four - BigInt::one());
                let b = Rational::new(num, den).expect("positive");
                if i % 2 == 0 {
                    -b
                } else {
                    b
                }
            })
            .collect();
    }
    guard[..n].to_vec()
}

/// Grows a Bernoulli table on demand.
struct Bernoulli {
    table: Vec<Rational>,
}

impl Bernoulli {
    fn new() -> Self {
        Bernoulli {
            table: bernoulli_even(32),
        }
    }

    /// `B_{2j}` for `j >= 1`.
    fn get(&mut self, j: usize) -> &Rational {
        if j > self.table.len() {
            self.table = bernoulli_even(2 * j);
        }
        &self.table[j - 1]
    }
}

/// Sum of `1/(x(x^2)^i (2i+1))`, i.e. `atan(1/x)`, at the given precision.
fn atan_inv(x: i64, precision: u32) -> BigFloat {
    let x2 = BigFloat::from_int(x * x, precision);
    let mut power = BigFloat::from_int(x, precision).recip().expect("nonzero");
    let mut sum = power.clone();
    let floor = -(precision as f64) * std::f64::consts::LOG10_2 - 5.0;
    let mut i: i64 = 1;
    loop {
        power = power.div(&x2).expect("nonzero");
        let term = power.mul_rational(&r(1, 2 * i + 1));
        if term.log10_abs() < floor {
            break;
        }
        sum = if i % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        i += 1;
    }
    sum
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(digits: u32) -> BigFloat {
    let p = working_precision(digits) + 16;
    let v = atan_inv(5, p)
        .mul_pow2(4)
        .sub(&atan_inv(239, p).mul_pow2(2));
    v.with_precision(working_precision(digits))
}

/// Default Euler-Maclaurin cutoff for a shift `z`.
pub fn default_cutoff(z: &Rational, digits: u32) -> u64 {
    let target = 0.5 * (digits + GUARD_DIGITS) as f64 + 10.0;
    let need = (target - z.to_f64()).ceil();
    need.max(1.0) as u64
}

fn check_hurwitz_pole(z: &Rational) -> Result<()> {
    if z.is_integer() && z.is_negative() {
        return Err(Error::Pole(format!("hurwitz zeta has a pole at z = {z}")));
    }
    Ok(())
}

/// `sum_{n>=1} (n+z)^-s` with the Euler-Maclaurin cutoff at `n = cutoff`.
///
/// Terms below the cutoff are summed directly; the tail is the integral,
/// half the first tail term, and Bernoulli corrections until one drops under
/// the tolerance. Fails if the corrections start growing first, which means
/// the cutoff is too small for the requested digits.
pub fn hurwitz_with_cutoff(s: u32, z: &Rational, digits: u32, cutoff: u64) -> Result<BigFloat> {
    if s < 2 {
        return Err(Error::Domain(format!("hurwitz zeta needs s >= 2, got {s}")));
    }
    check_hurwitz_pole(z)?;
    let p = working_precision(digits);
    let zf = BigFloat::from_rational(z, p);
    let cutoff = cutoff.max(1);
    let x = zf.add(&BigFloat::from_int(cutoff, p));
    if x.signum() <= 0 || x.to_f64() < 1.0 {
        return Err(Error::Domain(format!("cutoff {cutoff} too small for z = {z}")));
    }
    let s_i = s as i64;

    let mut sum = BigFloat::zero(p);
    for n in 1..cutoff {
        let base = zf.add(&BigFloat::from_int(n, p));
        sum = sum.add(&base.powi(-s_i)?);
    }

    let x_inv = x.recip()?;
    let x_pow_s = x_inv.powi(s_i)?; // x^-s
    let mut tail = x_pow_s.mul(&x).mul_rational(&r(1, s_i - 1));
    tail = tail.add(&x_pow_s.mul_pow2(-1));

    let floor = tolerance_log10(digits);
    let x_inv2 = x_inv.mul(&x_inv);
    let mut power = x_pow_s.mul(&x_inv); // x^(-s-2j+1) at j = 1
    let mut poch = Rational::from_integer(s); // (s)_{2j-1}
    let mut fact = Rational::from_integer(2); // (2j)!
    let mut bern = Bernoulli::new();
    let mut last = f64::INFINITY;
    let mut j: usize = 1;
    loop {
        let c = bern.get(j) * &poch * fact.recip()?;
        let term = power.mul_rational(&c);
        let size = term.log10_abs();
        if size < floor {
            break;
        }
        if j > 2 && size > last {
            return Err(Error::Domain(format!(
                "Euler-Maclaurin corrections diverge at cutoff {cutoff}"
            )));
        }
        last = size;
        tail = tail.add(&term);
        let jj = 2 * j as i64;
        poch *= Rational::from_integer((s_i + jj - 1) * (s_i + jj));
        fact *= Rational::from_integer((jj + 1) * (jj + 2));
        power = power.mul(&x_inv2);
        j += 1;
    }
    Ok(sum.add(&tail))
}

pub fn hurwitz_ref(s: u32, z: &Rational, digits: u32) -> Result<BigFloat> {
    hurwitz_with_cutoff(s, z, digits, default_cutoff(z, digits))
}

pub fn zeta_ref(s: u32, digits: u32) -> Result<BigFloat> {
    hurwitz_ref(s, &Rational::zero(), digits)
}

/// `(1 - 2^(1-s)) zeta(s)`.
pub fn eta_ref(s: u32, digits: u32) -> Result<BigFloat> {
    let z = zeta_ref(s, digits)?;
    let factor = Rational::one() - Rational::new(1, BigInt::one() << (s as usize - 1))?;
    Ok(z.mul_rational(&factor))
}

/// Shift depth used by [`digamma`] when none is given.
pub fn default_shift(x: f64, digits: u32) -> u64 {
    let target = 0.5 * (digits + GUARD_DIGITS) as f64 + 10.0;
    (target - x).ceil().max(0.0) as u64
}

/// `psi(x)` via `psi(x) = psi(x + m) - sum_{i<m} 1/(x+i)` and the asymptotic
/// series `ln y - 1/(2y) - sum B_2j/(2j y^2j)` at `y = x + m`.
pub fn digamma(x: &BigFloat, digits: u32, shift: Option<u64>) -> Result<BigFloat> {
    let xr = x.to_rational();
    if xr.is_integer() && !xr.numer().is_positive() {
        return Err(Error::Pole(format!("digamma has a pole at {xr}")));
    }
    let p = working_precision(digits);
    let x = x.with_precision(p);
    let m = shift.unwrap_or_else(|| default_shift(x.to_f64(), digits));

    let mut recur = BigFloat::zero(p);
    for i in 0..m {
        let t = x.add(&BigFloat::from_int(i, p));
        recur = recur.add(&t.recip()?);
    }
    let y = x.add(&BigFloat::from_int(m, p));
    if y.signum() <= 0 {
        return Err(Error::Domain(format!("shift {m} leaves a negative argument")));
    }
    let y_inv = y.recip()?;
    let y_inv2 = y_inv.mul(&y_inv);
    let mut psi = y.ln()?.sub(&y_inv.mul_pow2(-1));
    let floor = tolerance_log10(digits);
    let mut power = y_inv2.clone();
    let mut bern = Bernoulli::new();
    let mut last = f64::INFINITY;
    let mut j = 1usize;
    loop {
        let c = bern.get(j) * &r(1, 2 * j as i64);
        let term = power.mul_rational(&c);
        let size = term.log10_abs();
        if size < floor {
            break;
        }
        if j > 2 && size > last {
            return Err(Error::Domain(format!(
                "asymptotic series diverges at shift {m}; use a deeper shift"
            )));
        }
        last = size;
        psi = psi.sub(&term);
        power = power.mul(&y_inv2);
        j += 1;
    }
    Ok(psi.sub(&recur))
}

pub fn digamma_ref(x: &Rational, digits: u32) -> Result<BigFloat> {
    digamma(&BigFloat::from_rational(x, working_precision(digits)), digits, None)
}

/// Euler's constant as `-psi(1)`.
pub fn euler_gamma(digits: u32) -> BigFloat {
    digamma_ref(&Rational::one(), digits)
        .expect("psi(1) is regular")
        .neg()
}

fn tauraso_pole(a: &Rational, b: &Rational) -> Option<Rational> {
    let d2 = a * a + r(4, 1) * b * b;
    let root = d2.sqrt_exact()?;
    let n = (a + &root) * r(1, 2);
    (n.is_integer() && n.numer().is_positive()).then_some(n)
}

/// `(2/D)(psi(1 - a/2 + D/2) - psi(1 - a/2 - D/2))` with `D = sqrt(a^2 + 4b^2)`;
/// `2 zeta(2)` when `a = b = 0`.
pub fn tauraso_closed_form(a: &Rational, b: &Rational, digits: u32) -> Result<BigFloat> {
    if a.is_zero() && b.is_zero() {
        return Ok(zeta_ref(2, digits)?.mul_pow2(1));
    }
    if let Some(n) = tauraso_pole(a, b) {
        return Err(Error::Pole(format!("n^2 - a n - b^2 vanishes at n = {n}")));
    }
    let d2 = a * a + r(4, 1) * b * b;
    // Small D cancels digits in the psi difference.
    let lost = (-d2.to_f64().log10() / 2.0).max(0.0).ceil() as u32;
    let inner = digits + lost + 5;
    let p = working_precision(inner);
    let delta = BigFloat::from_rational(&d2, p).sqrt()?;
    let base = BigFloat::from_rational(&(Rational::one() - a * &r(1, 2)), p);
    let half = delta.mul_pow2(-1);
    let hi = digamma(&base.add(&half), inner, None)?;
    let lo = digamma(&base.sub(&half), inner, None)?;
    let v = hi.sub(&lo).mul_pow2(1).div(&delta)?;
    Ok(v.with_precision(working_precision(digits)))
}

fn log10_rational(x: &Rational) -> f64 {
    BigFloat::from_rational(x, 64).log10_abs()
}

/// `sum_{j>=0} c_j zeta(s0 + step*j | m)`, the tail past `m` of a series
/// whose summand expands as `sum_j c_j n^-(s0 + step*j)`.
fn expanded_tail(
    mut coeff: impl FnMut(usize) -> Rational,
    s0: u32,
    step: u32,
    m: u64,
    digits: u32,
) -> Result<BigFloat> {
    let p = working_precision(digits);
    let mut sum = BigFloat::zero(p);
    let floor = tolerance_log10(digits) - 2.0;
    let shift = Rational::from_integer(m);
    let log_m = ((m + 1) as f64).log10();
    for j in 0.. {
        let c = coeff(j);
        let s = s0 + step * j as u32;
        // zeta(s | m) <= (m+1)^-s (1 + (m+1)/(s-1))
        let bound = log10_rational(&c) - s as f64 * log_m + ((m + 1) as f64 / (s - 1) as f64 + 1.0).log10();
        if j > 0 && bound < floor {
            break;
        }
        if c.is_zero() {
            continue;
        }
        let inner = digits + log10_rational(&c).max(0.0).ceil() as u32;
        let h = hurwitz_ref(s, &shift, inner)?;
        sum = sum.add(&h.with_precision(p).mul_rational(&c));
    }
    Ok(sum)
}

/// `sum_{n>=1} 2/(n^2 - a n - b^2)` by direct summation plus an expanded tail.
pub fn tauraso_series_ref(a: &Rational, b: &Rational, digits: u32) -> Result<BigFloat> {
    if let Some(n) = tauraso_pole(a, b) {
        return Err(Error::Pole(format!("n^2 - a n - b^2 vanishes at n = {n}")));
    }
    let b2 = b * b;
    let rho = (a.to_f64().abs() + (a.to_f64().powi(2) + 4.0 * b2.to_f64()).sqrt()) / 2.0;
    let m = (10.0 * rho).ceil().max(20.0) as u64;
    let p = working_precision(digits);
    let mut direct = Rational::zero();
    for n in 1..=m as i64 {
        let nn = Rational::from_integer(n);
        direct += Rational::from_integer(2).checked_div(&(&nn * &nn - a * &nn - &b2))?;
    }
    // 2/(n^2 (1 - a/n - b^2/n^2)) = 2 sum_j c_j n^-(2+j)
    let mut c: Vec<Rational> = Vec::new();
    let tail = expanded_tail(
        |j| {
            let v = match j {
                0 => Rational::one(),
                1 => a.clone(),
                _ => a * &c[j - 1] + &b2 * &c[j - 2],
            };
            c.push(v.clone());
            v
        },
        2,
        1,
        m,
        digits,
    )?;
    Ok(BigFloat::from_rational(&direct, p).add(&tail.mul_pow2(1)))
}

/// `sum_{n>=1} 4n/(n^4 - a^2 n^2 - b^4)`.
pub fn tauraso_quartic_ref(a: &Rational, b: &Rational, digits: u32) -> Result<BigFloat> {
    let a2 = a * a;
    let b4 = &(b * b) * &(b * b);
    let rho = (a2.to_f64() + (a2.to_f64().powi(2) + 4.0 * b4.to_f64()).sqrt()) / 2.0;
    let m = (10.0 * rho).sqrt().ceil().max(20.0) as u64;
    let p = working_precision(digits);
    let mut direct = Rational::zero();
    for n in 1..=m as i64 {
        let n2 = Rational::from_integer(n * n);
        let den = &n2 * &n2 - &a2 * &n2 - &b4;
        if den.is_zero() {
            return Err(Error::Pole(format!("n^4 - a^2 n^2 - b^4 vanishes at n = {n}")));
        }
        direct += Rational::from_integer(4 * n).checked_div(&den)?;
    }
    let mut c: Vec<Rational> = Vec::new();
    let tail = expanded_tail(
        |j| {
            let v = match j {
                0 => Rational::one(),
                1 => a2.clone(),
                _ => &a2 * &c[j - 1] + &b4 * &c[j - 2],
            };
            c.push(v.clone());
            v
        },
        3,
        2,
        m,
        digits,
    )?;
    Ok(BigFloat::from_rational(&direct, p).add(&tail.mul_pow2(2)))
}

/// `H_n^(3)` summed directly.
pub fn harmonic_cubic_ref(n: u64) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=n {
        let c = BigInt::from(i).pow(3);
        acc += Rational::new(1, c).expect("positive");
    }
    acc
}

/// The exact value of a descriptor when it is rational.
pub fn exact_value(desc: &ConstantDescriptor) -> Option<Rational> {
    match desc {
        ConstantDescriptor::HarmonicCubic(n) => Some(harmonic_cubic_ref(*n)),
        _ => None,
    }
}

/// Reference value of any descriptor to `digits` decimal digits.
pub fn evaluate(desc: &ConstantDescriptor, digits: u32) -> Result<Oracle> {
    let p = working_precision(digits);
    let value = match desc {
        ConstantDescriptor::Zeta(s) => zeta_ref(*s, digits)?,
        ConstantDescriptor::Eta(s) => eta_ref(*s, digits)?,
        ConstantDescriptor::HurwitzZeta { s, z } => hurwitz_ref(*s, z, digits)?,
        ConstantDescriptor::TaurasoSum { a, b } => tauraso_closed_form(a, b, digits)?,
        ConstantDescriptor::TaurasoQuarticSum { a, b } => tauraso_quartic_ref(a, b, digits)?,
        ConstantDescriptor::HarmonicCubic(n) => BigFloat::from_rational(&harmonic_cubic_ref(*n), p),
        ConstantDescriptor::ScaledZeta { s, factor } => {
            let extra = log10_rational(factor).max(0.0).ceil() as u32;
            zeta_ref(*s, digits + extra)?
                .mul_rational(factor)
                .with_precision(p)
        }
    };
    Ok(Oracle { value, digits })
}

/// Number of leading decimal digits on which `approx` agrees with `exact`,
/// capped at `cap`.
pub fn matched_digits(approx: &BigFloat, exact: &BigFloat, cap: f64) -> f64 {
    let p = approx.precision().max(exact.precision());
    let diff = approx.with_precision(p).sub(&exact.with_precision(p));
    if diff.is_zero() {
        return cap;
    }
    let scale = if exact.is_zero() { 0.0 } else { exact.log10_abs() };
    (scale - diff.log10_abs()).clamp(0.0, cap)
}

/// `true` when `|a - b| < 10^-digits` in absolute terms.
pub fn agrees_to(a: &BigFloat, b: &BigFloat, digits: u32) -> bool {
    let d = a.sub(b);
    d.is_zero() || d.log10_abs() < -(digits as f64)
}

/// Decimal rendering of a float through its exact rational value.
pub fn decimal(x: &BigFloat, digits: usize) -> String {
    crate::numeric::to_decimal_rational(&x.to_rational(), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn close(x: &BigFloat, text: &str, digits: u32) {
        let v: f64 = text.parse().unwrap();
        assert!((x.to_f64() - v).abs() < 10f64.powi(-(digits as i32)), "{} vs {text}", decimal(x, 20));
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_even(6);
        assert_eq!(b, vec![rat(1, 6), rat(-1, 30), rat(1, 42), rat(-1, 30), rat(5, 66), rat(-691, 2730)]);
        assert_eq!(bernoulli_even(40).len(), 40);
        assert_eq!(bernoulli_even(3), b[..3].to_vec());
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(decimal(&zeta_ref(2, 10).unwrap(), 11), "1.6449340668");
        assert_eq!(decimal(&zeta_ref(3, 15).unwrap(), 15), "1.20205690315959");
        assert_eq!(decimal(&zeta_ref(4, 10).unwrap(), 11), "1.0823232337");
        assert_eq!(decimal(&zeta_ref(2, 10).unwrap(), 10), "1.644934067");
    }

    #[test]
    fn zeta_against_pi() {
        let d = 80;
        let pi = pi(d);
        let pi2 = pi.mul(&pi);
        assert!(agrees_to(&zeta_ref(2, d).unwrap(), &pi2.mul_rational(&rat(1, 6)), d));
        let pi4 = pi2.mul(&pi2);
        assert!(agrees_to(&zeta_ref(4, d).unwrap(), &pi4.mul_rational(&rat(1, 90)), d));
        assert!(decimal(&pi, 40).starts_with("3.14159265358979323846264338327"));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(decimal(&eta_ref(2, 10).unwrap(), 10), "0.8224670334");
        assert!(decimal(&eta_ref(4, 12).unwrap(), 14).starts_with("0.9470328294"));
        let twice = eta_ref(2, 40).unwrap().mul_pow2(1);
        assert!(agrees_to(&twice, &zeta_ref(2, 40).unwrap(), 40));
    }

    #[test]
    fn hurwitz_examples() {
        let z3 = zeta_ref(3, 12).unwrap();
        assert!(agrees_to(&hurwitz_ref(3, &rat(0, 1), 12).unwrap(), &z3, 12));
        close(&hurwitz_ref(3, &rat(1, 1), 12).unwrap(), "0.202056903160", 12);
        close(&hurwitz_ref(2, &rat(1, 2), 10).unwrap(), "0.9348022005", 10);
        assert!(matches!(hurwitz_ref(3, &rat(-2, 1), 10), Err(Error::Pole(_))));
        // negative non-integer shifts are fine
        let v = hurwitz_ref(2, &rat(-1, 2), 20).unwrap();
        let w = hurwitz_ref(2, &rat(1, 2), 20).unwrap().add_rational(&rat(4, 1));
        assert!(agrees_to(&v, &w, 20));
    }

    #[test]
    fn cutoff_doubling_is_stable() {
        for (s, z) in [(2, rat(0, 1)), (3, rat(0, 1)), (5, rat(1, 3)), (3, rat(7, 2))] {
            let d = 60;
            let m = default_cutoff(&z, d);
            let a = hurwitz_with_cutoff(s, &z, d, m).unwrap();
            let b = hurwitz_with_cutoff(s, &z, d, 2 * m).unwrap();
            assert!(agrees_to(&a, &b, d), "s={s} z={z}");
        }
    }

    #[test]
    fn digamma_examples() {
        close(&digamma_ref(&rat(1, 1), 10).unwrap(), "-0.5772156649", 10);
        close(&digamma_ref(&rat(1, 2), 10).unwrap(), "-1.9635100260", 10);
        let one = BigFloat::from_int(1, working_precision(40));
        let a = digamma(&one, 40, Some(30)).unwrap();
        let b = digamma(&one, 40, Some(60)).unwrap();
        assert!(agrees_to(&a, &b, 40));
        let diff = digamma_ref(&rat(2, 1), 30).unwrap().sub(&digamma_ref(&rat(1, 1), 30).unwrap());
        assert!(agrees_to(&diff, &BigFloat::from_int(1, 200), 30));
        assert!(matches!(digamma_ref(&rat(-3, 1), 10), Err(Error::Pole(_))));
        assert!(matches!(digamma_ref(&rat(0, 1), 10), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_and_log_two() {
        // psi(1/2) = -gamma - 2 ln 2
        let d = 50;
        let p = working_precision(d);
        let lhs = digamma_ref(&rat(1, 2), d).unwrap();
        let rhs = euler_gamma(d).neg().sub(&crate::numeric::ln2(p).mul_pow2(1));
        assert!(agrees_to(&lhs, &rhs, d));
    }

    #[test]
    fn tauraso_values() {
        let v = tauraso_closed_form(&rat(0, 1), &rat(0, 1), 10).unwrap();
        close(&v, "3.2898681337", 10);
        let v = tauraso_closed_form(&rat(0, 1), &rat(1, 2), 40).unwrap();
        assert!(agrees_to(&v, &BigFloat::from_int(4, 300), 40));
        let a = tauraso_closed_form(&rat(1, 3), &rat(1, 2), 40).unwrap();
        let b = tauraso_series_ref(&rat(1, 3), &rat(1, 2), 40).unwrap();
        assert!(agrees_to(&a, &b, 40));
        assert!(matches!(tauraso_closed_form(&rat(1, 1), &rat(0, 1), 10), Err(Error::Pole(_))));
    }

    #[test]
    fn tauraso_small_discriminant() {
        let a = tauraso_closed_form(&rat(1, 1000), &rat(1, 1000), 30).unwrap();
        let b = tauraso_series_ref(&rat(1, 1000), &rat(1, 1000), 30).unwrap();
        assert!(agrees_to(&a, &b, 30));
    }

    #[test]
    fn quartic_degenerates_to_zeta3() {
        let v = tauraso_quartic_ref(&rat(0, 1), &rat(0, 1), 40).unwrap();
        let w = zeta_ref(3, 40).unwrap().mul_pow2(2);
        assert!(agrees_to(&v, &w, 40));
    }

    #[test]
    fn matched_digit_counts() {
        let x = BigFloat::from_rational(&rat(1, 3), 200);
        let y = x.add(&BigFloat::from_rational(&rat(1, 3_000_000_000), 200));
        let m = matched_digits(&y, &x, 100.0);
        assert!((m - 9.0).abs() < 0.1, "{m}");
        assert_eq!(matched_digits(&x, &x, 55.0), 55.0);
    }
}
