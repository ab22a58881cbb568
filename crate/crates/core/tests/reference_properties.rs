use gosper::numeric::{rat, BigFloat, Rational};
use gosper::reference::{
    agrees_to, digamma_ref, eta_ref, tauraso_closed_form, working_precision, zeta_ref,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn digamma_recurrence(n in 1i64..1000, d in 1i64..100) {
        let x = rat(n % (10 * d), d);
        prop_assume!(!x.is_zero());
        let digits = 40;
        let lhs = digamma_ref(&(&x + &Rational::one()), digits).unwrap()
            .sub(&digamma_ref(&x, digits).unwrap());
        let rhs = BigFloat::from_rational(&x.recip().unwrap(), working_precision(digits));
        prop_assert!(agrees_to(&lhs, &rhs, digits));
    }
}

#[test]
fn eta_zeta_relation() {
    for s in 2..=8u32 {
        let eta = eta_ref(s, 50).unwrap();
        let factor = Rational::one() - Rational::new(1, 1i64 << (s - 1)).unwrap();
        let back = eta.mul_rational(&factor.recip().unwrap());
        assert!(agrees_to(&back, &zeta_ref(s, 50).unwrap(), 50), "s={s}");
    }
}

/// Neumaier-compensated sum of `2/(n^2 - a n - b^2)` for `n <= 10^6`, plus
/// the integral of the summand from `10^6 + 1/2`.
fn brute_tauraso(a: f64, b: f64) -> f64 {
    let n_max = 1_000_000u64;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for n in 1..=n_max {
        let x = n as f64;
        let t = 2.0 / (x * x - a * x - b * b);
        let s = sum + t;
        comp += if sum.abs() >= t.abs() { (sum - s) + t } else { (t - s) + sum };
        sum = s;
    }
    let big_x = n_max as f64 + 0.5;
    let disc = (a * a + 4.0 * b * b).sqrt();
    let tail = if disc == 0.0 {
        2.0 / big_x
    } else {
        let (r1, r2) = ((a + disc) / 2.0, (a - disc) / 2.0);
        2.0 / disc * ((big_x - r2) / (big_x - r1)).ln()
    };
    sum + comp + tail
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn tauraso_closed_form_matches_brute_force(an in -50i64..=50, bn in -50i64..=50) {
        let (a, b) = (rat(an, 100), rat(bn, 100));
        let closed = tauraso_closed_form(&a, &b, 20).unwrap().to_f64();
        let brute = brute_tauraso(a.to_f64(), b.to_f64());
        prop_assert!(((closed - brute) / closed).abs() < 1e-11, "{closed} vs {brute}");
    }
}
