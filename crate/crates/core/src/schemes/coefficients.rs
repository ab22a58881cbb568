//! Single series obtained by extracting one power of the generating variable
//! from a scheme's generating-function form.

use num_bigint::BigInt;

use crate::numeric::Rational;
use crate::symfun::SymState;

/// Truncated power series with exact coefficients, lowest order first.
pub mod series {
    use crate::numeric::Rational;

    pub fn mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); order + 1];
        for (i, x) in a.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// `a / b`; panics when `b[0]` is zero.
    pub fn div(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
        let b0 = b[0].recip().expect("series divisor needs a nonzero constant term");
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = a.get(m).cloned().unwrap_or_else(Rational::zero);
            for i in 1..=m.min(b.len().saturating_sub(1)) {
                acc -= &b[i] * &out[m - i];
            }
            out.push(acc * &b0);
        }
        out
    }
}

fn signed(x: Rational, negative: bool) -> Rational {
    if negative {
        -x
    } else {
        x
    }
}

fn inv_pow(k: u64, e: u32) -> Rational {
    crate::symfun::reciprocal_power(k, e)
}

/// Running `k` and `binom(2k, k)`.
#[derive(Clone, Debug)]
struct CentralIndex {
    k: u64,
    c: BigInt,
}

impl CentralIndex {
    fn new() -> Self {
        CentralIndex {
            k: 0,
            c: BigInt::from(1),
        }
    }

    fn advance(&mut self) {
        self.k += 1;
        self.c = &self.c * BigInt::from(2 * (2 * self.k - 1)) / BigInt::from(self.k);
    }

    /// `1/(k^e binom(2k,k))`.
    fn weight(&self, e: u32) -> Rational {
        inv_pow(self.k, e) * Rational::new(1, self.c.clone()).expect("positive")
    }
}

/// Partial sums of the order-`n` series for `zeta(2n+3)`, one per term.
///
/// The `k`-th summand is `(-1)^(k-1)/binom(2k,k)` times
/// `(5/2)(-1)^n e_n/k^3 + 2 sum_{j=1..n} (-1)^(n-j) e_(n-j)/k^(2j+3)`,
/// with `e` the second-order elementary symmetric functions at `k`.
pub fn koecher_partial_sums(n: usize) -> impl Iterator<Item = Rational> {
    let mut st = SymState::new(2, n);
    let mut idx = CentralIndex::new();
    let mut sum = Rational::zero();
    std::iter::from_fn(move || {
        idx.advance();
        let k = idx.k;
        let mut inner = signed(
            Rational::new(5, 2).expect("nonzero") * st.elem(n) * inv_pow(k, 3),
            n % 2 == 1,
        );
        for j in 1..=n {
            let t = Rational::from_integer(2) * st.elem(n - j) * inv_pow(k, 2 * j as u32 + 3);
            inner += signed(t, (n - j) % 2 == 1);
        }
        let summand = signed(inner, k.is_multiple_of(2)) * Rational::new(1, idx.c.clone()).expect("positive");
        sum += summand;
        st.advance();
        Some(sum.clone())
    })
}

pub fn koecher_coefficient_series(n: usize, terms: u64) -> Rational {
    koecher_partial_sums(n)
        .nth(terms.saturating_sub(1) as usize)
        .expect("infinite iterator")
}

/// The `k`-th summand of the order-`n` series for `zeta(2n+2)`:
/// `3/(k^2 binom(2k,k)) sum_{l+m=n} (-4)^l e_l(k) h_m(k+1)`.
pub fn borwein_summands(n: usize) -> impl Iterator<Item = Rational> {
    let mut st = SymState::new(2, n);
    let mut idx = CentralIndex::new();
    std::iter::from_fn(move || {
        idx.advance();
        let e: Vec<Rational> = st.elems().to_vec();
        st.advance();
        let mut inner = Rational::zero();
        let mut four = Rational::one();
        for (l, el) in e.iter().enumerate() {
            inner += signed(&four * el * st.complete(n - l), l % 2 == 1);
            four *= Rational::from_integer(4);
        }
        Some(Rational::from_integer(3) * idx.weight(2) * inner)
    })
}

pub fn borwein_coefficient_series(n: usize, terms: u64) -> Rational {
    borwein_summands(n).take(terms as usize).sum()
}

/// Summands of the order-`n` series for `eta(2n+2)`, obtained by expanding
/// `(1/(2 binom(2k,k) k^2)) (3k^2 + w)/(k^2 - w) prod_{j<k} (1 - w/j^2)` in `w`.
pub fn leschiner_summands(n: usize) -> impl Iterator<Item = Rational> {
    let mut idx = CentralIndex::new();
    let mut prod = vec![Rational::zero(); n + 1];
    prod[0] = Rational::one();
    std::iter::from_fn(move || {
        idx.advance();
        let k = idx.k;
        let k2 = Rational::from_integer(k * k);
        let ratio = series::div(
            &[Rational::from_integer(3) * &k2, Rational::one()],
            &[k2.clone(), -Rational::one()],
            n,
        );
        let full = series::mul(&ratio, &prod, n);
        let half = Rational::new(1, 2).expect("nonzero");
        let summand = &full[n] * &half * idx.weight(2);
        let factor = [Rational::one(), -inv_pow(k, 2)];
        prod = series::mul(&prod, &factor, n);
        Some(summand)
    })
}

pub fn leschiner_coefficient_series(n: usize, terms: u64) -> Rational {
    leschiner_summands(n).take(terms as usize).sum()
}

/// The general-order formula as it was originally printed:
/// `(3/2) sum (-1)^n e_n/(k^2 C) + 6 sum_j sum (-1)^(n-j) e_(n-j)/(k^(2j+2) C)`.
///
/// Kept only to be compared against [`leschiner_coefficient_series`].
pub fn leschiner_printed_series(n: usize, terms: u64) -> Rational {
    let mut st = SymState::new(2, n);
    let mut idx = CentralIndex::new();
    let mut sum = Rational::zero();
    for _ in 0..terms {
        idx.advance();
        let mut inner = signed(Rational::new(3, 2).expect("nonzero") * st.elem(n), n % 2 == 1);
        for j in 1..=n {
            let t = Rational::from_integer(6) * st.elem(n - j) * inv_pow(idx.k, 2 * j as u32);
            inner += signed(t, (n - j) % 2 == 1);
        }
        sum += inner * idx.weight(2);
        st.advance();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::symfun::{elem_sym, harmonic};

    #[test]
    fn first_terms() {
        assert_eq!(koecher_coefficient_series(0, 1), rat(5, 4));
        assert_eq!(koecher_coefficient_series(0, 2), rat(115, 96));
        assert_eq!(borwein_coefficient_series(0, 1), rat(3, 2));
        assert_eq!(leschiner_coefficient_series(0, 1), rat(3, 4));
    }

    #[test]
    fn series_division() {
        // 1/(1 - w) = 1 + w + w^2 + ...
        let q = series::div(&[Rational::one()], &[Rational::one(), -Rational::one()], 5);
        assert!(q.iter().all(|c| *c == Rational::one()));
        let back = series::mul(&q, &[Rational::one(), -Rational::one()], 5);
        assert_eq!(back[0], Rational::one());
        assert!(back[1..].iter().all(Rational::is_zero));
    }

    /// Direct expansion of `(1/2)(-1)^(k-1)/(C k^3) (5k^2 - w)/(k^2 - w) prod (1 - w/m^2)`.
    #[test]
    fn koecher_matches_generating_function() {
        for n in 0..=3usize {
            let sums: Vec<Rational> = koecher_partial_sums(n).take(25).collect();
            let mut prod = vec![Rational::zero(); n + 1];
            prod[0] = Rational::one();
            let mut acc = Rational::zero();
            let mut idx = CentralIndex::new();
            for (i, s) in sums.iter().enumerate() {
                idx.advance();
                let k = idx.k;
                let k2 = Rational::from_integer(k * k);
                let r = series::div(
                    &[Rational::from_integer(5) * &k2, -Rational::one()],
                    &[k2, -Rational::one()],
                    n,
                );
                let c = &series::mul(&r, &prod, n)[n] * &rat(1, 2) * idx.weight(3);
                acc += signed(c, k.is_multiple_of(2));
                assert_eq!(&acc, s, "n={n} term {}", i + 1);
                prod = series::mul(&prod, &[Rational::one(), -inv_pow(k, 2)], n);
            }
        }
    }

    #[test]
    fn borwein_brackets_match_printed_extractions() {
        let b1: Vec<Rational> = borwein_summands(1).take(50).collect();
        let b2: Vec<Rational> = borwein_summands(2).take(50).collect();
        for k in 1..=50u64 {
            let w = Rational::from_integer(3) * inv_pow(k, 2)
                * Rational::new(1, crate::numeric::central_binomial(k)).unwrap();
            let h2 = harmonic(k - 1, 2);
            let h4 = harmonic(k - 1, 4);
            let bracket1 = inv_pow(k, 2) - rat(3, 1) * &h2;
            assert_eq!(b1[k as usize - 1], &w * &bracket1, "k={k}");
            let bracket2 = rat(17, 1) * elem_sym(2, 2, k) + &h4 - rat(4, 1) * &h2 * &h2
                - rat(3, 1) * &h2 * inv_pow(k, 2)
                + inv_pow(k, 4);
            assert_eq!(b2[k as usize - 1], &w * &bracket2, "k={k}");
        }
    }

    #[test]
    fn leschiner_closed_forms() {
        let l0: Vec<Rational> = leschiner_summands(0).take(20).collect();
        let l1: Vec<Rational> = leschiner_summands(1).take(20).collect();
        for k in 1..=20u64 {
            let w = inv_pow(k, 2) * Rational::new(1, crate::numeric::central_binomial(k)).unwrap();
            assert_eq!(l0[k as usize - 1], rat(3, 2) * &w);
            // (3/2) w (4/(3k^2) - H)
            let bracket = rat(4, 3) * inv_pow(k, 2) - harmonic(k - 1, 2);
            assert_eq!(l1[k as usize - 1], rat(3, 2) * &w * bracket, "k={k}");
        }
    }

    #[test]
    fn printed_leschiner_formula_agrees_only_at_order_zero() {
        assert_eq!(leschiner_printed_series(0, 30), leschiner_coefficient_series(0, 30));
        for n in 1..=2 {
            assert_ne!(leschiner_printed_series(n, 30), leschiner_coefficient_series(n, 30));
        }
    }
}
