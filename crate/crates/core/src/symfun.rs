//! Elementary and complete homogeneous symmetric functions of reciprocal
//! powers, and generalized harmonic numbers.
//!
//! Index convention: at index `k` the variables are `1/j^s` for
//! `1 <= j <= k-1`, for both families.

use num_bigint::BigInt;

use crate::numeric::Rational;

/// Incrementally maintained `e_0..e_L` and `h_0..h_L` at a moving index.
#[derive(Clone, Debug)]
pub struct SymState {
    exponent: u32,
    index: u64,
    elem: Vec<Rational>,
    complete: Vec<Rational>,
}

impl SymState {
    /// State at index 1 (no variables) for orders up to `max_order`.
    pub fn new(exponent: u32, max_order: usize) -> Self {
        assert!(exponent >= 1, "exponent must be positive");
        let mut elem = vec![Rational::zero(); max_order + 1];
        elem[0] = Rational::one();
        let complete = elem.clone();
        SymState {
            exponent,
            index: 1,
            elem,
            complete,
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn max_order(&self) -> usize {
        self.elem.len() - 1
    }

    /// Adds the variable `1/index^s` and moves to `index + 1`.
    pub fn advance(&mut self) {
        let x = reciprocal_power(self.index, self.exponent);
        for l in (1..self.elem.len()).rev() {
            let add = &self.elem[l - 1] * &x;
            self.elem[l] += add;
        }
        // h_m(new) = h_m(old) + x * h_{m-1}(new)
        for m in 1..self.complete.len() {
            let add = &self.complete[m - 1] * &x;
            self.complete[m] += add;
        }
        self.index += 1;
    }

    pub fn advance_to(&mut self, index: u64) {
        assert!(index >= self.index, "cannot move backwards");
        while self.index < index {
            self.advance();
        }
    }

    pub fn elem(&self, order: usize) -> &Rational {
        &self.elem[order]
    }

    pub fn complete(&self, order: usize) -> &Rational {
        &self.complete[order]
    }

    pub fn elems(&self) -> &[Rational] {
        &self.elem
    }
}

/// `1/k^s`.
pub fn reciprocal_power(k: u64, s: u32) -> Rational {
    Rational::new(1, num_traits::pow(BigInt::from(k), s as usize)).expect("k >= 1")
}

/// `e_ell^(s)(k)`: sum over `1 <= j_1 < ... < j_ell <= k-1` of `(j_1...j_ell)^(-s)`.
pub fn elem_sym(ell: usize, s: u32, k: u64) -> Rational {
    let mut st = SymState::new(s, ell);
    st.advance_to(k.max(1));
    st.elem(ell).clone()
}

/// `h_m^(s)(k)`: coefficient of `t^m` in `prod_{j=1}^{k-1} (1 - t/j^s)^(-1)`.
pub fn complete_hom(m: usize, s: u32, k: u64) -> Rational {
    let mut st = SymState::new(s, m);
    st.advance_to(k.max(1));
    st.complete(m).clone()
}

/// `H_n^(r) = sum_{k=1}^n k^(-r)`, with `H_0 = 0`.
pub fn harmonic(n: u64, r: u32) -> Rational {
    (1..=n).map(|k| reciprocal_power(k, r)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn elementary_examples() {
        assert_eq!(elem_sym(0, 2, 7), rat(1, 1));
        assert_eq!(elem_sym(1, 2, 3), rat(5, 4));
        assert_eq!(elem_sym(2, 2, 4), rat(7, 18));
        // fewer than ell variables
        assert_eq!(elem_sym(3, 2, 3), Rational::zero());
        assert_eq!(elem_sym(1, 1, 5), harmonic(4, 1));
    }

    #[test]
    fn complete_examples() {
        assert_eq!(complete_hom(0, 2, 5), rat(1, 1));
        assert_eq!(complete_hom(1, 2, 3), rat(5, 4));
        assert_eq!(complete_hom(2, 2, 3), rat(21, 16));
        assert_eq!(complete_hom(3, 2, 1), Rational::zero());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 1), Rational::zero());
        assert_eq!(harmonic(3, 1), rat(11, 6));
        assert_eq!(harmonic(2, 4), rat(17, 16));
    }

    /// Brute-force subset and multiset enumeration.
    fn brute(order: usize, s: u32, k: u64, repeat: bool) -> Rational {
        fn rec(start: u64, k: u64, left: usize, s: u32, repeat: bool) -> Rational {
            if left == 0 {
                return Rational::one();
            }
            let mut acc = Rational::zero();
            for j in start..k {
                let next = if repeat { j } else { j + 1 };
                acc += reciprocal_power(j, s) * rec(next, k, left - 1, s, repeat);
            }
            acc
        }
        rec(1, k, order, s, repeat)
    }

    #[test]
    fn incremental_matches_enumeration() {
        for s in 1..=3 {
            for k in 1..=9 {
                for ell in 0..=4 {
                    assert_eq!(elem_sym(ell, s, k), brute(ell, s, k, false), "e {ell} {s} {k}");
                    assert_eq!(complete_hom(ell, s, k), brute(ell, s, k, true), "h {ell} {s} {k}");
                }
            }
        }
    }

    #[test]
    fn state_entries_vanish_beyond_variable_count() {
        let mut st = SymState::new(2, 6);
        for k in 1..=8u64 {
            assert_eq!(st.index(), k);
            assert_eq!(st.elem(0), &Rational::one());
            assert_eq!(st.complete(0), &Rational::one());
            for l in 0..=6 {
                if l as u64 >= k {
                    assert!(st.elem(l).is_zero());
                }
                assert!(!st.elem(l).is_negative());
                assert!(!st.complete(l).is_negative());
            }
            st.advance();
        }
    }

    #[test]
    fn newton_identity_for_second_order() {
        let mut st = SymState::new(2, 2);
        let mut h2 = Rational::zero();
        let mut h4 = Rational::zero();
        for k in 1..=200u64 {
            assert_eq!(&h2 * &h2, st.elem(2) * &rat(2, 1) + &h4, "k={k}");
            h2 += reciprocal_power(k, 2);
            h4 += reciprocal_power(k, 4);
            st.advance();
        }
    }

    #[test]
    fn borwein_reduction_identity() {
        // (3/n)(4 e_2 + H4/2 - 2 H2^2) = -(9/(2n)) H4, indices at n-1.
        let mut st = SymState::new(2, 2);
        let mut h2 = Rational::zero();
        let mut h4 = Rational::zero();
        for n in 1..=200i64 {
            let lhs = rat(3, n) * (st.elem(2) * &rat(4, 1) + &h4 * &rat(1, 2) - &h2 * &h2 * rat(2, 1));
            let rhs = rat(-9, 2 * n) * &h4;
            assert_eq!(lhs, rhs, "n={n}");
            h2 += reciprocal_power(n as u64, 2);
            h4 += reciprocal_power(n as u64, 4);
            st.advance();
        }
    }

    #[test]
    fn generating_function_duality() {
        for k in 1..=30u64 {
            let mut st = SymState::new(2, 6);
            st.advance_to(k);
            for total in 1..=6usize {
                let mut acc = Rational::zero();
                for m in 0..=total {
                    let term = st.elem(m) * st.complete(total - m);
                    if m % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                assert!(acc.is_zero(), "k={k} M={total}");
            }
        }
    }
}
