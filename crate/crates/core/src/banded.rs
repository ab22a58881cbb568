//! Products of bidiagonal Toeplitz blocks `A_k = alpha_k I + beta_k J`.
//!
//! `J` is the superdiagonal shift, nilpotent of order `N`. A product of `p`
//! such blocks is `(prod alpha_i) * sum_m e_m(beta/alpha) J^m`, which lets the
//! accumulator below stream the `u` column of an infinite product using
//! `O(N)` scalars of state.
//!
//! Component ordering follows the block's column from the bottom up: index 0
//! is the entry just above the trailing `1`, index `N-1` is the top row.

use crate::error::{Error, Result};
use crate::group::GosperMatrix;
use crate::numeric::{BigFloat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct BandFactor {
    pub alpha: Scalar,
    pub beta: Scalar,
    /// Bottom-up: `u[0]` is the lowest entry of the column.
    pub u: Vec<Scalar>,
}

impl BandFactor {
    pub fn new(alpha: Scalar, beta: Scalar, u: Vec<Scalar>) -> Self {
        BandFactor { alpha, beta, u }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// Rounds every entry to a float of the given precision.
    pub fn to_float(&self, precision: u32) -> BandFactor {
        let f = |x: &Scalar| Scalar::from(x.to_float(precision));
        BandFactor {
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            u: self.u.iter().map(f).collect(),
        }
    }

    /// The dense Gosper matrix `[[alpha I + beta J, u], [0, 1]]`.
    pub fn to_gosper(&self) -> GosperMatrix {
        let n = self.dim();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == i {
                            self.alpha.clone()
                        } else if j == i + 1 {
                            self.beta.clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let u = self.u.iter().rev().cloned().collect();
        GosperMatrix::new(a, u).expect("square by construction")
    }
}

/// Dense `A_1...A_p` from the closed form `(prod alpha) * sum_m e_m(beta/alpha) J^m`.
pub fn band_product(factors: &[BandFactor], dim: usize) -> Result<Vec<Vec<Scalar>>> {
    if dim == 0 {
        return Err(Error::InvalidScheme("band dimension must be at least 1".into()));
    }
    let mut prefix = Scalar::one();
    let mut esyms = unit_esyms(dim);
    for (i, f) in factors.iter().enumerate() {
        if f.alpha.is_zero() {
            return Err(Error::ZeroAlpha { k: i as u64 + 1 });
        }
        let ratio = f.beta.checked_div(&f.alpha)?;
        push_ratio(&mut esyms, &ratio);
        prefix = &prefix * &f.alpha;
    }
    let coeffs: Vec<Scalar> = esyms.iter().map(|e| &prefix * e).collect();
    Ok(toeplitz_upper(&coeffs))
}

/// Upper-triangular Toeplitz matrix whose m-th superdiagonal is `coeffs[m]`.
pub fn toeplitz_upper(coeffs: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = coeffs.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j >= i {
                        coeffs[j - i].clone()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn unit_esyms(dim: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); dim];
    e[0] = Scalar::one();
    e
}

/// `e_m <- e_m + e_{m-1} * ratio`, highest order first.
fn push_ratio(esyms: &mut [Scalar], ratio: &Scalar) {
    for m in (1..esyms.len()).rev() {
        if esyms[m - 1].is_zero() {
            continue;
        }
        let add = &esyms[m - 1] * ratio;
        esyms[m] = &esyms[m] + &add;
    }
}

/// Streaming evaluation of the `u` column of `M_1 M_2 ...`.
///
/// After `p` factors, `v[l] = sum_{q<=p} (alpha_1...alpha_{q-1}) *
/// sum_{m<=l} e_m(beta_j/alpha_j : j<q) * u_q[l-m]`.
#[derive(Clone, Debug)]
pub struct BandAccumulator {
    dim: usize,
    terms: u64,
    prefix: Scalar,
    ratio_esyms: Vec<Scalar>,
    v: Vec<Scalar>,
}

/// Heuristic size of the truncation error for one component.
#[derive(Clone, Debug)]
pub struct TailEstimate {
    /// Estimated `|v_inf - v_p|`; `None` when the next factor does not contract.
    pub bound: Option<Scalar>,
    /// Estimated correct decimal digits relative to the current value.
    pub digits: f64,
}

impl BandAccumulator {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "band dimension must be at least 1");
        BandAccumulator {
            dim,
            terms: 0,
            prefix: Scalar::one(),
            ratio_esyms: unit_esyms(dim),
            v: vec![Scalar::zero(); dim],
        }
    }

    /// Accumulator whose state is held as floats of the given precision.
    pub fn with_precision(dim: usize, precision: u32) -> Self {
        let mut acc = Self::new(dim);
        let one = Scalar::from(BigFloat::from_int(1, precision));
        let zero = Scalar::from(BigFloat::zero(precision));
        acc.prefix = one.clone();
        acc.ratio_esyms = acc
            .ratio_esyms
            .iter()
            .map(|e| if e.is_zero() { zero.clone() } else { one.clone() })
            .collect();
        acc.v = vec![zero; dim];
        acc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// `alpha_1 ... alpha_p`.
    pub fn prefix(&self) -> &Scalar {
        &self.prefix
    }

    /// `e_0..e_{N-1}` of the ratios `beta_j/alpha_j`, `j <= p`.
    pub fn ratio_esyms(&self) -> &[Scalar] {
        &self.ratio_esyms
    }

    /// Partial `v`, bottom-up.
    pub fn v(&self) -> &[Scalar] {
        &self.v
    }

    /// Coefficients of `J^m` in `A_1...A_p`.
    pub fn band_coefficients(&self) -> Vec<Scalar> {
        self.ratio_esyms.iter().map(|e| &self.prefix * e).collect()
    }

    /// The dense `A_1...A_p`.
    pub fn a_block(&self) -> Vec<Vec<Scalar>> {
        toeplitz_upper(&self.band_coefficients())
    }

    fn check_dim(&self, f: &BandFactor) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: f.dim(),
            });
        }
        Ok(())
    }

    /// `prefix * sum_m e_m * u[l-m]` for each component.
    fn contribution(&self, f: &BandFactor) -> Vec<Scalar> {
        (0..self.dim)
            .map(|l| {
                let mut t = self.v[0].zero_like();
                for m in 0..=l {
                    let e = &self.ratio_esyms[m];
                    if !e.is_zero() && !f.u[l - m].is_zero() {
                        t = &t + &(e * &f.u[l - m]);
                    }
                }
                &self.prefix * &t
            })
            .collect()
    }

    /// Consumes the next factor.
    ///
    /// The factor's `u` is weighted by the state from the previous factors
    /// before `prefix` and the ratio sums advance. A zero `alpha` is accepted
    /// for `N = 1`, where no ratio is formed; it zeroes all later terms.
    pub fn accumulate(&mut self, f: &BandFactor) -> Result<()> {
        self.check_dim(f)?;
        if self.dim > 1 && f.alpha.is_zero() {
            return Err(Error::ZeroAlpha { k: self.terms + 1 });
        }
        let add = self.contribution(f);
        for (v, a) in self.v.iter_mut().zip(add) {
            *v = &*v + &a;
        }
        if self.dim > 1 {
            let ratio = f.beta.checked_div(&f.alpha)?;
            push_ratio(&mut self.ratio_esyms, &ratio);
        }
        self.prefix = &self.prefix * &f.alpha;
        self.terms += 1;
        Ok(())
    }

    /// Heuristic truncation error from the next factor's contribution,
    /// extrapolated as a geometric tail with ratio `|alpha_next|`.
    ///
    /// Returns `None` before any factor has been consumed.
    pub fn error_estimate(&self, next: &BandFactor) -> Result<Option<Vec<TailEstimate>>> {
        self.check_dim(next)?;
        if self.terms == 0 {
            return Ok(None);
        }
        let ratio = next.alpha.abs().to_f64();
        let out = self
            .contribution(next)
            .into_iter()
            .zip(&self.v)
            .map(|(t, v)| {
                if ratio >= 1.0 {
                    return TailEstimate {
                        bound: None,
                        digits: 0.0,
                    };
                }
                let bound = t.abs();
                let log_bound = bound.log10_abs() - (1.0 - ratio).log10();
                let digits = if bound.is_zero() {
                    f64::INFINITY
                } else {
                    (v.log10_abs() - log_bound).max(0.0)
                };
                TailEstimate {
                    bound: Some(bound),
                    digits,
                }
            })
            .collect();
        Ok(Some(out))
    }

    /// `-log10 |alpha|` of a factor: the asymptotic digits gained per term
    /// once `alpha_k` has settled.
    pub fn digits_per_term(next: &BandFactor) -> Option<f64> {
        let a = next.alpha.abs().to_f64();
        (a > 0.0 && a < 1.0).then(|| -a.log10())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite_product;
    use crate::numeric::rat;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::from(rat(n, d))
    }

    fn factor(alpha: Scalar, beta: Scalar, u: Vec<Scalar>) -> BandFactor {
        BandFactor::new(alpha, beta, u)
    }

    fn koecher(k: i64, dim: usize) -> BandFactor {
        let mut u = vec![s(5, 4 * k * k)];
        for l in 2..=dim as u32 {
            u.push(s(1, k.pow(2 * l)));
        }
        factor(s(-k, 2 * (2 * k + 1)), s(1, 2 * k * (2 * k + 1)), u)
    }

    #[test]
    fn band_product_examples() {
        let fs = [
            factor(s(1, 1), s(1, 1), vec![s(0, 1); 2]),
            factor(s(2, 1), s(1, 1), vec![s(0, 1); 2]),
        ];
        assert_eq!(
            band_product(&fs, 2).unwrap(),
            vec![vec![s(2, 1), s(3, 1)], vec![s(0, 1), s(2, 1)]]
        );
        let single = [factor(s(2, 1), s(1, 1), vec![s(0, 1); 3])];
        let m = band_product(&single, 3).unwrap();
        assert_eq!(m[0], vec![s(2, 1), s(1, 1), s(0, 1)]);
        let scalars = [
            factor(s(3, 1), s(7, 1), vec![s(0, 1)]),
            factor(s(1, 5), s(9, 1), vec![s(0, 1)]),
        ];
        assert_eq!(band_product(&scalars, 1).unwrap(), vec![vec![s(3, 5)]]);
        let zero = [factor(s(0, 1), s(1, 1), vec![s(0, 1); 2])];
        assert_eq!(band_product(&zero, 2), Err(Error::ZeroAlpha { k: 1 }));
    }

    #[test]
    fn koecher_first_terms() {
        let mut acc = BandAccumulator::new(1);
        acc.accumulate(&koecher(1, 1)).unwrap();
        assert_eq!(acc.v()[0], s(5, 4));
        acc.accumulate(&koecher(2, 1)).unwrap();
        assert_eq!(acc.v()[0], s(115, 96));
        let dense: Vec<_> = (1..=2).map(|k| koecher(k, 1).to_gosper()).collect();
        assert_eq!(finite_product(1, &dense).unwrap().u()[0], s(115, 96));
    }

    #[test]
    fn matches_dense_product_at_every_truncation() {
        for dim in 1..=4 {
            let mut acc = BandAccumulator::new(dim);
            let mut dense = GosperMatrix::identity(dim);
            for k in 1..=30 {
                let f = koecher(k, dim);
                acc.accumulate(&f).unwrap();
                dense = dense.multiply(&f.to_gosper()).unwrap();
                let bottom_up: Vec<_> = dense.u().iter().rev().cloned().collect();
                assert_eq!(acc.v(), &bottom_up[..], "dim={dim} k={k}");
                assert_eq!(acc.a_block(), dense.a_rows());
            }
        }
    }

    #[test]
    fn ratio_sums_are_signed_symmetric_functions() {
        let mut acc = BandAccumulator::new(4);
        let mut st = crate::symfun::SymState::new(2, 3);
        for k in 1..=40 {
            acc.accumulate(&koecher(k, 4)).unwrap();
            st.advance();
            for m in 0..4 {
                let expected = if m % 2 == 0 {
                    st.elem(m).clone()
                } else {
                    -st.elem(m)
                };
                assert_eq!(acc.ratio_esyms()[m], Scalar::from(expected));
            }
        }
    }

    #[test]
    fn zero_alpha_rules() {
        let mut acc = BandAccumulator::new(1);
        acc.accumulate(&factor(s(0, 1), s(0, 1), vec![s(4, 1)])).unwrap();
        acc.accumulate(&factor(s(1, 2), s(0, 1), vec![s(9, 1)])).unwrap();
        assert_eq!(acc.v()[0], s(4, 1));
        let mut acc2 = BandAccumulator::new(2);
        let e = acc2.accumulate(&factor(s(0, 1), s(1, 1), vec![s(1, 1); 2]));
        assert_eq!(e, Err(Error::ZeroAlpha { k: 1 }));
    }

    #[test]
    fn estimate_requires_history() {
        let acc = BandAccumulator::new(1);
        assert!(acc.error_estimate(&koecher(1, 1)).unwrap().is_none());
    }

    #[test]
    fn markov_type_rate() {
        let f = koecher(1000, 1);
        let rate = BandAccumulator::digits_per_term(&f).unwrap();
        assert!((rate - 4f64.log10()).abs() < 1e-3, "{rate}");
    }

    #[test]
    fn float_accumulator_tracks_exact_one() {
        let mut exact = BandAccumulator::new(2);
        let mut float = BandAccumulator::with_precision(2, 200);
        for k in 1..=50 {
            let f = koecher(k, 2);
            exact.accumulate(&f).unwrap();
            float.accumulate(&f.to_float(200)).unwrap();
        }
        for l in 0..2 {
            let diff = &exact.v()[l] - &float.v()[l];
            assert!(diff.log10_abs() < -55.0);
            assert!(!float.v()[l].is_exact());
        }
    }
}
