//! Driving a scheme: truncated evaluation, automatic verification against
//! the reference values, and measured convergence rates.

use rayon::prelude::*;

use crate::banded::{BandAccumulator, BandFactor, TailEstimate};
use crate::error::{Error, Result};
use crate::group::{finite_product_segmented, GosperMatrix};
use crate::numeric::{BigFloat, Scalar};
use crate::reference::{self, matched_digits, working_precision, Oracle, GUARD_DIGITS};
use crate::schemes::{
    leschiner_coefficient_series, leschiner_printed_series, ConstantDescriptor, SchemeDef,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Rational,
    Float { precision: u32 },
}

impl Backend {
    pub fn precision(&self) -> Option<u32> {
        match self {
            Backend::Rational => None,
            Backend::Float { precision } => Some(*precision),
        }
    }
}

/// Incremental evaluation of one scheme.
#[derive(Clone, Debug)]
pub struct Run<'a> {
    scheme: &'a SchemeDef,
    backend: Backend,
    acc: BandAccumulator,
}

impl<'a> Run<'a> {
    pub fn new(scheme: &'a SchemeDef, backend: Backend) -> Self {
        let acc = match backend {
            Backend::Rational => BandAccumulator::new(scheme.dim),
            Backend::Float { precision } => BandAccumulator::with_precision(scheme.dim, precision),
        };
        Run {
            scheme,
            backend,
            acc,
        }
    }

    pub fn terms(&self) -> u64 {
        self.acc.terms()
    }

    pub fn accumulator(&self) -> &BandAccumulator {
        &self.acc
    }

    fn convert(&self, f: BandFactor) -> BandFactor {
        match self.backend {
            Backend::Rational => f,
            Backend::Float { precision } => f.to_float(precision),
        }
    }

    /// Consumes the next factor.
    pub fn step(&mut self) -> Result<()> {
        let k = self.acc.terms() + 1;
        if let Some(n) = self.scheme.finite_terms {
            if k > n {
                return Err(Error::InvalidScheme(format!(
                    "{} is a finite product of {n} factors",
                    self.scheme.name
                )));
            }
        }
        let f = self.convert(self.scheme.factor(k)?);
        self.acc.accumulate(&f)
    }

    pub fn advance_to(&mut self, terms: u64) -> Result<()> {
        while self.acc.terms() < terms {
            self.step()?;
        }
        Ok(())
    }

    /// The factor after the last one consumed, if the product continues.
    pub fn next_factor(&self) -> Option<BandFactor> {
        let k = self.acc.terms() + 1;
        if self.scheme.finite_terms.is_some_and(|n| k > n) {
            return None;
        }
        self.scheme.factor(k).ok().map(|f| self.convert(f))
    }

    /// Heuristic tail estimate; `None` before the first factor or once a
    /// finite product is complete.
    pub fn estimate(&self) -> Result<Option<Vec<TailEstimate>>> {
        match self.next_factor() {
            Some(next) => self.acc.error_estimate(&next),
            None => Ok(None),
        }
    }
}

/// A truncated product.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub terms: u64,
    pub backend: Backend,
    /// Bottom-up, like the scheme's targets.
    pub v: Vec<Scalar>,
    /// `alpha_1 ... alpha_p`.
    pub prefix: Scalar,
    pub a_block: Vec<Vec<Scalar>>,
    pub estimates: Option<Vec<TailEstimate>>,
}

/// Evaluates `terms` factors; finite schemes default to their full length.
pub fn evaluate(scheme: &SchemeDef, terms: Option<u64>, backend: Backend) -> Result<Evaluation> {
    let terms = match (terms, scheme.finite_terms) {
        (Some(t), _) => t,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::InvalidScheme(format!(
                "{} is an infinite product; give a number of terms",
                scheme.name
            )))
        }
    };
    if terms == 0 {
        return Err(Error::InvalidScheme("terms must be at least 1".into()));
    }
    let mut run = Run::new(scheme, backend);
    run.advance_to(terms)?;
    let acc = run.accumulator();
    Ok(Evaluation {
        terms,
        backend,
        v: acc.v().to_vec(),
        prefix: acc.prefix().clone(),
        a_block: acc.a_block(),
        estimates: run.estimate()?,
    })
}

/// The same product as a dense Gosper matrix, with factors built and
/// multiplied in parallel. Exact inputs give exactly the streamed result.
pub fn evaluate_segmented(scheme: &SchemeDef, terms: u64, leaf: usize) -> Result<GosperMatrix> {
    let factors: Vec<GosperMatrix> = (1..=terms)
        .into_par_iter()
        .map(|k| scheme.factor(k).map(|f| f.to_gosper()))
        .collect::<Result<_>>()?;
    finite_product_segmented(scheme.dim, &factors, leaf)
}

/// Upper bound on terms tried by [`verify`].
pub const VERIFY_TERM_CAP: u64 = 10_000;

/// One target compared against its reference value.
#[derive(Clone, Debug)]
pub struct TargetCheck {
    pub descriptor: ConstantDescriptor,
    pub approx: Scalar,
    pub oracle: Oracle,
    pub matched: f64,
    pub estimated: f64,
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub terms: u64,
    pub precision: Option<u32>,
    pub capped: bool,
    pub passed: bool,
    pub checks: Vec<TargetCheck>,
}

/// Compares the bottom-up components `v` with reference values of the
/// scheme's targets, computed to `digits` plus the guard digits.
pub fn check_targets(
    scheme: &SchemeDef,
    v: &[Scalar],
    estimates: Option<&[TailEstimate]>,
    digits: u32,
) -> Result<Vec<TargetCheck>> {
    let cap = (digits + GUARD_DIGITS) as f64;
    scheme
        .targets
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let oracle = reference::evaluate(t, digits + GUARD_DIGITS)?;
            let exact = reference::exact_value(t);
            let matched = match (&exact, v[i].as_rational()) {
                (Some(x), Some(y)) if x == y => cap,
                _ => {
                    let p = oracle.value.precision();
                    matched_digits(&v[i].to_float(p), &oracle.value, cap)
                }
            };
            let estimated = estimates.map_or(cap, |e| e[i].digits.min(cap));
            Ok(TargetCheck {
                descriptor: t.clone(),
                approx: v[i].clone(),
                oracle,
                matched,
                estimated,
            })
        })
        .collect()
}

/// Adds factors until the heuristic error estimate reaches `digits` (or the
/// cap is hit), then compares every component with its reference value.
pub fn verify(scheme: &SchemeDef, digits: u32) -> Result<VerifyOutcome> {
    if let Some(n) = scheme.finite_terms {
        let eval = evaluate(scheme, Some(n), Backend::Rational)?;
        let checks = check_targets(scheme, &eval.v, None, digits)?;
        let passed = checks.iter().all(|c| c.matched >= digits as f64);
        return Ok(VerifyOutcome {
            terms: n,
            precision: None,
            capped: false,
            passed,
            checks,
        });
    }
    let precision = working_precision(digits + GUARD_DIGITS) + 16;
    let want = digits as f64 + 2.0;
    let mut run = Run::new(scheme, Backend::Float { precision });
    let mut capped = false;
    let estimates = loop {
        run.step()?;
        if let Some(est) = run.estimate()? {
            if est.iter().all(|e| e.digits >= want) {
                break Some(est);
            }
            if run.terms() >= VERIFY_TERM_CAP {
                capped = true;
                break Some(est);
            }
        } else if run.terms() >= VERIFY_TERM_CAP {
            capped = true;
            break None;
        }
    };
    let checks = check_targets(scheme, run.accumulator().v(), estimates.as_deref(), digits)?;
    let passed = !capped && checks.iter().all(|c| c.matched >= digits as f64);
    Ok(VerifyOutcome {
        terms: run.terms(),
        precision: Some(precision),
        capped,
        passed,
        checks,
    })
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Clone, Debug)]
pub struct RateReport {
    pub window: (u64, u64),
    /// Digits per term for each target, bottom-up.
    pub per_target: Vec<f64>,
    /// Mean over targets.
    pub digits_per_term: f64,
    /// `-log10 |alpha_k|` at the end of the window.
    pub asymptotic: Option<f64>,
    pub precision: u32,
}

/// Measures matched digits at every truncation in `lo..=hi` and fits a line.
pub fn rate(scheme: &SchemeDef, lo: u64, hi: u64) -> Result<RateReport> {
    if !(10..=1000).contains(&lo) || !(10..=1000).contains(&hi) || lo >= hi {
        return Err(Error::Domain(format!(
            "window {lo}:{hi} must satisfy 10 <= lo < hi <= 1000"
        )));
    }
    if scheme.is_finite() {
        return Err(Error::Domain(format!("{} is a finite product", scheme.name)));
    }
    // Digits reachable by `hi` terms, from the size of the alpha prefix.
    let mut log_prefix = 0.0;
    for k in 1..=hi {
        let a = scheme.factor(k)?.alpha;
        if a.is_zero() {
            return Err(Error::Domain(format!(
                "{} terminates after {k} factors; its rate is undefined",
                scheme.name
            )));
        }
        log_prefix += a.log10_abs();
    }
    let digits = ((-log_prefix).max(0.0) + 40.0).ceil() as u32;
    let precision = working_precision(digits + GUARD_DIGITS) + 16;
    let oracles: Vec<Oracle> = scheme
        .targets
        .par_iter()
        .map(|t| reference::evaluate(t, digits))
        .collect::<Result<_>>()?;
    let cap = (digits + GUARD_DIGITS) as f64;

    let mut run = Run::new(scheme, Backend::Float { precision });
    run.advance_to(lo - 1)?;
    let mut xs = Vec::new();
    let mut ys: Vec<Vec<f64>> = vec![Vec::new(); scheme.dim];
    for p in lo..=hi {
        run.step()?;
        xs.push(p as f64);
        for (i, o) in oracles.iter().enumerate() {
            let v = run.accumulator().v()[i].to_float(precision);
            ys[i].push(matched_digits(&v, &o.value, cap));
        }
    }
    let per_target: Vec<f64> = ys.iter().map(|y| slope(&xs, y)).collect();
    let digits_per_term = per_target.iter().sum::<f64>() / per_target.len() as f64;
    let asymptotic = BandAccumulator::digits_per_term(&scheme.factor(hi)?);
    Ok(RateReport {
        window: (lo, hi),
        per_target,
        digits_per_term,
        asymptotic,
        precision,
    })
}

/// One order of the alternating-zeta coefficient series.
#[derive(Clone, Debug)]
pub struct LeschinerRow {
    pub order: usize,
    pub target: ConstantDescriptor,
    /// Digits matched by the series derived from the generating function.
    pub derived_digits: f64,
    /// Digits matched by the formula as printed.
    pub printed_digits: f64,
    /// Whether the two partial sums are identical rationals.
    pub identical: bool,
}

#[derive(Clone, Debug)]
pub struct LeschinerReport {
    pub terms: u64,
    pub digits: u32,
    pub rows: Vec<LeschinerRow>,
}

impl LeschinerReport {
    /// Whether the printed formula reproduces the target at `order`.
    pub fn printed_agrees(&self, order: usize) -> Option<bool> {
        self.rows
            .iter()
            .find(|r| r.order == order)
            .map(|r| r.printed_digits >= self.digits as f64)
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "alternating zeta coefficient series, {} terms, {} digits required\n",
            self.terms, self.digits
        );
        for r in &self.rows {
            out.push_str(&format!(
                "n={} {}: derived {:.1} digits, printed formula {:.1} digits ({})\n",
                r.order,
                r.target,
                r.derived_digits,
                r.printed_digits,
                if r.printed_digits >= self.digits as f64 {
                    "agrees"
                } else {
                    "disagrees"
                }
            ));
        }
        out
    }
}

/// Compares the derived and printed coefficient series for orders `0..=max_order`.
pub fn leschiner_resolution(max_order: usize, terms: u64, digits: u32) -> Result<LeschinerReport> {
    let rows = (0..=max_order)
        .into_par_iter()
        .map(|n| {
            let target = ConstantDescriptor::Eta(2 * n as u32 + 2);
            let oracle = reference::evaluate(&target, digits + GUARD_DIGITS)?;
            let p = oracle.value.precision();
            let cap = (digits + GUARD_DIGITS) as f64;
            let derived = leschiner_coefficient_series(n, terms);
            let printed = leschiner_printed_series(n, terms);
            let d = matched_digits(&BigFloat::from_rational(&derived, p), &oracle.value, cap);
            let q = matched_digits(&BigFloat::from_rational(&printed, p), &oracle.value, cap);
            Ok(LeschinerRow {
                order: n,
                target,
                derived_digits: d,
                printed_digits: q,
                identical: derived == printed,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LeschinerReport {
        terms,
        digits,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::schemes::{make_harmonic3_finite, make_koecher, make_tauraso};

    #[test]
    fn rational_evaluation() {
        let e = evaluate(&make_koecher(1).unwrap(), Some(2), Backend::Rational).unwrap();
        assert_eq!(e.v, vec![Scalar::from(rat(115, 96))]);
        assert_eq!(e.prefix, Scalar::from(rat(1, 30)));
        let h = evaluate(&make_harmonic3_finite(2).unwrap(), None, Backend::Rational).unwrap();
        assert_eq!(h.v, vec![Scalar::from(rat(9, 8))]);
        assert!(h.estimates.is_none());
        assert!(evaluate(&make_harmonic3_finite(2).unwrap(), Some(3), Backend::Rational).is_err());
        assert!(evaluate(&make_koecher(1).unwrap(), None, Backend::Rational).is_err());
    }

    #[test]
    fn segmented_matches_streamed() {
        let s = make_koecher(3).unwrap();
        let dense = evaluate_segmented(&s, 40, 3).unwrap();
        let e = evaluate(&s, Some(40), Backend::Rational).unwrap();
        let top_first: Vec<Scalar> = e.v.iter().rev().cloned().collect();
        assert_eq!(dense.u(), &top_first[..]);
        assert_eq!(dense.a_rows(), e.a_block);
    }

    #[test]
    fn verify_small() {
        let out = verify(&make_koecher(1).unwrap(), 20).unwrap();
        assert!(out.passed, "{out:?}");
        assert!(out.terms < 60);
        let out = verify(&make_tauraso(rat(0, 1), rat(1, 2)).unwrap(), 30).unwrap();
        assert!(out.passed);
        assert_eq!(out.terms, 1);
        let out = verify(&make_harmonic3_finite(5).unwrap(), 30).unwrap();
        assert!(out.passed);
    }

    #[test]
    fn slope_of_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        assert!((slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rate_window_validation() {
        let s = make_koecher(1).unwrap();
        assert!(rate(&s, 5, 100).is_err());
        assert!(rate(&s, 100, 50).is_err());
        assert!(rate(&make_tauraso(rat(0, 1), rat(1, 2)).unwrap(), 10, 20).is_err());
    }
}
