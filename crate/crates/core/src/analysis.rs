//! Convergence-rate estimates, acceleration ratios and error tables.
//!
//! A sequence with limit `S` and remainders `R_n = S_n - S` converges with
//! rate `ρ = lim R_{n+1} / R_n`; it is called linear for `0 < |ρ| < 1`,
//! logarithmic for `ρ = 1` and hyperlinear for `ρ = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sequence::Sequence;
use crate::table::TransformTable;

pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Linear,
    Logarithmic,
    Hyperlinear,
    Divergent,
    Indeterminate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Linear => "LINEAR",
            Classification::Logarithmic => "LOGARITHMIC",
            Classification::Hyperlinear => "HYPERLINEAR",
            Classification::Divergent => "DIVERGENT",
            Classification::Indeterminate => "INDETERMINATE",
        })
    }
}

/// Sign of the rate estimate. Alternating remainders give `ρ < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioSign {
    Positive,
    Negative,
}

impl fmt::Display for RatioSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioSign::Positive => "positive",
            RatioSign::Negative => "negative",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport<T: Scalar> {
    /// `R_{n+1} / R_n` for each consecutive pair that was used, starting at
    /// the first label; `None` where `R_n` is exactly zero.
    pub rho_estimates: Vec<Option<T>>,
    pub classification: Classification,
    /// Sign of the estimate the classification was based on.
    pub sign: Option<RatioSign>,
    /// The estimate the classification was based on.
    pub rho: Option<f64>,
    pub limit_used: Option<T>,
    /// True when `limit_used` is the last element standing in for an
    /// unknown limit.
    pub proxy_limit: bool,
    pub delta: f64,
}

/// Estimates `ρ` from successive remainder ratios and classifies the
/// convergence by the last estimate, compared with tolerance `delta`:
///
/// * `|ρ| ≤ δ`: hyperlinear
/// * `|ρ - 1| ≤ δ`: logarithmic
/// * `|ρ| < 1 - δ`, or `ρ < 0` with `|ρ| < 1 + δ`: linear
/// * `|ρ| ≥ 1 + δ`: divergent
///
/// Negative `ρ` near `-1` counts as linear, with the sign reported
/// separately. Without a known limit the last element is used in its place,
/// the two final ratios (which that choice distorts) are dropped, and the
/// result is indeterminate when the last third of the remaining estimates
/// spreads by more than `delta`.
pub fn estimate_rho<T: Scalar>(
    seq: &Sequence<T>,
    limit: Option<&T>,
    delta: f64,
) -> Result<ConvergenceReport<T>> {
    if seq.len() < 3 {
        return Err(Error::window(format!(
            "rate estimation needs at least 3 elements, got {}",
            seq.len()
        )));
    }
    if !(delta.is_finite() && delta > 0.0 && delta < 1.0) {
        return Err(Error::Spec(format!(
            "tolerance δ must lie in (0, 1), got {delta}"
        )));
    }
    let (s, proxy) = match limit {
        Some(s) => (s.clone(), false),
        None => (seq.values()[seq.len() - 1].clone(), true),
    };
    let remainders: Vec<T> = seq.values().iter().map(|v| v.clone() - s.clone()).collect();
    let mut rho_estimates: Vec<Option<T>> = remainders
        .windows(2)
        .map(|w| (!w[0].is_zero()).then(|| w[1].clone() / w[0].clone()))
        .collect();
    if proxy {
        rho_estimates.truncate(rho_estimates.len() - 2);
    }

    let finite: Vec<f64> = rho_estimates
        .iter()
        .flatten()
        .map(Scalar::to_f64)
        .filter(|r| r.is_finite())
        .collect();
    let mut classification = match finite.last() {
        Some(&rho) => classify(rho, delta),
        None => Classification::Indeterminate,
    };
    if proxy && !finite.is_empty() {
        let tail = &finite[finite.len() - finite.len().div_ceil(3)..];
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > delta {
            classification = Classification::Indeterminate;
        }
    }
    let rho = finite.last().copied();
    let sign = rho.map(|r| {
        if r < 0.0 {
            RatioSign::Negative
        } else {
            RatioSign::Positive
        }
    });
    Ok(ConvergenceReport {
        rho_estimates,
        classification,
        sign,
        rho,
        limit_used: Some(s),
        proxy_limit: proxy,
        delta,
    })
}

fn classify(rho: f64, delta: f64) -> Classification {
    let a = rho.abs();
    if a <= delta {
        Classification::Hyperlinear
    } else if (rho - 1.0).abs() <= delta {
        Classification::Logarithmic
    } else if a < 1.0 - delta || (rho < 0.0 && a < 1.0 + delta) {
        Classification::Linear
    } else if a >= 1.0 + delta {
        Classification::Divergent
    } else {
        // 1 - δ ≤ ρ < 1 + δ is caught above; this leaves nothing
        Classification::Indeterminate
    }
}

/// Ratio of remainders at one label.
#[derive(Debug, Clone, PartialEq)]
pub enum AccelerationRatio<T> {
    Ratio(T),
    /// The original element equals the limit exactly.
    Exact,
}

/// `(S'_n - S) / (S_n - S)` over the labels both sequences share.
pub fn acceleration_ratio<T: Scalar>(
    transformed: &Sequence<T>,
    original: &Sequence<T>,
    limit: &T,
) -> Result<Vec<(i64, AccelerationRatio<T>)>> {
    let from = transformed.start_label().max(original.start_label());
    let to = transformed.end_label().min(original.end_label());
    if from > to {
        return Err(Error::window(format!(
            "label ranges {}..={} and {}..={} do not overlap",
            transformed.start_label(),
            transformed.end_label(),
            original.start_label(),
            original.end_label()
        )));
    }
    (from..=to)
        .map(|n| {
            let r0 = original.get(n)?.clone() - limit.clone();
            let r1 = transformed.get(n)?.clone() - limit.clone();
            let ratio = if r0.is_zero() {
                AccelerationRatio::Exact
            } else {
                AccelerationRatio::Ratio(r1 / r0)
            };
            Ok((n, ratio))
        })
        .collect()
}

/// `|T_k^(n) - S|` cell by cell; breakdown and unavailable markers are kept.
pub fn error_table<T: Scalar>(table: &TransformTable<T>, limit: &T) -> TransformTable<T> {
    table.map(|v| (v.clone() - limit.clone()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbq::{lbq_transform, BreakdownGuard};
    use crate::scalar::{BigFloat, Precision, Rational};
    use crate::seqgen::{generate, Family, GeneratorSpec};
    use crate::table::TransformEntry;
    use num_rational::BigRational;

    fn gen(family: Family, count: usize, start: i64) -> (Sequence<f64>, f64) {
        let g = generate::<f64>(&GeneratorSpec::new(family, count, start), ()).unwrap();
        (g.sequence, g.limit.unwrap())
    }

    #[test]
    fn geometric_half_is_linear() {
        let z = BigRational::new(1.into(), 2.into());
        let (s, lim) = gen(Family::Geometric(z), 20, 0);
        let r = estimate_rho(&s, Some(&lim), DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Linear);
        assert!((r.rho.unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(r.rho_estimates.len(), 19);
        assert_eq!(r.sign, Some(RatioSign::Positive));
    }

    #[test]
    fn zeta2_is_logarithmic() {
        let (s, lim) = gen(Family::Zeta2, 22, 1);
        let r = estimate_rho(&s, Some(&lim), DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Logarithmic);
        let rho: Vec<f64> = r.rho_estimates.iter().map(|x| x.unwrap()).collect();
        assert!(rho.windows(2).all(|w| w[0] < w[1] && w[1] < 1.0));
    }

    #[test]
    fn exp_series_is_hyperlinear() {
        // R_{n+1}/R_n ≈ 1/(n+2) only drops below δ once R_n is under f64 resolution
        let p = Precision::new(256).unwrap();
        let spec = GeneratorSpec::new(
            Family::ExpSeries(BigRational::from_integer(1.into())),
            30,
            0,
        );
        let g = generate::<BigFloat>(&spec, p).unwrap();
        let r = estimate_rho(&g.sequence, g.limit.as_ref(), DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Hyperlinear);
    }

    #[test]
    fn alternating_is_linear_with_negative_sign() {
        let (s, lim) = gen(Family::AltHarmonic, 18, 1);
        let r = estimate_rho(&s, Some(&lim), DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Linear);
        assert_eq!(r.sign, Some(RatioSign::Negative));
    }

    #[test]
    fn growing_remainders_diverge() {
        let s = Sequence::from_fn(0, 8, |n| 2f64.powi(n as i32)).unwrap();
        let r = estimate_rho(&s, Some(&0.0), DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Divergent);
    }

    #[test]
    fn proxy_limit_drops_two_ratios() {
        let z = BigRational::new(1.into(), 3.into());
        let (s, _) = gen(Family::Geometric(z), 30, 0);
        let r = estimate_rho(&s, None, DEFAULT_DELTA).unwrap();
        assert!(r.proxy_limit);
        assert_eq!(r.rho_estimates.len(), 27);
        assert_eq!(r.classification, Classification::Linear);
    }

    #[test]
    fn unstable_tail_is_indeterminate() {
        let s = Sequence::new(0, vec![1.0, 5.0, -3.0, 0.5, 7.0, 2.0, -1.0, 4.0, 3.0]).unwrap();
        let r = estimate_rho(&s, None, DEFAULT_DELTA).unwrap();
        assert_eq!(r.classification, Classification::Indeterminate);
    }

    #[test]
    fn short_input_is_a_window_error() {
        let s = Sequence::new(0, vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            estimate_rho(&s, None, 0.05),
            Err(Error::Window(_))
        ));
        let s = Sequence::new(0, vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(estimate_rho(&s, None, 1.5), Err(Error::Spec(_))));
    }

    #[test]
    fn classify_boundaries() {
        assert_eq!(classify(0.05, 0.05), Classification::Hyperlinear);
        assert_eq!(classify(0.5, 0.05), Classification::Linear);
        assert_eq!(classify(0.96, 0.05), Classification::Logarithmic);
        assert_eq!(classify(-0.97, 0.05), Classification::Linear);
        assert_eq!(classify(-1.2, 0.05), Classification::Divergent);
        assert_eq!(classify(1.04, 0.05), Classification::Logarithmic);
        assert_eq!(classify(1.06, 0.05), Classification::Divergent);
    }

    #[test]
    fn ratio_of_sequence_with_itself_is_one() {
        let s = Sequence::new(
            2,
            vec![
                Rational::new(1, 2),
                Rational::new(3, 4),
                Rational::integer(3),
            ],
        )
        .unwrap();
        let r = acceleration_ratio(&s, &s, &Rational::integer(1)).unwrap();
        assert!(r
            .iter()
            .all(|(_, x)| *x == AccelerationRatio::Ratio(Rational::integer(1))));
        assert_eq!(r[0].0, 2);
    }

    #[test]
    fn ratio_flags_exact_original_and_zero_for_exact_transform() {
        let lim = Rational::integer(1);
        let orig = Sequence::new(0, vec![Rational::integer(2), lim.clone()]).unwrap();
        let t = Sequence::new(0, vec![lim.clone(), lim.clone()]).unwrap();
        let r = acceleration_ratio(&t, &orig, &lim).unwrap();
        assert_eq!(r[0].1, AccelerationRatio::Ratio(Rational::integer(0)));
        assert_eq!(r[1].1, AccelerationRatio::Exact);
        let far = Sequence::new(10, vec![lim.clone()]).unwrap();
        assert!(acceleration_ratio(&far, &orig, &lim).is_err());
    }

    #[test]
    fn first_order_gain_on_archimedes() {
        let (s, pi) = gen(Family::ArchimedesPi, 13, 1);
        let t = lbq_transform(&s, 4, BreakdownGuard::default());
        let r = acceleration_ratio(&t.column_sequence(1).unwrap(), &s, &pi).unwrap();
        let AccelerationRatio::Ratio(first) = r[0].1 else {
            panic!()
        };
        assert!((first - (-0.0230)).abs() < 5e-4, "{first}");
        let errs = error_table(&t, &pi);
        assert!(*errs.get(4, 1).value().unwrap() <= 5e-11);
        assert_eq!(
            errs.get(0, 2),
            TransformEntry::Valid((s.values()[1] - pi).abs())
        );
    }

    #[test]
    fn error_table_keeps_markers() {
        let s = Sequence::new(0, vec![1.0; 4]).unwrap();
        let t = lbq_transform(&s, 1, BreakdownGuard::default());
        let e = error_table(&t, &0.0);
        assert_eq!(e.get(1, 0), TransformEntry::Breakdown);
        assert_eq!(e.get(1, 3), TransformEntry::Unavailable);
    }
}
