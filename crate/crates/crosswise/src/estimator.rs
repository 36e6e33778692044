//! Closed-form point estimators for crosswise-model data.
//!
//! The crosswise identity ties the population share `lambda` of "both or
//! neither is true" answers to the sensitive prevalence `pi` through the
//! known non-sensitive prevalence `p`. With inattentive respondents the
//! identity generalizes to
//!
//! ```text
//! lambda = { pi p + (1 - pi)(1 - p) } gamma + kappa (1 - gamma)
//! ```
//!
//! where `gamma` is the attentive share and `kappa` the probability that an
//! inattentive respondent picks "both or neither". The estimators below
//! invert the identity naively, estimate the attentive share from an anchor
//! question, subtract the induced bias, and implement the two self-report
//! based corrections used for comparison.

use crate::design::{check_design_probability, check_proportion, DesignParams};
use crate::error::{Error, Result};
use crate::records::{clamp_unit, Method, ObservedProportions, PrevalenceEstimate, RespondentRecord};

/// Attentive shares at or below this floor are treated as "no signal": the
/// bias term scales with `1 / gamma_hat` and becomes numerically explosive.
pub const EPSILON_GAMMA: f64 = 1e-6;

/// The attentive share estimated from an anchor question, before and after
/// restriction to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttentivenessEstimate {
    /// `raw` truncated into [0, 1].
    pub gamma_hat: f64,
    /// The unrestricted value `(lambda' - 1/2) / (1/2 - p')`.
    pub raw: f64,
    /// Whether truncation occurred (sampling noise can push the raw value
    /// below 0 or above 1).
    pub clamped: bool,
}

pub(crate) fn naive_raw(lambda_hat: f64, p: f64) -> f64 {
    (lambda_hat + p - 1.0) / (2.0 * p - 1.0)
}

/// The conventional crosswise estimator `(lambda_hat + p - 1) / (2p - 1)`,
/// truncated to [0, 1]. Unbiased only when every respondent is attentive.
pub fn naive_estimate(lambda_hat: f64, p: f64) -> Result<PrevalenceEstimate> {
    check_design_probability(p, "p")?;
    check_proportion(lambda_hat, "lambda_hat")?;
    Ok(PrevalenceEstimate::from_raw(naive_raw(lambda_hat, p), Method::Naive))
}

/// Estimate the attentive share from the anchor question:
/// `(lambda_prime_hat - 1/2) / (1/2 - p_prime)`.
///
/// Derived under `kappa = 0.5` and a zero-prevalence anchor item.
pub fn attentiveness_estimate(lambda_prime_hat: f64, p_prime: f64) -> Result<AttentivenessEstimate> {
    check_design_probability(p_prime, "p_prime")?;
    check_proportion(lambda_prime_hat, "lambda_prime_hat")?;
    let raw = (lambda_prime_hat - 0.5) / (0.5 - p_prime);
    let (gamma_hat, clamped) = clamp_unit(raw);
    Ok(AttentivenessEstimate { gamma_hat, raw, clamped })
}

/// The estimated bias of the naive estimator at a given attentive share:
/// `(1/2 - 1/(2 gamma_hat)) (lambda_hat - 1/2) / (p - 1/2)`.
pub fn bias_estimate(lambda_hat: f64, p: f64, gamma_hat: f64) -> Result<f64> {
    check_design_probability(p, "p")?;
    check_proportion(lambda_hat, "lambda_hat")?;
    if gamma_hat == 0.0 {
        return Err(Error::ZeroGamma);
    }
    if !(0.0..=1.0).contains(&gamma_hat) {
        return Err(Error::invalid(format!(
            "gamma_hat must lie in (0, 1], got {gamma_hat}"
        )));
    }
    Ok((0.5 - 1.0 / (2.0 * gamma_hat)) * ((lambda_hat - 0.5) / (p - 0.5)))
}

/// The population-level bias of the naive estimator,
/// `(1/2 - 1/(2 gamma)) (lambda - kappa) / (p - 1/2)`.
///
/// Positive whenever `gamma < 1`, `p < 0.5`, and `lambda > kappa`.
pub fn theoretical_bias(lambda: f64, kappa: f64, p: f64, gamma: f64) -> Result<f64> {
    check_design_probability(p, "p")?;
    check_proportion(lambda, "lambda")?;
    check_proportion(kappa, "kappa")?;
    if gamma == 0.0 {
        return Err(Error::ZeroGamma);
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::invalid(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    Ok((0.5 - 1.0 / (2.0 * gamma)) * ((lambda - kappa) / (p - 0.5)))
}

/// The anchor-corrected crosswise estimator: the naive estimate minus the
/// estimated inattention bias, truncated to [0, 1] after the subtraction.
///
/// Requires anchor answers, `kappa = 0.5`, and `pi_prime = 0`; other values
/// are rejected here (the sensitivity module handles assumed deviations).
/// An attentive-share estimate above 1 is truncated to 1; one at or below
/// [`EPSILON_GAMMA`] is an error because the correction divides by it.
pub fn bias_corrected_estimate(
    obs: &ObservedProportions,
    design: &DesignParams,
) -> Result<PrevalenceEstimate> {
    design.validate()?;
    if design.kappa != 0.5 {
        return Err(Error::invalid(format!(
            "bias correction is derived under kappa = 0.5; got {} (use the sensitivity \
             analysis for other values)",
            design.kappa
        )));
    }
    if design.pi_prime != 0.0 {
        return Err(Error::invalid(format!(
            "bias correction supports only zero-prevalence anchors; got pi_prime = {}",
            design.pi_prime
        )));
    }
    let lambda_prime_hat = obs.lambda_prime_hat.ok_or(Error::MissingAnchor)?;
    check_proportion(obs.lambda_hat, "lambda_hat")?;

    let att = attentiveness_estimate(lambda_prime_hat, design.p_prime)?;
    if att.raw <= EPSILON_GAMMA {
        return Err(Error::WeakAttentiveness { gamma_hat: att.raw, floor: EPSILON_GAMMA });
    }
    // Overshoot above 1 is sampling noise; the share is a proportion.
    let gamma_hat = att.gamma_hat;
    let bias_hat = bias_estimate(obs.lambda_hat, design.p, gamma_hat)?;
    let raw = naive_raw(obs.lambda_hat, design.p) - bias_hat;
    let (point, point_clamped) = clamp_unit(raw);
    Ok(PrevalenceEstimate {
        point,
        point_raw: raw,
        method: Method::BiasCorrected,
        gamma_hat: Some(gamma_hat),
        bias_hat: Some(bias_hat),
        clamped: point_clamped || att.clamped,
    })
}

/// The Enzmann-Schnapp correction `(pi_cm - r/2) / (1 - r)`, where `r` is
/// the share of respondents reporting random answers. `pi_cm` should be the
/// untruncated naive estimate; the result is truncated to [0, 1].
pub fn es_estimate(pi_cm: f64, r: f64) -> Result<PrevalenceEstimate> {
    if !r.is_finite() || !(0.0..=1.0).contains(&r) {
        return Err(Error::invalid(format!("r must lie in [0, 1), got {r}")));
    }
    if r == 1.0 {
        return Err(Error::AllInattentive);
    }
    if !pi_cm.is_finite() {
        return Err(Error::invalid(format!("pi_cm must be finite, got {pi_cm}")));
    }
    let raw = (pi_cm - 0.5 * r) / (1.0 - r);
    Ok(PrevalenceEstimate::from_raw(raw, Method::Es))
}

/// The CMR-I correction: answers of respondents who report having answered
/// randomly are replaced by 0.5 before applying the naive formula.
pub fn cmri_estimate(records: &[RespondentRecord], p: f64) -> Result<PrevalenceEstimate> {
    check_design_probability(p, "p")?;
    if records.is_empty() {
        return Err(Error::NoRespondents);
    }
    let mut adjusted_sum = 0.0;
    for (index, rec) in records.iter().enumerate() {
        match rec.reported_random {
            Some(true) => adjusted_sum += 0.5,
            Some(false) => adjusted_sum += if rec.y { 1.0 } else { 0.0 },
            None => return Err(Error::MissingReportedRandom { index }),
        }
    }
    let lambda_adjusted = adjusted_sum / records.len() as f64;
    Ok(PrevalenceEstimate::from_raw(naive_raw(lambda_adjusted, p), Method::Cmri))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn naive_worked_example() {
        let est = naive_estimate(0.65, 0.25).unwrap();
        // binary64 arithmetic lands within 2 ulp of the exact 0.2
        assert_abs_diff_eq!(est.point, 0.2, epsilon = 1e-15);
        assert!(!est.clamped);
        assert_eq!(est.method, Method::Naive);
    }

    #[test]
    fn naive_boundary_identities() {
        for p in [0.1, 0.25, 0.4, 0.7] {
            assert_eq!(naive_estimate(1.0 - p, p).unwrap().point, 0.0);
            assert_eq!(naive_estimate(p, p).unwrap().point, 1.0);
        }
    }

    #[test]
    fn naive_rejects_unidentified_design() {
        assert_eq!(naive_estimate(0.6, 0.5), Err(Error::UnidentifiedDesign));
    }

    #[test]
    fn naive_clamps_and_flags() {
        // lambda below 1 - p at p < 0.5 implies a negative raw estimate
        let est = naive_estimate(0.8, 0.25).unwrap();
        assert!(est.point_raw < 0.0);
        assert_eq!(est.point, 0.0);
        assert!(est.clamped);
    }

    #[test]
    fn attentiveness_examples() {
        let full = attentiveness_estimate(0.9, 0.1).unwrap();
        assert_eq!(full.gamma_hat, 1.0);
        assert!(!full.clamped);

        let noise = attentiveness_estimate(0.5, 0.1).unwrap();
        assert_eq!(noise.gamma_hat, 0.0);

        let partial = attentiveness_estimate(0.82, 0.1).unwrap();
        assert_abs_diff_eq!(partial.gamma_hat, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn attentiveness_overshoot_clamps_with_flag() {
        let est = attentiveness_estimate(0.95, 0.1).unwrap();
        assert_eq!(est.gamma_hat, 1.0);
        assert!(est.clamped);
        assert!(est.raw > 1.0);
    }

    #[test]
    fn bias_examples() {
        assert_eq!(bias_estimate(0.6, 0.25, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(bias_estimate(0.6, 0.25, 0.8).unwrap(), 0.05, epsilon = 1e-12);
        assert_eq!(bias_estimate(0.5, 0.25, 0.8).unwrap(), 0.0);
        assert_eq!(bias_estimate(0.6, 0.25, 0.0), Err(Error::ZeroGamma));
    }

    #[test]
    fn bias_matches_theoretical_at_kappa_half() {
        // lambda = 0.6 is exactly what pi = 0.25, gamma = 0.8, kappa = 0.5,
        // p = 0.25 generate, so the two routes must agree.
        let lambda = (0.25f64 * 0.25 + 0.75 * 0.75) * 0.8 + 0.5 * 0.2;
        assert_abs_diff_eq!(lambda, 0.6, epsilon = 1e-15);
        let a = bias_estimate(0.6, 0.25, 0.8).unwrap();
        let b = theoretical_bias(0.6, 0.5, 0.25, 0.8).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-15);
    }

    #[test]
    fn theoretical_bias_edges() {
        assert_eq!(theoretical_bias(0.6, 0.5, 0.25, 1.0).unwrap(), 0.0);
        assert_eq!(theoretical_bias(0.5, 0.5, 0.25, 0.8).unwrap(), 0.0);
        assert_eq!(theoretical_bias(0.6, 0.5, 0.25, 0.0), Err(Error::ZeroGamma));
    }

    #[test]
    fn bias_corrected_worked_example() {
        let obs = ObservedProportions::from_proportions(0.6, Some(0.82), 2000).unwrap();
        let design = DesignParams::new(0.25, 0.1).unwrap();
        let est = bias_corrected_estimate(&obs, &design).unwrap();
        assert_abs_diff_eq!(est.point, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(est.gamma_hat.unwrap(), 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(est.bias_hat.unwrap(), 0.05, epsilon = 1e-12);
        assert_eq!(est.method, Method::BiasCorrected);
    }

    #[test]
    fn bias_corrected_equals_naive_at_full_attention() {
        let design = DesignParams::new(0.25, 0.1).unwrap();
        let obs = ObservedProportions::from_proportions(0.6, Some(1.0 - design.p_prime), 100).unwrap();
        let est = bias_corrected_estimate(&obs, &design).unwrap();
        let naive = naive_estimate(0.6, 0.25).unwrap();
        assert_abs_diff_eq!(est.point, naive.point, epsilon = 1e-15);
    }

    #[test]
    fn bias_corrected_equals_naive_at_lambda_half() {
        let design = DesignParams::new(0.25, 0.1).unwrap();
        for lambda_prime in [0.7, 0.8, 0.9] {
            let obs = ObservedProportions::from_proportions(0.5, Some(lambda_prime), 100).unwrap();
            let est = bias_corrected_estimate(&obs, &design).unwrap();
            let naive = naive_estimate(0.5, 0.25).unwrap();
            assert_abs_diff_eq!(est.point, naive.point, epsilon = 1e-15);
        }
    }

    #[test]
    fn bias_corrected_requires_anchor() {
        let obs = ObservedProportions::from_proportions(0.6, None, 100).unwrap();
        let design = DesignParams::new(0.25, 0.1).unwrap();
        assert_eq!(bias_corrected_estimate(&obs, &design), Err(Error::MissingAnchor));
    }

    #[test]
    fn bias_corrected_rejects_weak_signal() {
        let design = DesignParams::new(0.25, 0.1).unwrap();
        let obs = ObservedProportions::from_proportions(0.6, Some(0.5), 100).unwrap();
        assert!(matches!(
            bias_corrected_estimate(&obs, &design),
            Err(Error::WeakAttentiveness { .. })
        ));
    }

    #[test]
    fn bias_corrected_rejects_nonstandard_kappa_and_anchor_prevalence() {
        let obs = ObservedProportions::from_proportions(0.6, Some(0.82), 100).unwrap();
        let d1 = DesignParams::new(0.25, 0.1).unwrap().with_kappa(0.6).unwrap();
        assert!(matches!(bias_corrected_estimate(&obs, &d1), Err(Error::Invalid(_))));
        let d2 = DesignParams::new(0.25, 0.1).unwrap().with_pi_prime(0.1).unwrap();
        assert!(matches!(bias_corrected_estimate(&obs, &d2), Err(Error::Invalid(_))));
    }

    #[test]
    fn es_examples() {
        let est = es_estimate(0.3, 0.2).unwrap();
        assert_abs_diff_eq!(est.point, 0.25, epsilon = 1e-12);
        assert_eq!(es_estimate(0.37, 0.0).unwrap().point, 0.37);
        for r in [0.1, 0.5, 0.9] {
            assert_abs_diff_eq!(es_estimate(0.5, r).unwrap().point, 0.5, epsilon = 1e-12);
        }
        assert_eq!(es_estimate(0.3, 1.0), Err(Error::AllInattentive));
    }

    #[test]
    fn cmri_examples() {
        let recs: Vec<_> = [(true, false), (true, false), (false, true), (false, true)]
            .iter()
            .map(|&(y, rr)| RespondentRecord::new(y).with_reported_random(rr))
            .collect();
        let est = cmri_estimate(&recs, 0.25).unwrap();
        // adjusted lambda = (1 + 1 + 0.5 + 0.5) / 4 = 0.75, raw = 0 exactly
        assert_eq!(est.point, 0.0);

        // nobody random: identical to the naive estimate
        let honest: Vec<_> = [true, true, false, true]
            .iter()
            .map(|&y| RespondentRecord::new(y).with_reported_random(false))
            .collect();
        let cmri = cmri_estimate(&honest, 0.25).unwrap();
        let naive = naive_estimate(0.75, 0.25).unwrap();
        assert_eq!(cmri.point, naive.point);

        // everyone random: fixed point at 0.5
        let all_random: Vec<_> = [true, false]
            .iter()
            .map(|&y| RespondentRecord::new(y).with_reported_random(true))
            .collect();
        assert_eq!(cmri_estimate(&all_random, 0.25).unwrap().point, 0.5);
    }

    #[test]
    fn cmri_requires_flags() {
        let recs = vec![RespondentRecord::new(true)];
        assert_eq!(
            cmri_estimate(&recs, 0.25),
            Err(Error::MissingReportedRandom { index: 0 })
        );
    }
}
