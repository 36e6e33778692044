//! Respondent-level data and the shared estimate types.

use serde::{Deserialize, Serialize};

use crate::design::check_proportion;
use crate::error::{Error, Result};

/// One respondent's observed answers.
///
/// `y` is the crosswise answer (true = "both or neither is true"), `a` the
/// anchor answer in the same coding. `weight` is a sampling weight (1 for
/// self-weighting samples). `covariates` are the regression covariates
/// without an intercept column. `reported_random` is the answer to a direct
/// question about having answered randomly, and `v` an outcome value for the
/// predictor regression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RespondentRecord {
    pub y: bool,
    pub a: Option<bool>,
    pub weight: f64,
    pub covariates: Option<Vec<f64>>,
    pub reported_random: Option<bool>,
    pub v: Option<f64>,
}

impl RespondentRecord {
    pub fn new(y: bool) -> Self {
        RespondentRecord {
            y,
            a: None,
            weight: 1.0,
            covariates: None,
            reported_random: None,
            v: None,
        }
    }

    pub fn with_anchor(mut self, a: bool) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_covariates(mut self, covariates: Vec<f64>) -> Self {
        self.covariates = Some(covariates);
        self
    }

    pub fn with_reported_random(mut self, reported_random: bool) -> Self {
        self.reported_random = Some(reported_random);
        self
    }

    pub fn with_outcome(mut self, v: f64) -> Self {
        self.v = Some(v);
        self
    }
}

/// Observed sample proportions of "both or neither is true" answers.
///
/// `lambda_hat` is the crosswise proportion over all records;
/// `lambda_prime_hat` the anchor proportion over the records that carry an
/// anchor answer (absent when none do).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservedProportions {
    pub lambda_hat: f64,
    pub lambda_prime_hat: Option<f64>,
    pub n: usize,
}

impl ObservedProportions {
    /// Count the observed proportions from respondent records.
    pub fn from_records(records: &[RespondentRecord]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::NoRespondents);
        }
        let n = records.len();
        let y_count = records.iter().filter(|r| r.y).count();
        let anchor_n = records.iter().filter(|r| r.a.is_some()).count();
        let lambda_prime_hat = if anchor_n > 0 {
            let a_count = records.iter().filter(|r| r.a == Some(true)).count();
            Some(a_count as f64 / anchor_n as f64)
        } else {
            None
        };
        Ok(ObservedProportions {
            lambda_hat: y_count as f64 / n as f64,
            lambda_prime_hat,
            n,
        })
    }

    /// Build from already-aggregated proportions, e.g. published estimates
    /// or population-level values. No integrality is required here; that
    /// property only holds for proportions counted from records.
    pub fn from_proportions(
        lambda_hat: f64,
        lambda_prime_hat: Option<f64>,
        n: usize,
    ) -> Result<Self> {
        check_proportion(lambda_hat, "lambda_hat")?;
        if let Some(lp) = lambda_prime_hat {
            check_proportion(lp, "lambda_prime_hat")?;
        }
        if n == 0 {
            return Err(Error::NoRespondents);
        }
        Ok(ObservedProportions { lambda_hat, lambda_prime_hat, n })
    }
}

/// Count the observed crosswise and anchor proportions.
pub fn observed_proportions(records: &[RespondentRecord]) -> Result<ObservedProportions> {
    ObservedProportions::from_records(records)
}

/// Which estimator produced a [`PrevalenceEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    BiasCorrected,
    Es,
    Cmri,
    WeightedBc,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::BiasCorrected => "bias_corrected",
            Method::Es => "es",
            Method::Cmri => "cmri",
            Method::WeightedBc => "weighted_bc",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "bc" | "bias_corrected" => Ok(Method::BiasCorrected),
            "es" => Ok(Method::Es),
            "cmri" => Ok(Method::Cmri),
            "weighted_bc" => Ok(Method::WeightedBc),
            other => Err(Error::invalid(format!("unknown estimator '{other}'"))),
        }
    }
}

/// A point estimate of the prevalence of the sensitive attribute.
///
/// `point` is constrained to [0, 1]; `point_raw` keeps the value before the
/// logical constraint so that downstream tools (sensitivity curves, power
/// analysis) can work with the untruncated estimator. `clamped` records
/// whether the constraint fired on `point`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrevalenceEstimate {
    pub point: f64,
    pub point_raw: f64,
    pub method: Method,
    pub gamma_hat: Option<f64>,
    pub bias_hat: Option<f64>,
    pub clamped: bool,
}

impl PrevalenceEstimate {
    pub(crate) fn from_raw(raw: f64, method: Method) -> Self {
        let (point, clamped) = clamp_unit(raw);
        PrevalenceEstimate {
            point,
            point_raw: raw,
            method,
            gamma_hat: None,
            bias_hat: None,
            clamped,
        }
    }
}

/// Constrain a value to [0, 1], reporting whether truncation occurred.
pub fn clamp_unit(x: f64) -> (f64, bool) {
    if x < 0.0 {
        (0.0, true)
    } else if x > 1.0 {
        (1.0, true)
    } else {
        (x, false)
    }
}
