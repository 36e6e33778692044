//! Error type shared across the crate.

/// Errors produced by estimators, inference routines, and simulators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input contained no respondent records.
    #[error("no respondents")]
    NoRespondents,

    /// The design constant `p` (or `p'`) equals 0.5, so the crosswise
    /// identity cannot be inverted.
    #[error("unidentified design: p must differ from 0.5")]
    UnidentifiedDesign,

    /// The anchor question carries almost no signal about attentiveness;
    /// the estimated attentive share is at or below the numerical floor.
    #[error("attentiveness signal too weak: estimated attentive share {gamma_hat} <= {floor}")]
    WeakAttentiveness { gamma_hat: f64, floor: f64 },

    /// A bias term with `gamma = 0` was requested; the limit is undefined.
    #[error("division by zero in bias term: gamma must be positive")]
    ZeroGamma,

    /// Every respondent reported answering at random.
    #[error("all respondents inattentive")]
    AllInattentive,

    /// Bias correction was requested but no record carries an anchor answer.
    #[error("no anchor answers present; the bias correction requires them")]
    MissingAnchor,

    /// An estimator needing self-reported randomness flags found records
    /// without them.
    #[error("record {index} lacks a reported_random flag")]
    MissingReportedRandom { index: usize },

    /// A weighted estimator found a weight that is zero or negative.
    #[error("nonpositive weight at record {index}")]
    NonPositiveWeight { index: usize },

    /// The covariate matrix (with intercept) is not full rank.
    #[error("rank-deficient design matrix")]
    RankDeficientDesign,

    /// A prediction was requested from a fit that did not converge.
    #[error("model fit did not converge; refusing to simulate from it")]
    NotConverged,

    /// The oversampling predicate matched no record in the population.
    #[error("oversample group absent from population")]
    GroupAbsent,

    /// Parameter validation failed; the message names the offending value.
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
