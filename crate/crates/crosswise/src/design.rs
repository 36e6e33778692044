//! Known design constants of a crosswise study.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The design constants of a crosswise study: the non-sensitive prevalences
/// of the crosswise question (`p`) and the anchor question (`p_prime`), the
/// probability `kappa` that an inattentive respondent picks "both or
/// neither", and the known prevalence `pi_prime` of the anchor's sensitive
/// statement.
///
/// `kappa` defaults to 0.5 (achievable by randomizing answer order) and
/// `pi_prime` to 0 (a zero-prevalence anchor item).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignParams {
    pub p: f64,
    pub p_prime: f64,
    pub kappa: f64,
    pub pi_prime: f64,
}

impl DesignParams {
    /// Build a design with `kappa = 0.5` and `pi_prime = 0`.
    pub fn new(p: f64, p_prime: f64) -> Result<Self> {
        let d = DesignParams { p, p_prime, kappa: 0.5, pi_prime: 0.0 };
        d.validate()?;
        Ok(d)
    }

    pub fn with_kappa(mut self, kappa: f64) -> Result<Self> {
        self.kappa = kappa;
        self.validate()?;
        Ok(self)
    }

    pub fn with_pi_prime(mut self, pi_prime: f64) -> Result<Self> {
        self.pi_prime = pi_prime;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_design_probability(self.p, "p")?;
        check_design_probability(self.p_prime, "p_prime")?;
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::invalid(format!(
                "kappa must lie in [0, 1], got {}",
                self.kappa
            )));
        }
        if !(0.0..0.5).contains(&self.pi_prime) {
            return Err(Error::invalid(format!(
                "pi_prime must lie in [0, 0.5), got {}",
                self.pi_prime
            )));
        }
        Ok(())
    }
}

/// Check that a design constant is a probability in (0, 1) other than 0.5.
pub(crate) fn check_design_probability(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 || x >= 1.0 {
        return Err(Error::invalid(format!(
            "{name} must lie strictly between 0 and 1, got {x}"
        )));
    }
    if x == 0.5 {
        return Err(Error::UnidentifiedDesign);
    }
    Ok(())
}

/// Check that a value is a proportion in [0, 1].
pub(crate) fn check_proportion(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!(
            "{name} must lie in [0, 1], got {x}"
        )));
    }
    Ok(())
}
