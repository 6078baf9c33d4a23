use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless physical configuration in units with ħ = γ = 1.
///
/// `mu` is the overdamped ratio mγ/ħ, `temp` is k_BT/(ħγ) and `cutoff` is the
/// bath cutoff frequency over γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub mu: f64,
    pub temp: f64,
    pub cutoff: f64,
}

impl PhysicalParams {
    /// Parameters with the default cutoff `50 * max(1, mu)`.
    pub fn new(mu: f64, temp: f64) -> Result<Self> {
        Self::with_cutoff(mu, temp, default_cutoff(mu))
    }

    pub fn with_cutoff(mu: f64, temp: f64, cutoff: f64) -> Result<Self> {
        let p = Self { mu, temp, cutoff };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::invalid(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.temp >= 0.0 && self.temp.is_finite()) {
            return Err(Error::invalid(format!("temp must be >= 0, got {}", self.temp)));
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(Error::invalid(format!("cutoff must be positive, got {}", self.cutoff)));
        }
        Ok(())
    }

    /// Soft validity limits of the overdamped analysis.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.mu < 2.0 {
            out.push(format!(
                "mu = {} is outside the overdamped regime (mu >> 1); results are indicative only",
                self.mu
            ));
        }
        if self.cutoff < 10.0 {
            out.push(format!("cutoff = {} is not large compared to the damping rate", self.cutoff));
        }
        if self.temp > 0.1 * self.cutoff {
            out.push(format!(
                "temp = {} is not small compared to the cutoff {}; the bath spectrum is truncated",
                self.temp, self.cutoff
            ));
        }
        out
    }

    /// Classical noise strength D = mγk_BT.
    pub fn noise(&self) -> f64 {
        self.mu * self.temp
    }

    pub fn at_temp(&self, temp: f64) -> Self {
        Self { temp, ..*self }
    }

    pub fn scaled_cutoff(&self, factor: f64) -> Self {
        Self {
            cutoff: self.cutoff * factor,
            ..*self
        }
    }
}

pub fn default_cutoff(mu: f64) -> f64 {
    50.0 * mu.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_noise_and_default_cutoff() {
        let p = PhysicalParams::new(7.0, 3.0).unwrap();
        assert_eq!(p.noise(), 21.0);
        assert_eq!(p.cutoff, 350.0);
        assert_eq!(PhysicalParams::new(0.5, 0.0).unwrap().cutoff, 50.0);
    }

    #[test]
    fn validation() {
        assert!(PhysicalParams::new(0.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0).is_err());
        assert!(PhysicalParams::with_cutoff(1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(7.0, 0.0).unwrap().warnings().is_empty());
        assert_eq!(PhysicalParams::new(0.5, 0.0).unwrap().warnings().len(), 1);
        assert_eq!(PhysicalParams::with_cutoff(7.0, 0.0, 5.0).unwrap().warnings().len(), 1);
        assert_eq!(PhysicalParams::new(7.0, 100.0).unwrap().warnings().len(), 1);
    }
}
