//! Quantum critical coupling from the first-order self-consistency condition.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use super::action::{QuantumModel, SImTable};
use crate::distribution::FrequencyDistribution;
use crate::error::{Error, Result};
use crate::numerics::{decay_horizon, integrate_breakpoints, QuadratureConfig};
use crate::params::PhysicalParams;

/// Largest number of doubling probes when searching for the decay horizon.
/// Probing costs grow linearly with the lag, so this bounds the work.
const MAX_HORIZON_PROBES: usize = 16;

/// Overall factor multiplying the inverse denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefactor {
    /// `2 mu`, the small-angle form.
    #[default]
    AsPrinted,
    /// `1 / sin(1/(2 mu))`, before the small-angle replacement.
    ExactSine,
}

impl Prefactor {
    pub fn value(&self, mu: f64) -> Result<f64> {
        match self {
            Prefactor::AsPrinted => Ok(2.0 * mu),
            Prefactor::ExactSine => {
                let s = (0.5 / mu).sin();
                if !(s > 0.0) {
                    return Err(Error::invalid(format!("exact-sine prefactor undefined at mu = {mu}")));
                }
                Ok(1.0 / s)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Denominator {
    pub value: f64,
    pub abs_error: f64,
    /// Lag where the integrand was truncated.
    pub upper: f64,
}

impl QuantumModel {
    /// Integrand envelope `|φ(u/mu)| e^{−S'_Im(u)}` from exact action values.
    fn envelope(&self, dist: &FrequencyDistribution, u: f64) -> Result<f64> {
        Ok(dist.characteristic_envelope(u / self.params.mu) * (-self.s_im(u)?).exp())
    }

    /// Lag beyond which the denominator integrand is negligible.
    pub fn denominator_horizon(&self, dist: &FrequencyDistribution) -> Result<f64> {
        let cfg = QuadratureConfig {
            probe_budget: self.quad.probe_budget.min(MAX_HORIZON_PROBES),
            ..self.quad
        };
        let failure = RefCell::new(None);
        let horizon = decay_horizon(
            |u| match self.envelope(dist, u) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            0.0,
            &cfg,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        horizon
    }

    /// `∫_0^∞ φ(u/mu) e^{−S'_Im(u)} du`.
    pub fn jc_denominator(&self, dist: &FrequencyDistribution) -> Result<Denominator> {
        self.jc_denominator_with(dist, None)
    }

    /// As [`Self::jc_denominator`], reusing `table` when it was built for this model.
    pub fn jc_denominator_with(&self, dist: &FrequencyDistribution, table: Option<&SImTable>) -> Result<Denominator> {
        let upper = self.denominator_horizon(dist)?;
        let owned;
        let table = match table {
            Some(t) if t.model() == self && t.u_max() >= upper => t,
            _ => {
                owned = self.action_table(upper)?;
                &owned
            }
        };
        let mu = self.params.mu;
        let mut pts: Vec<f64> = table.nodes().iter().copied().filter(|&u| u < upper).step_by(4).collect();
        pts.push(upper);
        let integral = integrate_breakpoints(
            |u| dist.characteristic_function(u / mu) * (-table.eval(u).unwrap_or(f64::NAN)).exp(),
            &pts,
            &self.quad,
        )?;
        if !(integral.value > 0.0) {
            return Err(Error::NonConvergence {
                context: "critical-coupling denominator is not positive",
                estimate: integral.value,
                error: integral.abs_error,
            });
        }
        Ok(Denominator {
            value: integral.value,
            abs_error: integral.abs_error,
            upper,
        })
    }

    pub fn quantum_jc(&self, dist: &FrequencyDistribution, prefactor: Prefactor) -> Result<f64> {
        let den = self.jc_denominator(dist)?;
        Ok(prefactor.value(self.params.mu)? / den.value)
    }

    pub fn quantum_jc_with(&self, dist: &FrequencyDistribution, prefactor: Prefactor, table: &SImTable) -> Result<f64> {
        let den = self.jc_denominator_with(dist, Some(table))?;
        Ok(prefactor.value(self.params.mu)? / den.value)
    }
}

/// Denominator integral with the default saddle profile.
pub fn jc_denominator(params: &PhysicalParams, dist: &FrequencyDistribution, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(QuantumModel::new(*params).with_quadrature(*cfg).jc_denominator(dist)?.value)
}

/// Quantum critical coupling in units of ħγ.
pub fn quantum_jc(
    params: &PhysicalParams,
    dist: &FrequencyDistribution,
    cfg: &QuadratureConfig,
    prefactor: Prefactor,
) -> Result<f64> {
    QuantumModel::new(*params).with_quadrature(*cfg).quantum_jc(dist, prefactor)
}
