//! Temperature and width sweeps of the quantum threshold, the inverted phase
//! boundary T_C(J), and the two-rotor washboard barrier.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{classical_jc_extended, noiseless_jc};
use crate::distribution::FrequencyDistribution;
use crate::error::{Error, Result};
use crate::numerics::try_find_root_bracketed;
use crate::params::PhysicalParams;
use crate::quantum::{Prefactor, QuantumModel};

/// Relative tolerance of the phase-boundary root search.
const TC_REL_TOL: f64 = 1e-7;

/// Tabulated sweep output plus the configuration that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult<P> {
    pub axis: String,
    pub points: Vec<P>,
    pub params: PhysicalParams,
    pub distribution: String,
    pub prefactor: Prefactor,
    /// Non-fatal findings, such as a non-monotone threshold curve.
    pub warnings: Vec<String>,
}

impl<P: Serialize> SweepResult<P> {
    /// Header plus one row per point, `.` decimal separator and `,` delimiter.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(p)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperaturePoint {
    pub temp: f64,
    pub jc: f64,
    pub jc_classical_ext: f64,
    pub ratio: f64,
    /// k_BT / J_C.
    pub inv_jc_temp_units: f64,
    /// ħγ / J_C.
    pub inv_jc: f64,
    pub jc_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaPoint {
    pub temp: f64,
    pub sigma: f64,
    pub jc: f64,
}

/// Noiseless classical threshold for one Gaussian width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiselessPoint {
    pub sigma: f64,
    pub jc_noiseless: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryStatus {
    Ok,
    NoTransition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    #[serde(rename = "J")]
    pub coupling: f64,
    pub temp_c: Option<f64>,
    pub status: BoundaryStatus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalTemperature {
    Transition {
        temp: f64,
        /// The threshold curve was not monotone on the scan grid.
        flagged: bool,
    },
    NoTransition,
}

impl CriticalTemperature {
    pub fn temp(&self) -> Option<f64> {
        match self {
            Self::Transition { temp, .. } => Some(*temp),
            Self::NoTransition => None,
        }
    }
}

fn check_ascending(name: &str, grid: &[f64], min: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !(v.is_finite() && *v >= min)) {
        return Err(Error::invalid(format!("{name} grid values must be finite and >= {min}")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("{name} grid must be strictly ascending")));
    }
    Ok(())
}

fn classical_reference(dist: &FrequencyDistribution, temp: f64) -> Result<f64> {
    if temp == 0.0 {
        noiseless_jc(dist)
    } else {
        classical_jc_extended(dist, temp)
    }
}

/// Quantum threshold and its classical comparison along a temperature grid.
pub fn sweep_temperature(
    model: &QuantumModel,
    dist: &FrequencyDistribution,
    temps: &[f64],
    prefactor: Prefactor,
) -> Result<SweepResult<TemperaturePoint>> {
    check_ascending("temperature", temps, 0.0)?;
    let points = temps
        .par_iter()
        .map(|&temp| {
            let m = model.at_temp(temp);
            let den = m.jc_denominator(dist)?;
            let jc = prefactor.value(m.params.mu)? / den.value;
            let jc_classical_ext = classical_reference(dist, temp)?;
            Ok(TemperaturePoint {
                temp,
                jc,
                jc_classical_ext,
                ratio: jc / jc_classical_ext,
                inv_jc_temp_units: temp / jc,
                inv_jc: 1.0 / jc,
                jc_error: jc * den.abs_error / den.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    if points.windows(2).any(|w| w[1].jc < w[0].jc) {
        warnings.push("quantum threshold is not monotone in temperature on this grid".to_string());
    }
    Ok(SweepResult {
        axis: "temp".into(),
        points,
        params: model.params,
        distribution: dist.describe(),
        prefactor,
        warnings,
    })
}

/// Threshold family over Gaussian widths; one action table per temperature.
pub fn sweep_sigma(
    model: &QuantumModel,
    sigmas: &[f64],
    temps: &[f64],
    prefactor: Prefactor,
) -> Result<(SweepResult<SigmaPoint>, Vec<NoiselessPoint>)> {
    check_ascending("sigma", sigmas, f64::MIN_POSITIVE)?;
    check_ascending("temperature", temps, 0.0)?;
    let dists = sigmas
        .iter()
        .map(|&s| FrequencyDistribution::gaussian(s))
        .collect::<Result<Vec<_>>>()?;
    let per_temp = temps
        .par_iter()
        .map(|&temp| {
            let m = model.at_temp(temp);
            // The narrowest width has the slowest decay and sets the table range.
            let horizon = m.denominator_horizon(&dists[0])?;
            let table = m.action_table(horizon)?;
            dists
                .iter()
                .map(|d| m.quantum_jc_with(d, prefactor, &table))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut points = Vec::with_capacity(sigmas.len() * temps.len());
    for (k, &sigma) in sigmas.iter().enumerate() {
        for (i, &temp) in temps.iter().enumerate() {
            points.push(SigmaPoint {
                temp,
                sigma,
                jc: per_temp[i][k],
            });
        }
    }
    let noiseless = dists
        .iter()
        .zip(sigmas)
        .map(|(d, &sigma)| {
            Ok(NoiselessPoint {
                sigma,
                jc_noiseless: noiseless_jc(d)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    for (i, row) in per_temp.iter().enumerate() {
        if row.windows(2).any(|w| w[1] <= w[0]) {
            warnings.push(format!("threshold is not increasing in sigma at temp = {}", temps[i]));
        }
    }
    let result = SweepResult {
        axis: "sigma,temp".into(),
        points,
        params: model.params,
        distribution: "gaussian(sigma)".into(),
        prefactor,
        warnings,
    };
    Ok((result, noiseless))
}

/// Temperature below which coupling `coupling` synchronizes.
///
/// Brackets on `[0, coupling]` after checking the threshold curve for
/// monotonicity on a coarse grid; a non-monotone curve falls back to the first
/// sign change of the scan and flags the result.
pub fn critical_temperature(
    coupling: f64,
    model: &QuantumModel,
    dist: &FrequencyDistribution,
    prefactor: Prefactor,
) -> Result<CriticalTemperature> {
    let jc0 = model.at_temp(0.0).quantum_jc(dist, prefactor)?;
    critical_temperature_from(coupling, jc0, model, dist, prefactor)
}

fn critical_temperature_from(
    coupling: f64,
    jc0: f64,
    model: &QuantumModel,
    dist: &FrequencyDistribution,
    prefactor: Prefactor,
) -> Result<CriticalTemperature> {
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::invalid(format!("coupling must be positive, got {coupling}")));
    }
    if coupling < jc0 {
        return Ok(CriticalTemperature::NoTransition);
    }
    if coupling == jc0 {
        return Ok(CriticalTemperature::Transition { temp: 0.0, flagged: false });
    }
    let jc_at = |temp: f64| model.at_temp(temp).quantum_jc(dist, prefactor);
    let scan: Vec<f64> = std::iter::once(0.0)
        .chain((0..8).rev().map(|k| coupling / 4f64.powi(k)))
        .collect();
    let values = scan[1..]
        .par_iter()
        .map(|&t| jc_at(t))
        .collect::<Result<Vec<f64>>>()?;
    let values: Vec<f64> = std::iter::once(jc0).chain(values).collect();
    let flagged = values.windows(2).any(|w| w[1] < w[0]);
    let Some(k) = values.iter().position(|&v| v > coupling) else {
        return Err(Error::NonConvergence {
            context: "threshold never exceeded the coupling on [0, J]",
            estimate: values[values.len() - 1],
            error: coupling,
        });
    };
    let (lo, hi) = (scan[k - 1], scan[k]);
    let tol = TC_REL_TOL * coupling;
    let temp = try_find_root_bracketed(|t| Ok(jc_at(t)? - coupling), lo, hi, tol)?;
    Ok(CriticalTemperature::Transition { temp, flagged })
}

/// `T_C(J)` along a coupling grid; rows below the zero-temperature threshold
/// are marked `no_transition`.
pub fn phase_diagram(
    model: &QuantumModel,
    dist: &FrequencyDistribution,
    couplings: &[f64],
    prefactor: Prefactor,
) -> Result<SweepResult<BoundaryPoint>> {
    check_ascending("coupling", couplings, f64::MIN_POSITIVE)?;
    let jc0 = model.at_temp(0.0).quantum_jc(dist, prefactor)?;
    let outcomes = couplings
        .par_iter()
        .map(|&j| critical_temperature_from(j, jc0, model, dist, prefactor))
        .collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    let points = couplings
        .iter()
        .zip(outcomes)
        .map(|(&coupling, outcome)| match outcome {
            CriticalTemperature::Transition { temp, flagged } => {
                if flagged {
                    warnings.push(format!("threshold curve not monotone while solving J = {coupling}"));
                }
                BoundaryPoint {
                    coupling,
                    temp_c: Some(temp),
                    status: BoundaryStatus::Ok,
                }
            }
            CriticalTemperature::NoTransition => BoundaryPoint {
                coupling,
                temp_c: None,
                status: BoundaryStatus::NoTransition,
            },
        })
        .collect();
    Ok(SweepResult {
        axis: "J".into(),
        points,
        params: model.params,
        distribution: dist.describe(),
        prefactor,
        warnings,
    })
}

/// Barrier between adjacent minima of `−σx − J cos x`.
pub fn washboard_barrier(sigma: f64, coupling: f64) -> Result<f64> {
    if !(sigma >= 0.0 && coupling > 0.0) {
        return Err(Error::invalid(format!(
            "barrier needs sigma >= 0 and coupling > 0, got sigma = {sigma}, coupling = {coupling}"
        )));
    }
    if sigma > coupling {
        return Err(Error::BarrierAbsent { sigma, coupling });
    }
    if sigma == 0.0 {
        return Ok(2.0 * coupling);
    }
    if sigma == coupling {
        return Ok(0.0);
    }
    let x = sigma / coupling;
    Ok(2.0 * coupling * (1.0 - x * x).sqrt() + 2.0 * sigma * x.asin() - PI * sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrier_endpoints_and_midpoint() {
        assert_eq!(washboard_barrier(0.0, 3.0).unwrap(), 6.0);
        assert_eq!(washboard_barrier(3.0, 3.0).unwrap(), 0.0);
        let mid = washboard_barrier(1.0, 2.0).unwrap();
        let oracle = 2.0 * (3f64.sqrt() + PI / 6.0 - PI / 2.0);
        assert!((mid - oracle).abs() < 1e-14);
        assert!(matches!(washboard_barrier(2.5, 2.0), Err(Error::BarrierAbsent { .. })));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = SweepResult {
            axis: "J".into(),
            points: vec![
                BoundaryPoint {
                    coupling: 1.0,
                    temp_c: None,
                    status: BoundaryStatus::NoTransition,
                },
                BoundaryPoint {
                    coupling: 10.0,
                    temp_c: Some(2.5),
                    status: BoundaryStatus::Ok,
                },
            ],
            params: PhysicalParams::new(7.0, 0.0).unwrap(),
            distribution: "x".into(),
            prefactor: Prefactor::AsPrinted,
            warnings: vec![],
        };
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "J,temp_c,status\n1.0,,no_transition\n10.0,2.5,ok\n");
    }

    #[test]
    fn grids_are_validated() {
        let m = QuantumModel::new(PhysicalParams::new(7.0, 0.0).unwrap());
        let d = FrequencyDistribution::gaussian(2.0).unwrap();
        assert!(sweep_temperature(&m, &d, &[1.0, 0.5], Prefactor::AsPrinted).is_err());
        assert!(sweep_temperature(&m, &d, &[-1.0], Prefactor::AsPrinted).is_err());
        assert!(critical_temperature(-1.0, &m, &d, Prefactor::AsPrinted).is_err());
    }
}
