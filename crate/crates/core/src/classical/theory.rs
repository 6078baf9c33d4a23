//! Analytic critical couplings of the massless classical model.

use std::f64::consts::PI;

use crate::distribution::FrequencyDistribution;
use crate::error::{Error, Result};
use crate::numerics::{integrate_breakpoints, integrate_semi_infinite, QuadratureConfig};

/// Critical coupling `2 / ∫ g(ω) D / (D² + ω²) dω` of the noisy model.
///
/// `noise = 0` is the noiseless limit and is evaluated in closed form.
pub fn classical_jc(dist: &FrequencyDistribution, noise: f64) -> Result<f64> {
    classical_jc_with(dist, noise, &QuadratureConfig::default())
}

pub fn classical_jc_with(dist: &FrequencyDistribution, noise: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::invalid(format!("noise must be >= 0, got {noise}")));
    }
    if noise == 0.0 {
        return noiseless_jc(dist);
    }
    if let FrequencyDistribution::Lorentzian { delta } = dist {
        return Ok(2.0 * (noise + delta));
    }
    Ok(2.0 / lorentz_overlap(dist, noise, cfg)?)
}

/// `∫ g(ω) D / (D² + ω²) dω`, the response of the incoherent state.
pub fn lorentz_overlap(dist: &FrequencyDistribution, noise: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let f = |w: f64| dist.pdf(w) * noise / (noise * noise + w * w);
    let split = 10.0 * noise.max(dist.width());
    let edge = dist.support_edge().map_or(split, |e| e.min(split));

    // The kernel has width `noise` around zero, the density width `width`.
    let mut points = vec![0.0];
    let mut x = noise.min(dist.width()) / 4.0;
    while x < edge {
        points.push(x);
        x *= 4.0;
    }
    points.push(edge);
    let core = integrate_breakpoints(f, &points, cfg)?.value;
    let tail = if dist.support_edge().is_some_and(|e| e <= split) {
        0.0
    } else {
        integrate_semi_infinite(f, edge, &QuadratureConfig { probe_step: edge, ..*cfg })?.value
    };
    Ok(2.0 * (core + tail))
}

/// Noiseless critical coupling `2 / (π g(0))`.
pub fn noiseless_jc(dist: &FrequencyDistribution) -> Result<f64> {
    let g0 = dist.density_at_origin();
    if !(g0 > 0.0) {
        return Err(Error::DegenerateDistribution);
    }
    Ok(2.0 / (PI * g0))
}

/// The noisy formula with the noise replaced by the temperature.
pub fn classical_jc_extended(dist: &FrequencyDistribution, temp: f64) -> Result<f64> {
    if !(temp >= 0.0) {
        return Err(Error::invalid(format!("temp must be >= 0, got {temp}")));
    }
    classical_jc(dist, temp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(s: f64) -> FrequencyDistribution {
        FrequencyDistribution::gaussian(s).unwrap()
    }

    #[test]
    fn lorentzian_closed_form_matches_quadrature() {
        let l = FrequencyDistribution::lorentzian(1.0).unwrap();
        assert_eq!(classical_jc(&l, 1.0).unwrap(), 4.0);
        let overlap = lorentz_overlap(&l, 1.0, &QuadratureConfig::default()).unwrap();
        assert!((2.0 / overlap - 4.0).abs() < 1e-6);
    }

    #[test]
    fn gaussian_limits() {
        let noiseless = 4.0 * (2.0 / PI).sqrt();
        assert!((noiseless_jc(&gauss(2.0)).unwrap() - noiseless).abs() < 1e-12);
        assert!((noiseless_jc(&gauss(1.0)).unwrap() - 1.595_769_121_605_730_7).abs() < 1e-12);
        let high = classical_jc(&gauss(2.0), 100.0).unwrap();
        assert!((high / 200.0 - 1.0).abs() < 1e-3);
        let low = classical_jc(&gauss(2.0), 1e-4).unwrap();
        assert!((low / noiseless - 1.0).abs() < 1e-3);
        assert!((classical_jc(&gauss(2.0), 0.0).unwrap() - noiseless).abs() < 1e-14);
    }

    #[test]
    fn extended_approaches_noiseless() {
        let g = gauss(2.0);
        let target = noiseless_jc(&g).unwrap();
        let mut prev = f64::INFINITY;
        for t in [1e-1, 1e-2, 1e-3] {
            let gap = (classical_jc_extended(&g, t).unwrap() - target).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev / target < 1e-3);
    }
}
