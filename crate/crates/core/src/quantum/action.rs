//! Imaginary part of the effective action on the stationary saddle path.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::kernel::KernelSpectrum;
use super::saddle::{ProfileModel, SaddleProfile};
use crate::error::{Error, Result};
use crate::numerics::{integrate_breakpoints, MonotoneCubic, QuadratureConfig};
use crate::params::PhysicalParams;

/// Panels handed to one adaptive integration in the oscillatory ν-integral.
const PANELS_PER_CHUNK: usize = 64;
/// Table nodes per decade of lag.
const NODES_PER_DECADE: f64 = 80.0;

/// Everything that determines `S'_Im(u)` for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumModel {
    pub params: PhysicalParams,
    pub profile: ProfileModel,
    pub quad: QuadratureConfig,
    /// Multiplies the action; 1 except in harness self-tests.
    pub action_scale: f64,
}

impl QuantumModel {
    pub fn new(params: PhysicalParams) -> Self {
        Self {
            params,
            profile: ProfileModel::default(),
            quad: QuadratureConfig::default(),
            action_scale: 1.0,
        }
    }

    pub fn with_profile(mut self, profile: ProfileModel) -> Self {
        self.profile = profile;
        self
    }

    pub fn with_quadrature(mut self, quad: QuadratureConfig) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_action_scale(mut self, scale: f64) -> Self {
        self.action_scale = scale;
        self
    }

    pub fn at_temp(&self, temp: f64) -> Self {
        Self {
            params: self.params.at_temp(temp),
            ..*self
        }
    }

    fn check_lag(u: f64) -> Result<()> {
        if !(u >= 0.0 && u.is_finite()) {
            return Err(Error::invalid(format!("lag must be finite and >= 0, got {u}")));
        }
        Ok(())
    }

    /// `(1/2π) ∫ D K(ν) |Θ(ν)|² dν` over `|ν| <= cutoff`.
    pub fn s_im(&self, u: f64) -> Result<f64> {
        Self::check_lag(u)?;
        self.params.validate()?;
        if u == 0.0 {
            return Ok(0.0);
        }
        let spectrum = KernelSpectrum::new(self.params);
        let profile = SaddleProfile::new(u, &self.params, self.profile);
        let cutoff = self.params.cutoff;
        // Half the sinc zero spacing, so every panel is smooth.
        let panels = ((cutoff * u / PI).ceil() as usize).max(8);
        let width = cutoff / panels as f64;
        let mut total = 0.0;
        let mut start = 0;
        while start < panels {
            let end = (start + PANELS_PER_CHUNK).min(panels);
            let pts: Vec<f64> = (start..=end).map(|k| k as f64 * width).collect();
            total += integrate_breakpoints(|nu| spectrum.eval(nu) * profile.power(nu), &pts, &self.quad)?.value;
            start = end;
        }
        Ok(self.action_scale * total / PI)
    }

    /// Same quantity as a time-domain quadratic form:
    /// `2 ∫_0^∞ C(x) K(x) dx` with `C` the profile autocorrelation.
    pub fn s_im_time_domain(&self, u: f64) -> Result<f64> {
        Self::check_lag(u)?;
        self.params.validate()?;
        if u == 0.0 {
            return Ok(0.0);
        }
        let spectrum = KernelSpectrum::new(self.params);
        let profile = SaddleProfile::new(u, &self.params, self.profile);
        let end = profile.support_end();
        let inner = QuadratureConfig {
            rel_tol: (self.quad.rel_tol * 1e-2).max(1e-13),
            ..self.quad
        };
        // Kernel oscillates with period 2π/cutoff; the autocorrelation has a kink at u.
        let panels = ((self.params.cutoff * end / PI).ceil() as usize).max(8);
        let mut pts: Vec<f64> = (0..=panels).map(|k| end * k as f64 / panels as f64).collect();
        if u < end {
            pts.push(u);
            pts.sort_by(f64::total_cmp);
            pts.dedup();
        }
        let mut failure = None;
        let mut total = 0.0;
        for start in (0..pts.len() - 1).step_by(PANELS_PER_CHUNK) {
            let chunk = &pts[start..=(start + PANELS_PER_CHUNK).min(pts.len() - 1)];
            let f = |x: f64| match profile.autocorrelation(x, &inner) {
                Ok(c) => c * spectrum.time_kernel(x),
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            };
            let part = integrate_breakpoints(f, chunk, &self.quad);
            if let Some(e) = failure.take() {
                return Err(e);
            }
            total += part?.value;
        }
        Ok(self.action_scale * 2.0 * total)
    }

    /// Tabulates the action on `[0, u_max]` for fast repeated lookup.
    pub fn action_table(&self, u_max: f64) -> Result<SImTable> {
        Self::check_lag(u_max)?;
        let u_max = u_max.max(1e-3);
        let u_lo = (1e-3f64).min(1e-2 / self.params.cutoff);
        let decades = (u_max / u_lo).log10();
        let n = ((decades * NODES_PER_DECADE).ceil() as usize).max(8);
        let mut nodes = vec![0.0];
        nodes.extend((0..=n).map(|k| u_lo * (u_max / u_lo).powf(k as f64 / n as f64)));
        let values = nodes
            .par_iter()
            .map(|&u| self.s_im(u))
            .collect::<Result<Vec<f64>>>()?;
        Ok(SImTable {
            model: *self,
            u_max,
            interp: MonotoneCubic::new(nodes, values)?,
        })
    }
}

/// `S'_Im(u)` with the default profile and unit action scale.
pub fn s_im(u: f64, params: &PhysicalParams, cfg: &QuadratureConfig) -> Result<f64> {
    QuantumModel::new(*params).with_quadrature(*cfg).s_im(u)
}

/// Cached `S'_Im` on a geometric lag grid with monotone cubic interpolation.
#[derive(Debug, Clone)]
pub struct SImTable {
    model: QuantumModel,
    u_max: f64,
    interp: MonotoneCubic,
}

impl SImTable {
    pub fn model(&self) -> &QuantumModel {
        &self.model
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.model.params
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn nodes(&self) -> &[f64] {
        self.interp.nodes()
    }

    /// Interpolated action; beyond the table the exact evaluation is used.
    pub fn eval(&self, u: f64) -> Result<f64> {
        if u <= self.u_max {
            Ok(self.interp.eval(u))
        } else {
            self.model.s_im(u)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    /// Cin(z) = ∫_0^z (1 − cos t)/t dt by its power series or asymptotics.
    fn cin(z: f64) -> f64 {
        if z < 30.0 {
            let mut term = -1.0;
            let mut sum = 0.0;
            for k in 1..200 {
                term *= -z * z / ((2 * k - 1) as f64 * (2 * k) as f64);
                let add = term / (2 * k) as f64;
                sum += add;
                if add.abs() < 1e-17 * sum.abs() {
                    break;
                }
            }
            sum
        } else {
            // Ci(z) from the auxiliary asymptotic series.
            let (mut f, mut g) = (0.0, 0.0);
            let mut tf = 1.0 / z;
            let mut tg = 1.0 / (z * z);
            for k in 0..8 {
                f += tf;
                g += tg;
                tf *= -((2 * k + 1) as f64) * ((2 * k + 2) as f64) / (z * z);
                tg *= -((2 * k + 2) as f64) * ((2 * k + 3) as f64) / (z * z);
            }
            let ci = f * z.sin() - g * z.cos();
            EULER_GAMMA + z.ln() - ci
        }
    }

    /// Zero-temperature step-profile action: Cin(cutoff u) / (π mu).
    #[test]
    fn cold_step_action_matches_cosine_integral() {
        let p = PhysicalParams::with_cutoff(7.0, 0.0, 350.0).unwrap();
        let m = QuantumModel::new(p);
        for u in [0.01, 0.05, 0.5, 3.0, 20.0] {
            let oracle = cin(350.0 * u) / (PI * 7.0);
            let got = m.s_im(u).unwrap();
            assert!((got / oracle - 1.0).abs() < 1e-7, "u={u}: {got} vs {oracle}");
        }
    }

    #[test]
    fn hot_action_is_linear_in_lag() {
        let p = PhysicalParams::with_cutoff(7.0, 50.0, 350.0).unwrap();
        let m = QuantumModel::new(p);
        for u in [3.0, 5.0, 10.0] {
            let ratio = m.s_im(u).unwrap() / (50.0 / 7.0 * u);
            assert!((ratio - 1.0).abs() < 1e-2, "u={u}: ratio {ratio}");
        }
    }

    #[test]
    fn routes_agree_for_both_profiles() {
        for profile in [ProfileModel::MasslessStep, ProfileModel::FiniteDamping] {
            for temp in [0.0, 2.0] {
                let p = PhysicalParams::with_cutoff(7.0, temp, 60.0).unwrap();
                let m = QuantumModel::new(p).with_profile(profile);
                let f = m.s_im(1.5).unwrap();
                let t = m.s_im_time_domain(1.5).unwrap();
                assert!((f / t - 1.0).abs() < 1e-6, "{profile:?} temp={temp}: {f} vs {t}");
            }
        }
    }

    #[test]
    fn table_interpolates_monotonically() {
        let p = PhysicalParams::with_cutoff(7.0, 0.5, 100.0).unwrap();
        let m = QuantumModel::new(p);
        let table = m.action_table(8.0).unwrap();
        assert_eq!(table.eval(0.0).unwrap(), 0.0);
        // The sharp cutoff adds a ripple of period 2π/cutoff that the lag grid
        // does not resolve; its amplitude is about 1/(π mu cutoff u).
        for u in [0.003, 0.4, 2.2, 7.7] {
            let exact = m.s_im(u).unwrap();
            let ripple = 1.0 / (PI * p.mu * p.cutoff * u);
            assert!((table.eval(u).unwrap() - exact).abs() < 1e-6 + 2.0 * ripple);
        }
        assert_eq!(table.eval(9.0).unwrap(), m.s_im(9.0).unwrap());
        let nodes = table.nodes();
        let mut prev = -1.0;
        for w in nodes.windows(2) {
            let mid = table.eval(0.5 * (w[0] + w[1])).unwrap();
            assert!(mid >= prev);
            prev = mid;
        }
    }

    #[test]
    fn scale_hook_multiplies_the_action() {
        let p = PhysicalParams::new(7.0, 1.0).unwrap();
        let base = QuantumModel::new(p).s_im(2.0).unwrap();
        let scaled = QuantumModel::new(p).with_action_scale(1.1).s_im(2.0).unwrap();
        assert!((scaled / base - 1.1).abs() < 1e-12);
    }
}
