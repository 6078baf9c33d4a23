//! Saddle-point paths of the first-order influence-functional expansion.
//!
//! Forward time `tp` runs over `[0, t]` with the source at `s`. Everything is
//! in units with ħ = 1; exponentials only ever appear as `e^{−γ·(positive)}`
//! so arbitrarily long horizons `γt` are safe.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::{integrate_breakpoints, QuadratureConfig};
use crate::params::PhysicalParams;

/// Mass and damping rate, with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleScales {
    pub mass: f64,
    pub gamma: f64,
}

impl SaddleScales {
    /// The internal-unit scales of `params`: mass `mu`, unit damping.
    pub fn from_params(params: &PhysicalParams) -> Self {
        Self {
            mass: params.mu,
            gamma: 1.0,
        }
    }

    /// Scales with a fixed ratio `mu = mγ` and damping `gamma`.
    pub fn with_ratio(mu: f64, gamma: f64) -> Self {
        Self { mass: mu / gamma, gamma }
    }

    fn ratio(&self) -> f64 {
        self.mass * self.gamma
    }

    /// Solution of `θ̈ − γθ̇ = c δ(tp − s)/m` with `θ(0) = theta_m0`, `θ(t) = 0`.
    pub fn theta_minus(&self, tp: f64, s: f64, t: f64, theta_m0: f64, c: f64) -> f64 {
        let g = self.gamma;
        let gm = self.ratio();
        let one_minus_b = -(-g * t).exp_m1();
        let w = c * -(-g * s).exp_m1() - gm * theta_m0;
        if tp > s {
            return (-g * (t - tp)).exp_m1() * w / (gm * one_minus_b);
        }
        if tp <= 0.0 {
            return theta_m0;
        }
        let weight = (-g * (s - tp)).exp() * (-g * tp).exp_m1() / (-g * s).exp_m1();
        let after = -(-g * (t - s)).exp_m1();
        theta_m0 + weight * (-theta_m0 - after * w / (gm * one_minus_b))
    }

    /// Solution of `θ̈ + γθ̇ − ω/m = −c c' δ(tp − s)/(2m)` with `θ(0) = theta_p0`,
    /// `θ(t) = theta_p_end`.
    #[allow(clippy::too_many_arguments)]
    pub fn theta_plus(
        &self,
        tp: f64,
        s: f64,
        t: f64,
        theta_p0: f64,
        theta_p_end: f64,
        omega: f64,
        c: f64,
        cp: f64,
    ) -> f64 {
        let g = self.gamma;
        let gm = self.ratio();
        let one_minus_b = -(-g * t).exp_m1();
        let g0 = c * cp - 2.0 * gm * (theta_p0 - theta_p_end) - 2.0 * t * omega;
        if tp >= s {
            let rest = -(-g * (t - tp)).exp_m1();
            let num = -c * cp * (-g * (tp - s)).exp() * rest + g0 * (-g * tp).exp() * rest;
            return -num / (2.0 * gm * one_minus_b) + theta_p_end + omega * (tp - t) / gm;
        }
        if tp <= 0.0 {
            return theta_p0;
        }
        let h = (-g * tp).exp_m1() / (-g * s).exp_m1();
        let after = -(-g * (t - s)).exp_m1();
        let x = (-c * cp * after + g0 * (-g * s).exp() * after) / (2.0 * gm * one_minus_b);
        -h * (x + theta_p0 - theta_p_end + t * omega / gm) + theta_p0 + omega * tp / gm
    }
}

/// `θ̃_−(tp)` for the internal-unit scales of `params`.
pub fn saddle_theta_minus(tp: f64, s: f64, t: f64, theta_m0: f64, c: f64, params: &PhysicalParams) -> f64 {
    SaddleScales::from_params(params).theta_minus(tp, s, t, theta_m0, c)
}

/// `θ̃_+(tp)` for the internal-unit scales of `params`.
#[allow(clippy::too_many_arguments)]
pub fn saddle_theta_plus(
    tp: f64,
    s: f64,
    t: f64,
    theta_p0: f64,
    theta_p_end: f64,
    omega: f64,
    c: f64,
    cp: f64,
    params: &PhysicalParams,
) -> f64 {
    SaddleScales::from_params(params).theta_plus(tp, s, t, theta_p0, theta_p_end, omega, c, cp)
}

/// Limit of [`SaddleScales::theta_minus`] as γ → ∞ at fixed `mu = mγ`.
pub fn massless_theta_minus(tp: f64, s: f64, t: f64, theta_m0: f64, c: f64, mu: f64) -> f64 {
    if tp >= t {
        0.0
    } else if tp <= s {
        theta_m0
    } else {
        theta_m0 - c / mu
    }
}

/// Limit of [`SaddleScales::theta_plus`] as γ → ∞ at fixed `mu = mγ`.
#[allow(clippy::too_many_arguments)]
pub fn massless_theta_plus(
    tp: f64,
    s: f64,
    t: f64,
    theta_p0: f64,
    theta_p_end: f64,
    omega: f64,
    c: f64,
    cp: f64,
    mu: f64,
) -> f64 {
    if tp <= 0.0 {
        theta_p0
    } else if tp < s {
        theta_p_end + c * cp / (2.0 * mu) + omega * (tp - t) / mu
    } else {
        theta_p_end + omega * (tp - t) / mu
    }
}

/// Long-horizon stationary `θ_−` at finite damping, in backward time `tau`.
///
/// `(1 − e^{−τ})/mu` on `[0, u]`, then `e^{−(τ−u)} (1 − e^{−u})/mu`.
pub fn stationary_minus_profile(tau: f64, u: f64, params: &PhysicalParams) -> f64 {
    SaddleProfile::new(u, params, ProfileModel::FiniteDamping).value(tau)
}

/// Which stationary path enters the imaginary action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileModel {
    /// Height `1/mu` on the lag window and zero outside (γ → ∞ at fixed mγ).
    #[default]
    MasslessStep,
    /// Finite-damping path with unit relaxation time at both ends of the window.
    FiniteDamping,
}

/// Backward-time profile `θ_−*(τ; u)` over a lag window of length `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleProfile {
    pub u: f64,
    pub mu: f64,
    pub model: ProfileModel,
}

/// Relaxation times kept past the window for the finite-damping tail.
const TAIL_SPAN: f64 = 40.0;

impl SaddleProfile {
    pub fn new(u: f64, params: &PhysicalParams, model: ProfileModel) -> Self {
        Self { u, mu: params.mu, model }
    }

    pub fn value(&self, tau: f64) -> f64 {
        let u = self.u;
        if tau <= 0.0 {
            return 0.0;
        }
        match self.model {
            ProfileModel::MasslessStep => {
                if tau <= u {
                    1.0 / self.mu
                } else {
                    0.0
                }
            }
            ProfileModel::FiniteDamping => {
                if tau <= u {
                    -(-tau).exp_m1() / self.mu
                } else {
                    (-(tau - u)).exp() * -(-u).exp_m1() / self.mu
                }
            }
        }
    }

    /// Beyond this backward time the profile is zero or below 1e-17 of its peak.
    pub fn support_end(&self) -> f64 {
        match self.model {
            ProfileModel::MasslessStep => self.u,
            ProfileModel::FiniteDamping => self.u + TAIL_SPAN,
        }
    }

    /// `∫ θ(τ) e^{iντ} dτ`.
    pub fn transform(&self, nu: f64) -> Complex64 {
        let u = self.u;
        let i = Complex64::i();
        // (e^{iνu} − 1)/(iν) without cancellation at small ν.
        let window = Complex64::from_polar(u * sinc(0.5 * nu * u), 0.5 * nu * u);
        match self.model {
            ProfileModel::MasslessStep => window / self.mu,
            ProfileModel::FiniteDamping => {
                let a = i * nu - 1.0;
                let rise = ((a * u).exp() - 1.0) / a;
                let tail = -(-u).exp_m1() * Complex64::from_polar(1.0, nu * u) / (1.0 - i * nu);
                (window - rise + tail) / self.mu
            }
        }
    }

    /// `|∫ θ(τ) e^{iντ} dτ|²`.
    pub fn power(&self, nu: f64) -> f64 {
        match self.model {
            ProfileModel::MasslessStep => (self.u * sinc(0.5 * nu * self.u) / self.mu).powi(2),
            ProfileModel::FiniteDamping => self.transform(nu).norm_sqr(),
        }
    }

    /// Profile autocorrelation `∫ θ(τ) θ(τ + x) dτ` by quadrature.
    pub fn autocorrelation(&self, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let end = self.support_end() - x;
        if end <= 0.0 {
            return Ok(0.0);
        }
        let mut pts = vec![0.0, end];
        if self.u - x > 0.0 && self.u - x < end {
            pts.push(self.u - x);
        }
        if self.u < end {
            pts.push(self.u);
        }
        pts.sort_by(f64::total_cmp);
        Ok(integrate_breakpoints(|tau| self.value(tau) * self.value(tau + x), &pts, cfg)?.value)
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PhysicalParams {
        PhysicalParams::new(7.0, 0.0).unwrap()
    }

    #[test]
    fn boundaries_are_exact() {
        let sc = SaddleScales { mass: 0.7, gamma: 1.3 };
        assert_eq!(sc.theta_minus(0.0, 0.6, 2.0, 0.3, -1.0), 0.3);
        assert_eq!(sc.theta_minus(2.0, 0.6, 2.0, 0.3, -1.0), 0.0);
        assert_eq!(sc.theta_plus(0.0, 0.6, 2.0, 0.4, -0.9, 0.8, -1.0, 1.0), 0.4);
        assert_eq!(sc.theta_plus(2.0, 0.6, 2.0, 0.4, -0.9, 0.8, -1.0, 1.0), -0.9);
    }

    #[test]
    fn raw_form_agrees_on_short_horizons() {
        // Direct transcription of the unreduced closed forms.
        let (g, m, a0, at, w, c, cp, s, t, th0) = (1.3, 0.7, 0.4, -0.9, 0.8, -1.0, 1.0, 0.6, 2.0, 0.3);
        let e = f64::exp;
        let q = c * e(g * s) - c - g * m * th0 * e(g * s);
        let lo1 = |tp: f64| {
            th0 + (e(g * tp) - 1.0)
                * (-th0 + q / (g * m * (e(g * t) - 1.0)) - e(g * t - g * s) * q / (g * m * (e(g * t) - 1.0)))
                / (e(g * s) - 1.0)
        };
        let hi1 = |tp: f64| e(-g * s) * (e(g * tp) - e(g * t)) * q / (g * m * (e(g * t) - 1.0));
        let big = -c * cp * e(g * s) + c * cp - 2.0 * g * m * a0 + 2.0 * g * at * m - 2.0 * t * w;
        let lo2 = |tp: f64| {
            -(e(-g * tp) - 1.0)
                * (e(g * t) * (e(-g * s) - e(-g * t)) * big / (2.0 * g * m * (e(g * t) - 1.0)) + a0 - at
                    + t * w / (g * m))
                / (e(-g * s) - 1.0)
                + a0
                + w * tp / (g * m)
        };
        let hi2 = |tp: f64| {
            -e(g * t) * (e(-g * tp) - e(-g * t)) * big / (2.0 * g * m * (e(g * t) - 1.0)) + at + w * tp / (g * m)
                - t * w / (g * m)
        };
        let sc = SaddleScales { mass: m, gamma: g };
        for tp in [0.1, 0.35, 0.59, 0.61, 1.2, 1.9] {
            let (r1, r2) = if tp < s { (lo1(tp), lo2(tp)) } else { (hi1(tp), hi2(tp)) };
            assert!((sc.theta_minus(tp, s, t, th0, c) - r1).abs() < 1e-13);
            assert!((sc.theta_plus(tp, s, t, a0, at, w, c, cp) - r2).abs() < 1e-13);
        }
    }

    #[test]
    fn long_horizons_do_not_overflow() {
        let sc = SaddleScales::from_params(&p());
        let v = sc.theta_minus(4999.0, 4990.0, 5000.0, 0.0, -1.0);
        assert!(v.is_finite() && v > 0.0);
        let v = sc.theta_plus(10.0, 4990.0, 5000.0, 0.1, 0.2, 0.5, -1.0, 1.0);
        assert!(v.is_finite());
    }

    #[test]
    fn stationary_profile_matches_long_horizon_saddle() {
        let params = p();
        let t = 100.0f64;
        for u in [0.3, 2.0, 7.5] {
            let s = t - u;
            let start = (-s).exp() / params.mu;
            for tau in [0.0, 0.1, 0.5 * u, u, u + 0.4, u + 3.0, u + 20.0] {
                let direct = saddle_theta_minus(t - tau, s, t, start, -1.0, &params);
                let closed = stationary_minus_profile(tau, u, &params);
                assert!((direct - closed).abs() < 1e-10, "u={u} tau={tau}: {direct} vs {closed}");
            }
        }
    }

    #[test]
    fn stationary_profile_is_translation_invariant() {
        let params = p();
        for t in [60.0f64, 100.0, 400.0] {
            let s = t - 3.0;
            let start = (-s).exp() / params.mu;
            let v = saddle_theta_minus(t - 1.7, s, t, start, -1.0, &params);
            assert!((v - stationary_minus_profile(1.7, 3.0, &params)).abs() < 1e-12);
        }
    }

    #[test]
    fn transforms_match_quadrature() {
        let params = p();
        let cfg = QuadratureConfig::default().with_rel_tol(1e-12).with_abs_tol(1e-15);
        for model in [ProfileModel::MasslessStep, ProfileModel::FiniteDamping] {
            let prof = SaddleProfile::new(2.5, &params, model);
            for nu in [0.0, 1e-6, 0.7, 5.0] {
                let end = prof.support_end();
                let pts = [0.0, prof.u, end];
                let re = integrate_breakpoints(|t| prof.value(t) * (nu * t).cos(), &pts, &cfg).unwrap().value;
                let im = integrate_breakpoints(|t| prof.value(t) * (nu * t).sin(), &pts, &cfg).unwrap().value;
                let z = prof.transform(nu);
                assert!((z.re - re).abs() < 1e-10 && (z.im - im).abs() < 1e-10, "{model:?} nu={nu}");
                assert!((prof.power(nu) - (re * re + im * im)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn profile_bounds() {
        let params = p();
        for model in [ProfileModel::MasslessStep, ProfileModel::FiniteDamping] {
            let prof = SaddleProfile::new(4.0, &params, model);
            assert_eq!(prof.value(0.0), 0.0);
            for k in 0..200 {
                let v = prof.value(k as f64 * 0.1);
                assert!((0.0..=1.0 / params.mu).contains(&v));
            }
        }
        let long = SaddleProfile::new(60.0, &params, ProfileModel::FiniteDamping);
        assert!((long.value(1.3) - -(-1.3f64).exp_m1() / 7.0).abs() < 1e-15);
    }
}
