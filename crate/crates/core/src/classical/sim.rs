//! Euler-Maruyama integration of the mean-field noisy rotor ensemble.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::FrequencyDistribution;
use crate::error::{Error, Result};
use crate::numerics::RngHandle;
use crate::params::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParameter {
    pub r: f64,
    /// Collective phase in (-π, π].
    pub phi: f64,
}

/// `r e^{iφ} = (1/N) Σ e^{iθ_j}`.
pub fn order_parameter(theta: &[f64]) -> OrderParameter {
    let (mut c, mut s) = (0.0, 0.0);
    for &t in theta {
        let (sn, cs) = t.sin_cos();
        c += cs;
        s += sn;
    }
    from_sums(c, s, theta.len())
}

fn from_sums(c: f64, s: f64, n: usize) -> OrderParameter {
    let n = n.max(1) as f64;
    let (c, s) = (c / n, s / n);
    let r = c.hypot(s).min(1.0);
    let mut phi = s.atan2(c);
    if phi <= -PI {
        phi = PI;
    }
    OrderParameter { r, phi }
}

/// All-to-all force `(J/N) Σ_j sin(θ_j − θ_i)` on every rotor, in O(N²).
pub fn pairwise_force(theta: &[f64], coupling: f64) -> Vec<f64> {
    let n = theta.len() as f64;
    theta
        .iter()
        .map(|&ti| coupling / n * theta.iter().map(|&tj| (tj - ti).sin()).sum::<f64>())
        .collect()
}

/// The same force through the order parameter, `−J r sin(θ_i − φ)`.
pub fn mean_field_force(theta: &[f64], coupling: f64) -> Vec<f64> {
    let op = order_parameter(theta);
    theta.iter().map(|&t| -coupling * op.r * (t - op.phi).sin()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    /// Phases uniform on [0, 2π), velocities zero.
    #[default]
    UniformPhases,
    AllZero,
    /// Explicit per-rotor phases and velocities.
    Tabulated { theta: Vec<f64>, v: Vec<f64> },
}

/// Rotor phases, velocities and quenched natural frequencies.
#[derive(Debug, Clone)]
pub struct EnsembleState {
    pub theta: Vec<f64>,
    pub v: Vec<f64>,
    omega: Vec<f64>,
    pub time: f64,
    sin: Vec<f64>,
    cos: Vec<f64>,
    kicks: Vec<f64>,
}

impl EnsembleState {
    pub fn new(theta: Vec<f64>, v: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        if n == 0 || v.len() != n || omega.len() != n {
            return Err(Error::invalid("ensemble arrays must be non-empty and of equal length"));
        }
        Ok(Self {
            theta,
            v,
            omega,
            time: 0.0,
            sin: vec![0.0; n],
            cos: vec![0.0; n],
            kicks: vec![0.0; n],
        })
    }

    /// Draws `n` frequencies from `dist` and initial data from `init`.
    pub fn sample(dist: &FrequencyDistribution, n: usize, init: &InitialCondition, rng: &mut RngHandle) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ensemble size must be >= 1"));
        }
        let omega = (0..n).map(|_| dist.sample(rng)).collect::<Result<Vec<_>>>()?;
        let (theta, v) = match init {
            InitialCondition::UniformPhases => ((0..n).map(|_| 2.0 * PI * rng.uniform()).collect(), vec![0.0; n]),
            InitialCondition::AllZero => (vec![0.0; n], vec![0.0; n]),
            InitialCondition::Tabulated { theta, v } => {
                if theta.len() != n || v.len() != n {
                    return Err(Error::invalid(format!(
                        "tabulated initial condition has {} phases and {} velocities for {n} rotors",
                        theta.len(),
                        v.len()
                    )));
                }
                (theta.clone(), v.clone())
            }
        };
        Self::new(theta, v, omega)
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn order_parameter(&self) -> OrderParameter {
        order_parameter(&self.theta)
    }

    /// Caches sin/cos of every phase and returns the mean-field components.
    fn refresh_trig(&mut self) -> (f64, f64) {
        let (mut c, mut s) = (0.0, 0.0);
        for ((t, sn), cs) in self.theta.iter().zip(&mut self.sin).zip(&mut self.cos) {
            let (a, b) = t.sin_cos();
            *sn = a;
            *cs = b;
            s += a;
            c += b;
        }
        let n = self.theta.len() as f64;
        (c / n, s / n)
    }
}

/// Inertial rotors with mass and damping rate, noise strength `noise`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassiveModel {
    pub mass: f64,
    pub damping: f64,
    pub noise: f64,
}

impl MassiveModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.damping > 0.0 && self.noise >= 0.0) {
            return Err(Error::invalid("massive model needs mass > 0, damping > 0, noise >= 0"));
        }
        Ok(())
    }
}

impl From<&PhysicalParams> for MassiveModel {
    /// Mass `mu` and unit damping, noise `mu * temp`.
    fn from(p: &PhysicalParams) -> Self {
        Self {
            mass: p.mu,
            damping: 1.0,
            noise: p.noise(),
        }
    }
}

/// One Ito step of the inertial model:
/// `θ += v dt`, `v += dt (F − mγ v)/m + sqrt(2 D dt) ξ / m`.
pub fn step_massive(state: &mut EnsembleState, coupling: f64, model: &MassiveModel, dt: f64, rng: &mut RngHandle) {
    let (x, y) = state.refresh_trig();
    let amp = (2.0 * model.noise * dt).sqrt() / model.mass;
    if amp > 0.0 {
        rng.fill_standard_normal(&mut state.kicks);
    }
    let friction = model.mass * model.damping;
    for i in 0..state.theta.len() {
        let force = state.omega[i] - coupling * (x * state.sin[i] - y * state.cos[i]);
        let v = state.v[i];
        state.theta[i] += v * dt;
        let mut dv = dt * (force - friction * v) / model.mass;
        if amp > 0.0 {
            dv += amp * state.kicks[i];
        }
        state.v[i] = v + dv;
    }
    state.time += dt;
}

/// One Ito step of the massless model:
/// `θ += dt (ω − J r sin(θ − φ)) + sqrt(2 D dt) ξ`.
pub fn step_massless(state: &mut EnsembleState, coupling: f64, noise: f64, dt: f64, rng: &mut RngHandle) {
    let (x, y) = state.refresh_trig();
    let amp = (2.0 * noise * dt).sqrt();
    if amp > 0.0 {
        rng.fill_standard_normal(&mut state.kicks);
    }
    for i in 0..state.theta.len() {
        let drift = state.omega[i] - coupling * (x * state.sin[i] - y * state.cos[i]);
        state.v[i] = drift;
        state.theta[i] += dt * drift;
        if amp > 0.0 {
            state.theta[i] += amp * state.kicks[i];
        }
    }
    state.time += dt;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimModel {
    Massless,
    Massive { mass: f64, damping: f64 },
}

impl SimModel {
    fn step(&self, state: &mut EnsembleState, coupling: f64, noise: f64, dt: f64, rng: &mut RngHandle) {
        match *self {
            SimModel::Massless => step_massless(state, coupling, noise, dt, rng),
            SimModel::Massive { mass, damping } => {
                step_massive(state, coupling, &MassiveModel { mass, damping, noise }, dt, rng)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if let SimModel::Massive { mass, damping } = *self {
            MassiveModel { mass, damping, noise: 0.0 }.validate()?;
        }
        Ok(())
    }

    /// Default step: 1e-3/γ inertial, 1e-3·min(1, 1/J) massless.
    pub fn default_dt(&self, coupling: f64) -> f64 {
        match *self {
            SimModel::Massless => 1e-3 * (1.0 / coupling.abs()).min(1.0),
            SimModel::Massive { damping, .. } => 1e-3 / damping,
        }
    }

    /// Default burn-in: 50 times the slowest of 1/γ, 1/D, 1/J.
    pub fn default_burn_in(&self, coupling: f64, noise: f64) -> f64 {
        let rate_scale = match *self {
            SimModel::Massless => 1.0,
            SimModel::Massive { damping, .. } => 1.0 / damping,
        };
        let slowest = [rate_scale, 1.0 / noise, 1.0 / coupling.abs()]
            .into_iter()
            .filter(|t| t.is_finite())
            .fold(0.0, f64::max);
        50.0 * slowest
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub t_burn: f64,
    pub t_avg: f64,
    pub n_realizations: usize,
    #[serde(default)]
    pub initial: InitialCondition,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::invalid(format!("dt must be > 0, got {}", self.dt)));
        }
        if !(self.t_burn >= 0.0 && self.t_avg >= 0.0) {
            return Err(Error::invalid("t_burn and t_avg must be >= 0"));
        }
        if self.n_realizations < 1 {
            return Err(Error::invalid("n_realizations must be >= 1"));
        }
        Ok(())
    }

    fn steps(&self) -> (usize, usize) {
        let burn = (self.t_burn / self.dt).round() as usize;
        let avg = ((self.t_avg / self.dt).round() as usize).max(1);
        (burn, avg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryR {
    pub r_mean: f64,
    pub r_stderr: f64,
    pub per_realization: Vec<f64>,
}

/// Time- and disorder-averaged stationary order parameter.
///
/// Realization `k` draws its frequencies, initial phases and noise from
/// handles derived from `rng` and label `k`, so results do not depend on the
/// number of worker threads.
pub fn simulate_stationary_r(
    dist: &FrequencyDistribution,
    coupling: f64,
    noise: f64,
    model: SimModel,
    n: usize,
    cfg: &SimConfig,
    rng: &RngHandle,
) -> Result<StationaryR> {
    cfg.validate()?;
    model.validate()?;
    if !(cfg.t_avg > 0.0) {
        return Err(Error::invalid("t_avg must be > 0 for a stationary average"));
    }
    if !(noise >= 0.0) {
        return Err(Error::invalid("noise must be >= 0"));
    }
    let (burn, avg) = cfg.steps();
    let per_realization = (0..cfg.n_realizations)
        .into_par_iter()
        .map(|k| {
            let base = rng.derive(k as u64);
            let mut setup = base.fork(0);
            let mut kicks = base.fork(1);
            let mut state = EnsembleState::sample(dist, n, &cfg.initial, &mut setup)?;
            for _ in 0..burn {
                model.step(&mut state, coupling, noise, cfg.dt, &mut kicks);
            }
            let mut acc = 0.0;
            for _ in 0..avg {
                model.step(&mut state, coupling, noise, cfg.dt, &mut kicks);
                acc += state.order_parameter_cached();
            }
            Ok(acc / avg as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (r_mean, r_stderr) = mean_and_stderr(&per_realization);
    Ok(StationaryR {
        r_mean,
        r_stderr,
        per_realization,
    })
}

impl EnsembleState {
    /// Order parameter modulus of the current phases, reusing trig scratch.
    fn order_parameter_cached(&mut self) -> f64 {
        let (x, y) = self.refresh_trig();
        x.hypot(y).min(1.0)
    }
}

pub(crate) fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub time: f64,
    pub r: f64,
    pub phi: f64,
}

/// A single realization's order-parameter history, recorded every `stride` steps.
#[allow(clippy::too_many_arguments)]
pub fn simulate_trajectory(
    dist: &FrequencyDistribution,
    coupling: f64,
    noise: f64,
    model: SimModel,
    n: usize,
    cfg: &SimConfig,
    stride: usize,
    rng: &RngHandle,
) -> Result<Vec<TrajectoryPoint>> {
    cfg.validate()?;
    model.validate()?;
    let stride = stride.max(1);
    let (burn, avg) = cfg.steps();
    let base = rng.derive(0);
    let mut setup = base.fork(0);
    let mut kicks = base.fork(1);
    let mut state = EnsembleState::sample(dist, n, &cfg.initial, &mut setup)?;
    let mut out = Vec::with_capacity((burn + avg) / stride + 1);
    let record = |s: &EnsembleState, out: &mut Vec<TrajectoryPoint>| {
        let op = s.order_parameter();
        out.push(TrajectoryPoint {
            time: s.time,
            r: op.r,
            phi: op.phi,
        });
    };
    record(&state, &mut out);
    for k in 1..=(burn + avg) {
        model.step(&mut state, coupling, noise, cfg.dt, &mut kicks);
        if k % stride == 0 {
            record(&state, &mut out);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HysteresisPoint {
    pub coupling: f64,
    pub r_up: f64,
    pub r_down: f64,
}

/// Adiabatic coupling scan up and back down, carrying the state along.
#[allow(clippy::too_many_arguments)]
pub fn hysteresis_scan(
    dist: &FrequencyDistribution,
    noise: f64,
    model: SimModel,
    n: usize,
    couplings: &[f64],
    cfg: &SimConfig,
    rng: &RngHandle,
) -> Result<Vec<HysteresisPoint>> {
    cfg.validate()?;
    model.validate()?;
    if couplings.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("hysteresis couplings must be strictly ascending"));
    }
    let (burn, avg) = cfg.steps();
    let base = rng.derive(0);
    let mut setup = base.fork(0);
    let mut kicks = base.fork(1);
    let mut state = EnsembleState::sample(dist, n, &cfg.initial, &mut setup)?;
    let mut dwell = |state: &mut EnsembleState, j: f64| {
        for _ in 0..burn {
            model.step(state, j, noise, cfg.dt, &mut kicks);
        }
        let mut acc = 0.0;
        for _ in 0..avg {
            model.step(state, j, noise, cfg.dt, &mut kicks);
            acc += state.order_parameter_cached();
        }
        acc / avg as f64
    };
    let up: Vec<f64> = couplings.iter().map(|&j| dwell(&mut state, j)).collect();
    let mut down: Vec<f64> = couplings.iter().rev().map(|&j| dwell(&mut state, j)).collect();
    down.reverse();
    Ok(couplings
        .iter()
        .zip(up.iter().zip(&down))
        .map(|(&coupling, (&r_up, &r_down))| HysteresisPoint { coupling, r_up, r_down })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_parameter_examples() {
        let op = order_parameter(&[1.3; 5]);
        assert!((op.r - 1.0).abs() < 1e-15 && (op.phi - 1.3).abs() < 1e-15);
        let spread: Vec<f64> = (0..8).map(|j| 2.0 * PI * j as f64 / 8.0).collect();
        assert!(order_parameter(&spread).r < 1e-12);
        let op = order_parameter(&[0.0, PI / 2.0]);
        assert!((op.r - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((op.phi - PI / 4.0).abs() < 1e-15);
        assert_eq!(order_parameter(&[PI]).phi, PI);
    }

    #[test]
    fn free_massive_drift_is_a_fixed_point() {
        let omega = vec![0.5, -1.0, 2.0];
        let m = MassiveModel {
            mass: 3.0,
            damping: 2.0,
            noise: 0.0,
        };
        let v0: Vec<f64> = omega.iter().map(|w| w / (m.mass * m.damping)).collect();
        let mut s = EnsembleState::new(vec![0.0; 3], v0.clone(), omega).unwrap();
        let mut rng = RngHandle::new(0);
        for _ in 0..1000 {
            step_massive(&mut s, 0.0, &m, 1e-3, &mut rng);
        }
        for (v, v0) in s.v.iter().zip(&v0) {
            assert!((v - v0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_locked_rotor_stays_put() {
        let m = MassiveModel {
            mass: 1.0,
            damping: 1.0,
            noise: 0.0,
        };
        let mut s = EnsembleState::new(vec![0.7], vec![0.0], vec![0.0]).unwrap();
        let mut rng = RngHandle::new(0);
        for _ in 0..100 {
            step_massive(&mut s, 3.0, &m, 1e-2, &mut rng);
        }
        assert!((s.theta[0] - 0.7).abs() < 1e-15 && s.v[0].abs() < 1e-15);
    }

    #[test]
    fn free_massless_drift_is_linear() {
        let omega = vec![0.25, -0.5];
        let mut s = EnsembleState::new(vec![1.0, 2.0], vec![0.0; 2], omega.clone()).unwrap();
        let mut rng = RngHandle::new(0);
        for _ in 0..64 {
            step_massless(&mut s, 0.0, 0.0, 0.125, &mut rng);
        }
        assert_eq!(s.theta[0], 1.0 + 0.25 * 8.0);
        assert_eq!(s.theta[1], 2.0 - 0.5 * 8.0);
        assert_eq!(s.omega(), &omega[..]);
    }

    #[test]
    fn forces_agree() {
        let mut rng = RngHandle::new(4);
        for n in [1, 2, 17, 64] {
            let theta: Vec<f64> = (0..n).map(|_| 20.0 * (rng.uniform() - 0.5)).collect();
            let a = pairwise_force(&theta, 1.7);
            let b = mean_field_force(&theta, 1.7);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stepping_is_deterministic() {
        let dist = FrequencyDistribution::gaussian(1.0).unwrap();
        let run = || {
            let mut rng = RngHandle::new(11);
            let mut s = EnsembleState::sample(&dist, 50, &InitialCondition::UniformPhases, &mut rng).unwrap();
            for _ in 0..2 {
                step_massless(&mut s, 1.0, 0.5, 0.01, &mut rng);
            }
            s.theta
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn defaults() {
        assert_eq!(SimModel::Massless.default_dt(4.0), 2.5e-4);
        assert_eq!(SimModel::Massless.default_dt(0.5), 1e-3);
        assert_eq!(SimModel::Massless.default_burn_in(2.0, 0.0), 50.0);
        assert_eq!(SimModel::Massless.default_burn_in(2.0, 0.1), 500.0);
    }

    #[test]
    fn incoherent_floor_without_coupling() {
        let dist = FrequencyDistribution::gaussian(1.0).unwrap();
        let cfg = SimConfig {
            dt: 0.05,
            t_burn: 1.0,
            t_avg: 5.0,
            n_realizations: 4,
            initial: InitialCondition::UniformPhases,
        };
        let n = 400;
        let res = simulate_stationary_r(&dist, 0.0, 0.1, SimModel::Massless, n, &cfg, &RngHandle::new(2)).unwrap();
        assert!(res.r_mean < 3.0 / (n as f64).sqrt());
        assert_eq!(res.per_realization.len(), 4);
    }
}
