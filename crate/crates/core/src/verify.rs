//! Oracle cross-checks run by the `verify` command and the acceptance tests.

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::classical::{classical_jc, lorentz_overlap, noiseless_jc};
use crate::distribution::FrequencyDistribution;
use crate::error::Result;
use crate::numerics::{find_root_bracketed, QuadratureConfig};
use crate::params::PhysicalParams;
use crate::phase_diagram::{critical_temperature, washboard_barrier, CriticalTemperature};
use crate::quantum::{massless_theta_minus, massless_theta_plus, Prefactor, QuantumModel, SaddleScales};

pub const ANALYTIC_TOL: f64 = 1e-6;
pub const CLASSICAL_LIMIT_TOL: f64 = 0.02;
pub const HIGH_T_ACTION_TOL: f64 = 0.01;
pub const ODE_RESIDUAL_TOL: f64 = 1e-8;
pub const JUMP_TOL: f64 = 1e-6;
pub const MASSLESS_TOL: f64 = 1e-8;
pub const DUAL_ROUTE_TOL: f64 = 1e-4;
pub const CUTOFF_BAND_TOL: f64 = 0.25;
pub const ASYMPTOTE_TOL: f64 = 0.05;
pub const ROUND_TRIP_TOL: f64 = 1e-3;
pub const BARRIER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Check {
    ClassicalAnalytic,
    ClassicalLimit,
    HighTemperatureAction,
    SaddlePaths,
    DualRouteAction,
    ZeroTemperature,
    PhaseBoundary,
    WashboardBarrier,
}

impl Check {
    pub const QUICK: [Check; 5] = [
        Check::ClassicalAnalytic,
        Check::HighTemperatureAction,
        Check::SaddlePaths,
        Check::DualRouteAction,
        Check::WashboardBarrier,
    ];

    pub const FULL: [Check; 8] = [
        Check::ClassicalAnalytic,
        Check::ClassicalLimit,
        Check::HighTemperatureAction,
        Check::SaddlePaths,
        Check::DualRouteAction,
        Check::ZeroTemperature,
        Check::PhaseBoundary,
        Check::WashboardBarrier,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::ClassicalAnalytic => "classical-analytic",
            Check::ClassicalLimit => "classical-limit",
            Check::HighTemperatureAction => "high-temperature-action",
            Check::SaddlePaths => "saddle-paths",
            Check::DualRouteAction => "dual-route-action",
            Check::ZeroTemperature => "zero-temperature",
            Check::PhaseBoundary => "phase-boundary",
            Check::WashboardBarrier => "washboard-barrier",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Reference configuration: `mu = 7`, Gaussian width 2.
#[derive(Debug, Clone, Copy)]
pub struct VerifySuite {
    pub mu: f64,
    pub sigma: f64,
    pub quad: QuadratureConfig,
    /// Multiplies the imaginary action; lets the harness prove it can fail.
    pub action_scale: f64,
}

impl Default for VerifySuite {
    fn default() -> Self {
        Self {
            mu: 7.0,
            sigma: 2.0,
            quad: QuadratureConfig::default(),
            action_scale: 1.0,
        }
    }
}

/// Observed value against a target with a tolerance.
#[derive(Debug, Clone, Copy)]
struct Comparison {
    label: &'static str,
    observed: f64,
    expected: f64,
    tol: f64,
    relative: bool,
}

impl Comparison {
    fn abs(label: &'static str, observed: f64, expected: f64, tol: f64) -> Self {
        Self { label, observed, expected, tol, relative: false }
    }

    fn rel(label: &'static str, observed: f64, expected: f64, tol: f64) -> Self {
        Self { label, observed, expected, tol, relative: true }
    }

    fn deviation(&self) -> f64 {
        let d = (self.observed - self.expected).abs();
        if self.relative {
            d / self.expected.abs()
        } else {
            d
        }
    }

    fn ok(&self) -> bool {
        self.deviation() <= self.tol
    }
}

/// Collects comparisons; the worst failure (or the worst margin) is reported.
#[derive(Default)]
struct Tally {
    items: Vec<Comparison>,
    notes: Vec<String>,
}

impl Tally {
    fn push(&mut self, c: Comparison) {
        self.items.push(c);
    }

    fn require(&mut self, ok: bool, what: String) {
        if !ok {
            self.notes.push(what);
        }
    }

    fn finish(self) -> (bool, String) {
        let failed: Vec<&Comparison> = self.items.iter().filter(|c| !c.ok()).collect();
        let passed = failed.is_empty() && self.notes.is_empty();
        let show = |c: &Comparison| {
            let kind = if c.relative { "rel" } else { "abs" };
            format!(
                "{}: {:.10} vs {:.10} ({kind} dev {:.2e}, tol {:.0e})",
                c.label,
                c.observed,
                c.expected,
                c.deviation(),
                c.tol
            )
        };
        let mut parts: Vec<String> = failed.iter().map(|c| show(c)).collect();
        parts.extend(self.notes);
        if passed {
            let worst = self
                .items
                .iter()
                .max_by(|a, b| (a.deviation() / a.tol).total_cmp(&(b.deviation() / b.tol)));
            if let Some(w) = worst {
                parts.push(format!("{} comparisons, tightest {}", self.items.len(), show(w)));
            }
        }
        (passed, parts.join("; "))
    }
}

impl VerifySuite {
    pub fn run(&self, quick: bool) -> Vec<CheckReport> {
        let checks: &[Check] = if quick { &Check::QUICK } else { &Check::FULL };
        checks.iter().map(|&c| self.run_check(c)).collect()
    }

    pub fn run_check(&self, check: Check) -> CheckReport {
        let start = Instant::now();
        let outcome = match check {
            Check::ClassicalAnalytic => self.classical_analytic(),
            Check::ClassicalLimit => self.classical_limit(),
            Check::HighTemperatureAction => self.high_temperature_action(),
            Check::SaddlePaths => self.saddle_paths(),
            Check::DualRouteAction => self.dual_route_action(),
            Check::ZeroTemperature => self.zero_temperature(),
            Check::PhaseBoundary => self.phase_boundary(),
            Check::WashboardBarrier => Ok(washboard_check()),
        };
        let (passed, detail) = match outcome {
            Ok(t) => t.finish(),
            Err(e) => (false, format!("computation failed: {e}")),
        };
        CheckReport {
            check,
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    fn model(&self, temp: f64) -> Result<QuantumModel> {
        Ok(QuantumModel::new(PhysicalParams::new(self.mu, temp)?)
            .with_quadrature(self.quad)
            .with_action_scale(self.action_scale))
    }

    fn gauss(&self) -> Result<FrequencyDistribution> {
        FrequencyDistribution::gaussian(self.sigma)
    }

    fn classical_analytic(&self) -> Result<Tally> {
        let mut t = Tally::default();
        let lorentz = FrequencyDistribution::lorentzian(1.0)?;
        t.push(Comparison::abs("lorentzian closed form", classical_jc(&lorentz, 1.0)?, 4.0, ANALYTIC_TOL));
        // The overlap integral by quadrature, bypassing the closed form.
        let quad = 2.0 / lorentz_overlap(&lorentz, 1.0, &self.quad)?;
        t.push(Comparison::abs("lorentzian by quadrature", quad, 4.0, ANALYTIC_TOL));
        let g = FrequencyDistribution::gaussian(2.0)?;
        let exact = 4.0 * (2.0 / PI).sqrt();
        t.push(Comparison::abs("gaussian noiseless", classical_jc(&g, 0.0)?, exact, ANALYTIC_TOL));
        t.push(Comparison::abs("gaussian noiseless, 5 decimals", (noiseless_jc(&g)? * 1e5).round() / 1e5, 3.19154, 1e-12));
        Ok(t)
    }

    fn classical_limit(&self) -> Result<Tally> {
        let mut t = Tally::default();
        let g = self.gauss()?;
        let quantum = self.model(10.0)?.quantum_jc(&g, Prefactor::AsPrinted)?;
        let classical = classical_jc(&g, 10.0)?;
        t.push(Comparison::rel("J_C at temp 10", quantum, classical, CLASSICAL_LIMIT_TOL));
        Ok(t)
    }

    fn high_temperature_action(&self) -> Result<Tally> {
        let mut t = Tally::default();
        let temp = 50.0;
        let m = self.model(temp)?;
        for u in [3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0] {
            t.push(Comparison::rel("action vs linear law", m.s_im(u)?, temp * u / self.mu, HIGH_T_ACTION_TOL));
        }
        Ok(t)
    }

    fn saddle_paths(&self) -> Result<Tally> {
        Ok(saddle_check(self.mu))
    }

    fn dual_route_action(&self) -> Result<Tally> {
        let mut t = Tally::default();
        for temp in [0.0, 1.0, 50.0] {
            let m = self.model(temp)?;
            for u in [0.5, 2.0, 10.0] {
                t.push(Comparison::rel("frequency vs time domain", m.s_im(u)?, m.s_im_time_domain(u)?, DUAL_ROUTE_TOL));
            }
        }
        Ok(t)
    }

    fn zero_temperature(&self) -> Result<Tally> {
        let mut t = Tally::default();
        let g = self.gauss()?;
        let m = self.model(0.0)?;
        let central = m.quantum_jc(&g, Prefactor::AsPrinted)?;
        let band: Vec<f64> = [0.5, 2.0]
            .iter()
            .map(|&f| {
                QuantumModel { params: m.params.scaled_cutoff(f), ..m }.quantum_jc(&g, Prefactor::AsPrinted)
            })
            .collect::<Result<_>>()?;
        t.require(central.is_finite() && central > 0.0, format!("J_C(0) = {central} is not finite and positive"));
        let spread = (band[0] - band[1]).abs().max((band[0] - central).abs()).max((band[1] - central).abs());
        t.push(Comparison::abs("cutoff band width / J_C(0)", spread / central, 0.0, CUTOFF_BAND_TOL));
        Ok(t)
    }

    fn phase_boundary(&self) -> Result<Tally> {
        let mut t = Tally::default();
        let g = self.gauss()?;
        let m = self.model(0.0)?;
        match critical_temperature(40.0, &m, &g, Prefactor::AsPrinted)? {
            CriticalTemperature::Transition { temp, .. } => {
                t.push(Comparison::rel("T_C(40)", temp, 20.0, ASYMPTOTE_TOL));
            }
            CriticalTemperature::NoTransition => t.require(false, "no transition at J = 40".into()),
        }
        for temp0 in [0.2, 1.0, 5.0] {
            let j = m.at_temp(temp0).quantum_jc(&g, Prefactor::AsPrinted)?;
            match critical_temperature(j, &m, &g, Prefactor::AsPrinted)? {
                CriticalTemperature::Transition { temp, .. } => {
                    t.push(Comparison::rel("round trip", temp, temp0, ROUND_TRIP_TOL));
                }
                CriticalTemperature::NoTransition => t.require(false, format!("no transition at J = {j}")),
            }
        }
        Ok(t)
    }
}

/// Barrier height from numerically located extrema of `−σx − J cos x`.
pub fn barrier_oracle(sigma: f64, coupling: f64) -> Result<f64> {
    let potential = |x: f64| -sigma * x - coupling * x.cos();
    let slope = |x: f64| -sigma + coupling * x.sin();
    let x_min = find_root_bracketed(slope, -PI / 2.0, PI / 2.0, 1e-15)?;
    let x_max = find_root_bracketed(slope, PI / 2.0, 1.5 * PI, 1e-15)?;
    Ok(potential(x_max) - potential(x_min))
}

fn washboard_check() -> Tally {
    let mut t = Tally::default();
    for coupling in [1.0, 3.5] {
        for k in 1..=9 {
            let sigma = coupling * k as f64 / 10.0;
            match (washboard_barrier(sigma, coupling), barrier_oracle(sigma, coupling)) {
                (Ok(v), Ok(o)) => t.push(Comparison::rel("barrier vs extrema", v, o, BARRIER_TOL)),
                (a, b) => t.require(false, format!("barrier evaluation failed: {a:?} {b:?}")),
            }
        }
        t.require(
            washboard_barrier(0.0, coupling).ok() == Some(2.0 * coupling),
            "barrier at zero width is not exactly 2J".into(),
        );
        t.require(
            washboard_barrier(coupling, coupling).ok() == Some(0.0),
            "barrier at width J is not exactly 0".into(),
        );
    }
    t
}

/// Second and first derivatives by five-point central stencils.
fn derivatives<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64) {
    let (m2, m1, z, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let second = (-p2 + 16.0 * p1 - 30.0 * z + 16.0 * m1 - m2) / (12.0 * h * h);
    let first = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    (second, first)
}

/// One-sided second-order slopes on each side of `x`.
fn one_sided_slopes<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64) {
    let right = (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
    let left = (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
    (left, right)
}

fn saddle_check(mu: f64) -> Tally {
    let mut t = Tally::default();
    let sc = SaddleScales::with_ratio(mu, 1.0);
    let m = sc.mass;
    let (s, horizon, th0, a0, at, omega) = (1.2, 3.0, 0.3, 0.4, -0.9, 0.8);
    for c in [-1.0, 1.0] {
        for cp in [-1.0, 1.0] {
            let minus = |x: f64| sc.theta_minus(x, s, horizon, th0, c);
            let plus = |x: f64| sc.theta_plus(x, s, horizon, a0, at, omega, c, cp);
            for x in [0.2, 0.6, 1.0, 1.4, 2.0, 2.5, 2.8] {
                let (d2, d1) = derivatives(&minus, x, 2.5e-3);
                t.push(Comparison::abs("minus-path residual", m * d2 - m * d1, 0.0, ODE_RESIDUAL_TOL));
                let (d2, d1) = derivatives(&plus, x, 2.5e-3);
                t.push(Comparison::abs("plus-path residual", m * d2 + m * d1 - omega, 0.0, ODE_RESIDUAL_TOL));
            }
            t.require(minus(0.0) == th0 && minus(horizon) == 0.0, "minus-path boundary values".into());
            t.require(plus(0.0) == a0 && plus(horizon) == at, "plus-path boundary values".into());
            let (l, r) = one_sided_slopes(&minus, s, 1e-4);
            t.push(Comparison::abs("minus-path slope jump", (r - l).abs(), 1.0 / mu, JUMP_TOL));
            let (l, r) = one_sided_slopes(&plus, s, 1e-4);
            t.push(Comparison::abs("plus-path slope jump", (r - l).abs(), 0.5 / mu, JUMP_TOL));
        }
    }
    let stiff = SaddleScales::with_ratio(mu, 1e4);
    for x in [0.05, 0.5, 1.1, 1.3, 2.0, 2.95] {
        let general = stiff.theta_minus(x, s, horizon, th0, -1.0);
        let limit = massless_theta_minus(x, s, horizon, th0, -1.0, mu);
        t.push(Comparison::abs("massless minus path", general, limit, MASSLESS_TOL));
        let general = stiff.theta_plus(x, s, horizon, a0, at, omega, -1.0, 1.0);
        let limit = massless_theta_plus(x, s, horizon, a0, at, omega, -1.0, 1.0, mu);
        t.push(Comparison::abs("massless plus path", general, limit, MASSLESS_TOL));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        let suite = VerifySuite::default();
        for c in [Check::ClassicalAnalytic, Check::SaddlePaths, Check::WashboardBarrier] {
            let r = suite.run_check(c);
            assert!(r.passed, "{}: {}", c.name(), r.detail);
        }
    }

    #[test]
    fn barrier_oracle_midpoint() {
        let v = barrier_oracle(1.0, 2.0).unwrap();
        assert!((v - 2.0 * (3f64.sqrt() + PI / 6.0 - PI / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn tally_reports_failures() {
        let mut t = Tally::default();
        t.push(Comparison::rel("x", 1.05, 1.0, 0.01));
        let (ok, detail) = t.finish();
        assert!(!ok);
        assert!(detail.contains("x:"));
    }
}
