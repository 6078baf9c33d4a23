use std::fmt;
use std::path::{Path, PathBuf};

use clap::CommandFactory;
use kuramotoq::classical::{
    classical_jc_with, estimate_critical_coupling, simulate_stationary_r, simulate_trajectory, CurvePoint, SimConfig,
    SimModel,
};
use kuramotoq::numerics::{QuadratureConfig, RngHandle};
use kuramotoq::params::default_cutoff;
use kuramotoq::phase_diagram::{phase_diagram, sweep_sigma, sweep_temperature, washboard_barrier};
use kuramotoq::quantum::{Prefactor, ProfileModel, QuantumModel};
use kuramotoq::verify::VerifySuite;
use kuramotoq::{DistributionSpec, Error, FrequencyDistribution, PhysicalParams};
use serde_json::json;

use crate::args::{
    Cli, Command, CouplingGridArgs, DistArgs, DistKind, PrefactorArg, ProfileArg, QuantumArgs, SimArgs, SimModelArg,
    TempGridArgs,
};
use crate::config::{ConfigError, LoadedConfig};
use crate::output;

const DEFAULT_MU: f64 = 7.0;
const DEFAULT_SIGMA: f64 = 2.0;
const DEFAULT_SEED: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Malformed command line; clap prints usage and exits with 2.
    Usage(clap::Error),
    Config(ConfigError),
    Compute(Error),
    Io(PathBuf, std::io::Error),
    /// Some verification checks failed; the report is already printed.
    ChecksFailed,
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(path.to_path_buf(), e)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Compute(Error::InvalidParameter(_) | Error::TabulatedUnsupported) => 2,
            CliError::Compute(_) | CliError::Io(..) | CliError::ChecksFailed => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::ChecksFailed => f.write_str("verification failed"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

fn usage_error(subcommand: &str, message: String) -> CliError {
    let mut cmd = Cli::command();
    cmd.build();
    let sub = cmd.find_subcommand_mut(subcommand).expect("known subcommand");
    CliError::Usage(sub.error(clap::error::ErrorKind::MissingRequiredArgument, message))
}

fn warn(message: impl fmt::Display) {
    eprintln!("warning: {message}");
}

/// Global settings shared by every subcommand.
struct Context {
    file: LoadedConfig,
    output: Option<PathBuf>,
    seed: u64,
}

impl Context {
    fn check(&self, key: &str, ok: bool, message: impl fmt::Display) -> Result<(), CliError> {
        if ok {
            Ok(())
        } else {
            Err(self.file.error_at(key, message).into())
        }
    }

    fn positive(&self, key: &str, v: f64) -> Result<f64, CliError> {
        self.check(key, v > 0.0 && v.is_finite(), format!("{key} must be positive, got {v}"))?;
        Ok(v)
    }

    fn non_negative(&self, key: &str, v: f64) -> Result<f64, CliError> {
        self.check(key, v >= 0.0 && v.is_finite(), format!("{key} must be >= 0, got {v}"))?;
        Ok(v)
    }

    fn ascending(&self, key: &str, v: &[f64], min: f64) -> Result<(), CliError> {
        self.check(key, !v.is_empty(), format!("{key} must not be empty"))?;
        self.check(
            key,
            v.iter().all(|x| x.is_finite() && *x >= min) && v.windows(2).all(|w| w[1] > w[0]),
            format!("{key} must be strictly ascending and >= {min}"),
        )
    }

    fn distribution(&self, args: &DistArgs) -> Result<(DistributionSpec, FrequencyDistribution), CliError> {
        let from_flags = args.dist.is_some() || args.sigma.is_some() || args.delta.is_some() || args.table.is_some();
        let spec = if from_flags {
            let given = [
                (DistKind::Gaussian, args.sigma.is_some()),
                (DistKind::Lorentzian, args.delta.is_some()),
                (DistKind::Tabulated, args.table.is_some()),
            ];
            let named: Vec<DistKind> = given.iter().filter(|g| g.1).map(|g| g.0).collect();
            if named.len() > 1 {
                return Err(ConfigError("give only one of --sigma, --delta, --table".into()).into());
            }
            let kind = match (args.dist, named.first()) {
                (Some(k), Some(&n)) if k != n => {
                    return Err(ConfigError(format!("--dist {k:?} does not take that width flag").to_lowercase()).into())
                }
                (Some(k), _) => k,
                (None, Some(&n)) => n,
                (None, None) => unreachable!("some distribution flag was given"),
            };
            match kind {
                DistKind::Gaussian => DistributionSpec::Gaussian {
                    sigma: args.sigma.unwrap_or(DEFAULT_SIGMA),
                },
                DistKind::Lorentzian => DistributionSpec::Lorentzian {
                    delta: args.delta.ok_or_else(|| ConfigError("--dist lorentzian needs --delta".into()))?,
                },
                DistKind::Tabulated => DistributionSpec::Tabulated {
                    path: args.table.clone().ok_or_else(|| ConfigError("--dist tabulated needs --table".into()))?,
                },
            }
        } else {
            self.file
                .values
                .distribution
                .clone()
                .unwrap_or(DistributionSpec::Gaussian { sigma: DEFAULT_SIGMA })
        };
        match &spec {
            DistributionSpec::Gaussian { sigma } => {
                self.positive("sigma", *sigma)?;
            }
            DistributionSpec::Lorentzian { delta } => {
                self.positive("delta", *delta)?;
            }
            DistributionSpec::Tabulated { .. } => {}
        }
        let dist = spec.build().map_err(|e| match e {
            Error::InvalidParameter(m) => CliError::from(self.file.error_at("path", m)),
            Error::Io(io) => self.file.error_at("path", io).into(),
            Error::Csv(c) => self.file.error_at("path", c).into(),
            other => other.into(),
        })?;
        Ok((spec, dist))
    }

    fn quadrature(&self, rel_tol: Option<f64>) -> Result<QuadratureConfig, CliError> {
        let mut q = self.file.values.quadrature.unwrap_or_default();
        if let Some(r) = rel_tol {
            q.rel_tol = r;
        }
        q.validate().map_err(|e| CliError::from(self.file.error_at("rel_tol", e)))?;
        Ok(q)
    }

    fn quantum_model(&self, args: &QuantumArgs, temp: f64) -> Result<QuantumModel, CliError> {
        let p = &self.file.values.params;
        let mu = self.positive("mu", args.mu.or(p.mu).unwrap_or(DEFAULT_MU))?;
        let cutoff = self.positive("cutoff", args.cutoff.or(p.cutoff).unwrap_or(default_cutoff(mu)))?;
        let params = PhysicalParams::with_cutoff(mu, temp, cutoff)?;
        let profile_flag = args.profile.map(|p| match p {
            ProfileArg::MasslessStep => ProfileModel::MasslessStep,
            ProfileArg::FiniteDamping => ProfileModel::FiniteDamping,
        });
        let profile = profile_flag.or(self.file.values.profile).unwrap_or_default();
        Ok(QuantumModel::new(params)
            .with_profile(profile)
            .with_quadrature(self.quadrature(args.rel_tol)?))
    }

    fn prefactor(&self, args: &QuantumArgs) -> Prefactor {
        args.prefactor
            .map(|p| match p {
                PrefactorArg::AsPrinted => Prefactor::AsPrinted,
                PrefactorArg::ExactSine => Prefactor::ExactSine,
            })
            .or(self.file.values.prefactor)
            .unwrap_or_default()
    }

    fn temp_grid(&self, args: &TempGridArgs) -> Result<Vec<f64>, CliError> {
        if let Some(t) = args.temps.clone().or_else(|| self.file.values.grid.temps.clone()) {
            self.ascending("temps", &t, 0.0)?;
            return Ok(t);
        }
        let lo = self.positive("temp_min", args.temp_min.unwrap_or(0.01))?;
        let hi = self.positive("temp_max", args.temp_max.unwrap_or(30.0))?;
        let n = args.temp_points.unwrap_or(24);
        self.check("temp_max", hi > lo, "temp-max must exceed temp-min")?;
        self.check("temp_points", n >= 2, "temp-points must be at least 2")?;
        let mut grid = if args.no_zero { vec![] } else { vec![0.0] };
        grid.extend(log_grid(lo, hi, n));
        Ok(grid)
    }

    fn coupling_grid(&self, args: &CouplingGridArgs, default: (f64, f64, usize), log: bool) -> Result<Vec<f64>, CliError> {
        if let Some(j) = args.couplings.clone().or_else(|| self.file.values.grid.couplings.clone()) {
            self.ascending("couplings", &j, f64::MIN_POSITIVE)?;
            return Ok(j);
        }
        let lo = self.positive("j_min", args.j_min.unwrap_or(default.0))?;
        let hi = self.positive("j_max", args.j_max.unwrap_or(default.1))?;
        let n = args.j_points.unwrap_or(default.2);
        self.check("j_max", hi > lo, "j-max must exceed j-min")?;
        self.check("j_points", n >= 2, "j-points must be at least 2")?;
        Ok(if log { log_grid(lo, hi, n) } else { lin_grid(lo, hi, n) })
    }

    fn sim_model(&self, args: &SimArgs) -> Result<SimModel, CliError> {
        let file = self.file.values.sim.model;
        Ok(match args.model {
            Some(SimModelArg::Massless) => SimModel::Massless,
            Some(SimModelArg::Massive) => {
                let (m0, g0) = match file {
                    Some(SimModel::Massive { mass, damping }) => (Some(mass), Some(damping)),
                    _ => (None, None),
                };
                SimModel::Massive {
                    mass: self.positive("mass", args.mass.or(m0).unwrap_or(1.0))?,
                    damping: self.positive("damping", args.damping.or(g0).unwrap_or(1.0))?,
                }
            }
            None => match file {
                Some(SimModel::Massive { mass, damping }) => SimModel::Massive {
                    mass: self.positive("mass", args.mass.unwrap_or(mass))?,
                    damping: self.positive("damping", args.damping.unwrap_or(damping))?,
                },
                _ => SimModel::Massless,
            },
        })
    }

    /// Integration settings; defaults follow the fastest and slowest couplings.
    fn sim_config(&self, args: &SimArgs, model: SimModel, couplings: &[f64], noise: f64) -> Result<SimConfig, CliError> {
        let s = &self.file.values.sim;
        let j_max = couplings.iter().cloned().fold(0.0, f64::max);
        let j_min = couplings.iter().cloned().fold(f64::INFINITY, f64::min);
        let cfg = SimConfig {
            dt: self.positive("dt", args.dt.or(s.dt).unwrap_or_else(|| model.default_dt(j_max.max(1e-12))))?,
            t_burn: self.non_negative(
                "t_burn",
                args.t_burn.or(s.t_burn).unwrap_or_else(|| model.default_burn_in(j_min, noise)),
            )?,
            t_avg: self.positive("t_avg", args.t_avg.or(s.t_avg).unwrap_or(100.0))?,
            n_realizations: args.realizations.or(s.n_realizations).unwrap_or(4),
            initial: s.initial.clone().unwrap_or_default(),
        };
        self.check("n_realizations", cfg.n_realizations >= 1, "need at least one realization")?;
        Ok(cfg)
    }

    fn output_path(&self) -> Option<&Path> {
        self.output.as_deref()
    }
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = hi / lo;
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo * ratio.powf(k as f64 / (n - 1) as f64) })
        .collect()
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
        .collect()
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => LoadedConfig::load(p)?,
        None => LoadedConfig::default(),
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(ConfigError("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(format!("cannot start {n} worker threads: {e}")))?;
    }
    let ctx = Context {
        output: cli.output.clone().or_else(|| file.values.output.clone()),
        seed: cli.seed.or(file.values.seed).unwrap_or(DEFAULT_SEED),
        file,
    };
    match cli.command {
        Command::ClassicalJc { dist, noise } => classical(&ctx, &dist, noise),
        Command::QuantumJc { dist, quantum, temp } => quantum_jc(&ctx, &dist, &quantum, temp),
        Command::SweepTemperature { dist, quantum, temps } => temperature_sweep(&ctx, &dist, &quantum, &temps),
        Command::SweepSigma { quantum, temps, sigmas } => sigma_sweep(&ctx, &quantum, &temps, sigmas),
        Command::PhaseDiagram { dist, quantum, couplings } => boundary(&ctx, &dist, &quantum, &couplings),
        Command::Simulate {
            dist,
            sim,
            coupling,
            noise,
            trajectory,
            stride,
        } => simulate(&ctx, &dist, &sim, coupling, noise, trajectory, stride),
        Command::EstimateJc {
            dist,
            sim,
            noise,
            sizes,
            couplings,
        } => estimate(&ctx, &dist, &sim, noise, sizes, &couplings),
        Command::Barrier { sigma, coupling } => barrier(&ctx, sigma, coupling),
        Command::Verify { quick, perturb_action } => verify(quick, perturb_action),
    }
}

fn classical(ctx: &Context, dist: &DistArgs, noise: Option<f64>) -> Result<(), CliError> {
    let Some(noise) = noise.or(ctx.file.values.noise) else {
        return Err(usage_error("classical-jc", "missing noise strength: pass --noise D".into()));
    };
    let noise = ctx.non_negative("noise", noise)?;
    let (_, dist) = ctx.distribution(dist)?;
    let jc = classical_jc_with(&dist, noise, &ctx.quadrature(None)?)?;
    println!("{jc:?}");
    Ok(())
}

fn quantum_jc(ctx: &Context, dist: &DistArgs, q: &QuantumArgs, temp: Option<f64>) -> Result<(), CliError> {
    let Some(temp) = temp.or(ctx.file.values.params.temp) else {
        return Err(usage_error("quantum-jc", "missing temperature: pass --temp T".into()));
    };
    let temp = ctx.non_negative("temp", temp)?;
    let model = ctx.quantum_model(q, temp)?;
    let (_, dist) = ctx.distribution(dist)?;
    model.params.warnings().iter().for_each(warn);
    let prefactor = ctx.prefactor(q);
    let jc = model.quantum_jc(&dist, prefactor)?;
    println!("{jc:?}");
    if temp == 0.0 {
        let at = |f: f64| {
            QuantumModel {
                params: model.params.scaled_cutoff(f),
                ..model
            }
            .quantum_jc(&dist, prefactor)
        };
        let (half, double) = (at(0.5)?, at(2.0)?);
        println!("cutoff_x0.5,cutoff_x1,cutoff_x2");
        println!("{half:?},{jc:?},{double:?}");
    }
    Ok(())
}

fn quantum_meta(model: &QuantumModel, prefactor: Prefactor, spec: Option<&DistributionSpec>) -> serde_json::Value {
    json!({
        "params": model.params,
        "distribution": spec,
        "prefactor": prefactor,
        "profile": model.profile,
        "quadrature": model.quad,
    })
}

fn temperature_sweep(ctx: &Context, dist: &DistArgs, q: &QuantumArgs, temps: &TempGridArgs) -> Result<(), CliError> {
    let grid = ctx.temp_grid(temps)?;
    let model = ctx.quantum_model(q, 0.0)?;
    let (spec, dist) = ctx.distribution(dist)?;
    model.params.at_temp(grid[grid.len() - 1]).warnings().iter().for_each(warn);
    let prefactor = ctx.prefactor(q);
    let sweep = sweep_temperature(&model, &dist, &grid, prefactor)?;
    sweep.warnings.iter().for_each(warn);
    output::write_sweep(ctx.output_path(), &sweep)?;
    if let Some(path) = ctx.output_path() {
        let mut meta = quantum_meta(&model, prefactor, Some(&spec));
        meta["axis"] = json!(sweep.axis);
        meta["warnings"] = json!(sweep.warnings);
        let meta = output::metadata("sweep-temperature", ctx.seed, meta);
        output::write_companions(path, &meta, output::TEMPERATURE_LABELS)?;
    }
    Ok(())
}

fn sigma_sweep(ctx: &Context, q: &QuantumArgs, temps: &TempGridArgs, sigmas: Option<Vec<f64>>) -> Result<(), CliError> {
    let grid = ctx.temp_grid(temps)?;
    let sigmas = sigmas
        .or_else(|| ctx.file.values.grid.sigmas.clone())
        .unwrap_or_else(|| vec![1.0, 2.0, 4.0]);
    ctx.ascending("sigmas", &sigmas, f64::MIN_POSITIVE)?;
    let model = ctx.quantum_model(q, 0.0)?;
    model.params.at_temp(grid[grid.len() - 1]).warnings().iter().for_each(warn);
    let prefactor = ctx.prefactor(q);
    let (sweep, noiseless) = sweep_sigma(&model, &sigmas, &grid, prefactor)?;
    sweep.warnings.iter().for_each(warn);
    output::write_sweep(ctx.output_path(), &sweep)?;
    if let Some(path) = ctx.output_path() {
        output::write_rows(Some(&output::companion(path, "noiseless.csv")), &noiseless)?;
        let mut meta = quantum_meta(&model, prefactor, None);
        meta["axis"] = json!(sweep.axis);
        meta["distribution"] = json!({"kind": "gaussian", "sigmas": sigmas});
        meta["noiseless"] = json!(noiseless);
        meta["warnings"] = json!(sweep.warnings);
        let meta = output::metadata("sweep-sigma", ctx.seed, meta);
        output::write_companions(path, &meta, output::SIGMA_LABELS)?;
    }
    Ok(())
}

fn boundary(ctx: &Context, dist: &DistArgs, q: &QuantumArgs, couplings: &CouplingGridArgs) -> Result<(), CliError> {
    let grid = ctx.coupling_grid(couplings, (1.0, 60.0, 24), true)?;
    let model = ctx.quantum_model(q, 0.0)?;
    let (spec, dist) = ctx.distribution(dist)?;
    model.params.warnings().iter().for_each(warn);
    let prefactor = ctx.prefactor(q);
    let diagram = phase_diagram(&model, &dist, &grid, prefactor)?;
    diagram.warnings.iter().for_each(warn);
    output::write_sweep(ctx.output_path(), &diagram)?;
    if let Some(path) = ctx.output_path() {
        let mut meta = quantum_meta(&model, prefactor, Some(&spec));
        meta["axis"] = json!(diagram.axis);
        meta["warnings"] = json!(diagram.warnings);
        let meta = output::metadata("phase-diagram", ctx.seed, meta);
        output::write_companions(path, &meta, output::BOUNDARY_LABELS)?;
    }
    Ok(())
}

fn simulation_inputs(
    ctx: &Context,
    sim: &SimArgs,
    noise: Option<f64>,
) -> Result<(SimModel, f64, usize), CliError> {
    let noise = ctx.non_negative("noise", noise.or(ctx.file.values.noise).unwrap_or(0.0))?;
    let model = ctx.sim_model(sim)?;
    let n = sim.n.or(ctx.file.values.sim.n).unwrap_or(1000);
    ctx.check("n", n >= 1, "need at least one rotor")?;
    Ok((model, noise, n))
}

fn simulate(
    ctx: &Context,
    dist: &DistArgs,
    sim: &SimArgs,
    coupling: Option<Vec<f64>>,
    noise: Option<f64>,
    trajectory: bool,
    stride: Option<usize>,
) -> Result<(), CliError> {
    let Some(couplings) = coupling.or_else(|| ctx.file.values.coupling.map(|j| vec![j])) else {
        return Err(usage_error("simulate", "missing coupling: pass --coupling J".into()));
    };
    ctx.check(
        "coupling",
        !couplings.is_empty() && couplings.iter().all(|j| j.is_finite() && *j >= 0.0),
        "couplings must be finite and >= 0",
    )?;
    let (model, noise, n) = simulation_inputs(ctx, sim, noise)?;
    let (_, dist) = ctx.distribution(dist)?;
    let cfg = ctx.sim_config(sim, model, &couplings, noise)?;
    let rng = RngHandle::new(ctx.seed);
    if trajectory {
        ctx.check("coupling", couplings.len() == 1, "trajectory mode takes a single coupling")?;
        let stride = stride.or(ctx.file.values.sim.trajectory_stride).unwrap_or(10);
        let points = simulate_trajectory(&dist, couplings[0], noise, model, n, &cfg, stride, &rng)?;
        return output::write_rows(ctx.output_path(), &points);
    }
    let rows = couplings
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let res = simulate_stationary_r(&dist, j, noise, model, n, &cfg, &rng.derive(k as u64))?;
            Ok(CurvePoint {
                coupling: j,
                n,
                r_mean: res.r_mean,
                r_stderr: res.r_stderr,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    output::write_rows(ctx.output_path(), &rows)
}

fn estimate(
    ctx: &Context,
    dist: &DistArgs,
    sim: &SimArgs,
    noise: Option<f64>,
    sizes: Option<Vec<usize>>,
    couplings: &CouplingGridArgs,
) -> Result<(), CliError> {
    let (model, noise, _) = simulation_inputs(ctx, sim, noise)?;
    let (_, dist) = ctx.distribution(dist)?;
    let sizes = sizes
        .or_else(|| ctx.file.values.grid.sizes.clone())
        .unwrap_or_else(|| vec![500, 2000]);
    ctx.check(
        "sizes",
        sizes.len() >= 2 && sizes[0] > 0 && sizes.windows(2).all(|w| w[1] > w[0]),
        "sizes must be ascending with at least two entries",
    )?;
    // Centre the default grid on the massless mean-field prediction.
    let centre = classical_jc_with(&dist, noise, &ctx.quadrature(None)?)?;
    let grid = ctx.coupling_grid(couplings, (0.6 * centre, 1.4 * centre, 11), false)?;
    let cfg = ctx.sim_config(sim, model, &grid, noise)?;
    let rng = RngHandle::new(ctx.seed);
    let est = estimate_critical_coupling(&dist, noise, model, &sizes, &grid, &cfg, &rng)?;
    if let Some(path) = ctx.output_path() {
        output::write_rows(Some(path), &est.curves)?;
    }
    println!("jc,uncertainty");
    println!("{:?},{:?}", est.jc, est.uncertainty);
    Ok(())
}

fn barrier(ctx: &Context, sigma: Option<f64>, coupling: Option<f64>) -> Result<(), CliError> {
    let Some(sigma) = sigma.or(ctx.file.values.sigma) else {
        return Err(usage_error("barrier", "missing frequency mismatch: pass --sigma".into()));
    };
    let Some(coupling) = coupling.or(ctx.file.values.coupling) else {
        return Err(usage_error("barrier", "missing coupling: pass --coupling J".into()));
    };
    ctx.non_negative("sigma", sigma)?;
    ctx.positive("coupling", coupling)?;
    println!("{:?}", washboard_barrier(sigma, coupling)?);
    Ok(())
}

fn verify(quick: bool, perturb: Option<f64>) -> Result<(), CliError> {
    let suite = VerifySuite {
        action_scale: perturb.unwrap_or(1.0),
        ..VerifySuite::default()
    };
    let mut all = true;
    for report in suite.run(quick) {
        let tag = if report.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} ({:.2}s): {}", report.check.name(), report.seconds, report.detail);
        all &= report.passed;
    }
    if all {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_their_endpoints() {
        let g = log_grid(0.01, 30.0, 24);
        assert_eq!((g[0], g[23]), (0.01, 30.0));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(lin_grid(2.0, 6.0, 5), vec![2.0, 3.0, 4.0, 5.0, 6.0]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config(ConfigError("x".into())).exit_code(), 2);
        assert_eq!(CliError::Compute(Error::InvalidParameter("x".into())).exit_code(), 2);
        let nc = Error::NonConvergence {
            context: "x",
            estimate: 0.0,
            error: 1.0,
        };
        assert_eq!(CliError::Compute(nc).exit_code(), 1);
        assert_eq!(CliError::ChecksFailed.exit_code(), 1);
    }
}
