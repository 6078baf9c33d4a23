use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accuracy contract shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of live panels in one adaptive integration.
    pub max_subdivisions: usize,
    /// A semi-infinite integrand is truncated once it falls below this
    /// fraction of the largest magnitude seen.
    pub truncation_epsilon: f64,
    /// First probe offset used when searching for the decay horizon.
    pub probe_step: f64,
    /// Number of geometric probes before a semi-infinite integral gives up.
    pub probe_budget: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_subdivisions: 50_000,
            truncation_epsilon: 1e-10,
            probe_step: 1.0,
            probe_budget: 48,
        }
    }
}

impl QuadratureConfig {
    /// Looser tolerance for integrals nested inside other integrals.
    pub fn nested() -> Self {
        Self {
            rel_tol: 1e-6,
            ..Self::default()
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::invalid(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::invalid("max_subdivisions must be >= 1"));
        }
        if !(self.truncation_epsilon > 0.0 && self.truncation_epsilon < 1.0) {
            return Err(Error::invalid(format!(
                "truncation_epsilon must lie in (0, 1), got {}",
                self.truncation_epsilon
            )));
        }
        if !(self.probe_step > 0.0) || self.probe_budget < 2 {
            return Err(Error::invalid("probe_step must be > 0 and probe_budget >= 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiInfiniteIntegral {
    pub value: f64,
    pub abs_error: f64,
    /// Point where the integrand was truncated.
    pub upper: f64,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut resabs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Panel {
        a,
        b,
        value,
        error,
        resabs,
    }
}

fn check_finite(p: &Panel) -> Result<()> {
    if p.value.is_finite() && p.error.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("integrand is not finite on [{}, {}]", p.a, p.b)))
    }
}

/// Adaptive 21-point Gauss-Kronrod integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    integrate_breakpoints(f, &[a, b], cfg)
}

/// Adaptive integration over consecutive panels `points[i]..points[i + 1]`.
///
/// Supplying breakpoints at kinks or at every half period of an oscillation
/// lets the error estimator start from panels on which the integrand is smooth.
pub fn integrate_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    cfg.validate()?;
    if points.len() < 2 {
        return Err(Error::invalid("integration needs at least two breakpoints"));
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("integration limits must be finite"));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("integration breakpoints must be ascending"));
    }

    let mut heap = BinaryHeap::with_capacity(points.len() * 2);
    let mut evaluations = 0;
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let p = gauss_kronrod(&mut f, w[0], w[1]);
        evaluations += 21;
        check_finite(&p)?;
        total_err += p.error;
        total_abs += p.resabs;
        heap.push(p);
    }
    if heap.is_empty() {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            evaluations,
        });
    }

    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        let roundoff_floor = 100.0 * f64::EPSILON * total_abs;
        if total_err <= tol || total_err <= roundoff_floor {
            return Ok(Integral {
                value,
                abs_error: total_err,
                evaluations,
            });
        }
        if heap.len() >= cfg.max_subdivisions.max(points.len()) {
            return Err(Error::NonConvergence {
                context: "adaptive quadrature",
                estimate: value,
                error: total_err,
            });
        }

        // Bisect a batch of the worst panels before re-summing.
        let batch = (heap.len() / 8).clamp(1, 64);
        for _ in 0..batch {
            let Some(worst) = heap.pop() else { break };
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                return Err(Error::NonConvergence {
                    context: "adaptive quadrature (panel below machine resolution)",
                    estimate: value,
                    error: total_err,
                });
            }
            let left = gauss_kronrod(&mut f, worst.a, mid);
            let right = gauss_kronrod(&mut f, mid, worst.b);
            evaluations += 42;
            check_finite(&left)?;
            check_finite(&right)?;
            total_err += left.error + right.error - worst.error;
            total_abs += left.resabs + right.resabs - worst.resabs;
            heap.push(left);
            heap.push(right);
        }
        total_err = total_err.max(0.0);
    }
}

/// Locates the point beyond which a decaying integrand is negligible.
///
/// Probes `a + step * (2^k - 1)` until `|f|` has dropped below
/// `truncation_epsilon` times the largest magnitude seen and is still falling,
/// then bisects the last probe interval for the crossing.
pub fn decay_horizon<F: FnMut(f64) -> f64>(mut f: F, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let mut fmax = f(a).abs();
    let mut prev_x = a;
    let mut prev_f = fmax;
    for k in 1..cfg.probe_budget {
        let x = a + cfg.probe_step * ((1u64 << k.min(62)) as f64 - 1.0);
        let fx = f(x).abs();
        if !fx.is_finite() {
            return Err(Error::invalid(format!("integrand is not finite at {x}")));
        }
        fmax = fmax.max(fx);
        if fmax == 0.0 && k >= 2 {
            return Ok(x);
        }
        let threshold = cfg.truncation_epsilon * fmax;
        if fx <= threshold && fx <= prev_f {
            let (mut lo, mut hi) = (prev_x, x);
            if prev_f <= threshold {
                return Ok(hi);
            }
            for _ in 0..20 {
                let mid = 0.5 * (lo + hi);
                if f(mid).abs() <= threshold {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        prev_x = x;
        prev_f = fx;
    }
    Err(Error::NonConvergence {
        context: "semi-infinite integrand did not decay",
        estimate: prev_f,
        error: fmax,
    })
}

/// Integral over `[a, inf)` by decay-detected truncation.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<SemiInfiniteIntegral> {
    let upper = decay_horizon(&mut f, a, cfg)?;
    let mut points = vec![a];
    let mut k = 0;
    loop {
        let x = a + cfg.probe_step * ((1u64 << k) as f64);
        if x >= upper {
            break;
        }
        points.push(x);
        k += 1;
    }
    points.push(upper);
    let integral = integrate_breakpoints(f, &points, cfg)?;
    Ok(SemiInfiniteIntegral {
        value: integral.value,
        abs_error: integral.abs_error,
        upper,
    })
}
