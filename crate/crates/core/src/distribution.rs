use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gauss_hermite, gauss_legendre, gaussian_draw, RngHandle};

/// Serializable description of a frequency distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistributionSpec {
    Gaussian { sigma: f64 },
    Lorentzian { delta: f64 },
    Tabulated { path: PathBuf },
}

impl DistributionSpec {
    pub fn build(&self) -> Result<FrequencyDistribution> {
        match self {
            Self::Gaussian { sigma } => FrequencyDistribution::gaussian(*sigma),
            Self::Lorentzian { delta } => FrequencyDistribution::lorentzian(*delta),
            Self::Tabulated { path } => Ok(FrequencyDistribution::Tabulated(TabulatedDensity::from_csv_path(path)?)),
        }
    }
}

/// Even, unimodal, zero-mean density of natural frequencies.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyDistribution {
    Gaussian { sigma: f64 },
    Lorentzian { delta: f64 },
    Tabulated(TabulatedDensity),
}

impl FrequencyDistribution {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self::Gaussian { sigma })
    }

    pub fn lorentzian(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid(format!("delta must be positive, got {delta}")));
        }
        Ok(Self::Lorentzian { delta })
    }

    pub fn pdf(&self, omega: f64) -> f64 {
        match self {
            Self::Gaussian { sigma } => {
                let z = omega / sigma;
                (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
            }
            Self::Lorentzian { delta } => delta / (PI * (delta * delta + omega * omega)),
            Self::Tabulated(t) => t.pdf(omega),
        }
    }

    /// ∫ g(ω) cos(ωu) dω.
    pub fn characteristic_function(&self, u: f64) -> f64 {
        match self {
            Self::Gaussian { sigma } => (-0.5 * (sigma * u).powi(2)).exp(),
            Self::Lorentzian { delta } => (-delta * u.abs()).exp(),
            Self::Tabulated(t) => t.characteristic_function(u),
        }
    }

    /// Non-increasing bound on `|characteristic_function(u)|` for `u >= 0`.
    pub fn characteristic_envelope(&self, u: f64) -> f64 {
        match self {
            Self::Tabulated(t) => t.characteristic_envelope(u),
            _ => self.characteristic_function(u),
        }
    }

    pub fn sample(&self, rng: &mut RngHandle) -> Result<f64> {
        match self {
            Self::Gaussian { sigma } => Ok(gaussian_draw(rng, 0.0, *sigma)),
            Self::Lorentzian { delta } => Ok(delta * (PI * (rng.uniform() - 0.5)).tan()),
            Self::Tabulated(t) => t.sample(rng),
        }
    }

    /// Nodes and weights for g-weighted averages; weights sum to one.
    pub fn quad_nodes(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        if n < 2 {
            return Err(Error::invalid("quad_nodes needs n >= 2"));
        }
        Ok(match self {
            Self::Gaussian { sigma } => {
                let (x, w) = gauss_hermite(n);
                x.into_iter().zip(w).map(|(x, w)| (sigma * x, w)).collect()
            }
            Self::Lorentzian { delta } => {
                // Legendre rule in quantile space.
                let (x, w) = gauss_legendre(n);
                x.into_iter()
                    .zip(w)
                    .map(|(x, w)| (delta * (0.5 * PI * x).tan(), 0.5 * w))
                    .collect()
            }
            Self::Tabulated(t) => t.quad_nodes(n),
        })
    }

    pub fn density_at_origin(&self) -> f64 {
        self.pdf(0.0)
    }

    /// Characteristic frequency spread: sigma, delta, or the RMS of a table.
    pub fn width(&self) -> f64 {
        match self {
            Self::Gaussian { sigma } => *sigma,
            Self::Lorentzian { delta } => *delta,
            Self::Tabulated(t) => t.rms_width(),
        }
    }

    /// Largest |ω| with non-zero density, if the support is bounded.
    pub fn support_edge(&self) -> Option<f64> {
        match self {
            Self::Tabulated(t) => Some(t.support_edge()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Gaussian { sigma } => format!("gaussian(sigma={sigma})"),
            Self::Lorentzian { delta } => format!("lorentzian(delta={delta})"),
            Self::Tabulated(t) => format!("tabulated({} nodes)", t.x.len()),
        }
    }
}

/// Piecewise-linear even density on the half line, mirrored to negative ω.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedDensity {
    x: Vec<f64>,
    g: Vec<f64>,
    cdf: Option<Vec<f64>>,
}

impl TabulatedDensity {
    /// Builds a density from `(omega, density)` samples.
    ///
    /// The samples are interpolated linearly (zero outside their range) and
    /// normalized. Samples on one half line are mirrored; samples on both
    /// sides are averaged with their mirror image.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let mut t = Self::without_sampling(points)?;
        t.cdf = Some(t.cumulative());
        Ok(t)
    }

    /// Like [`Self::from_points`] but without the cumulative table, so the
    /// result supports averages and quadrature but not sampling.
    pub fn without_sampling(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("tabulated density needs at least two rows"));
        }
        let mut pts = points.to_vec();
        if pts.iter().any(|(w, d)| !w.is_finite() || !d.is_finite() || *d < 0.0) {
            return Err(Error::invalid("tabulated density must be finite and non-negative"));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("tabulated frequencies must be distinct"));
        }
        let raw = |w: f64| -> f64 {
            if w < pts[0].0 || w > pts[pts.len() - 1].0 {
                return 0.0;
            }
            let i = pts.partition_point(|p| p.0 <= w).clamp(1, pts.len() - 1);
            let (x0, y0) = pts[i - 1];
            let (x1, y1) = pts[i];
            y0 + (y1 - y0) * (w - x0) / (x1 - x0)
        };
        let mut x: Vec<f64> = pts.iter().map(|p| p.0.abs()).collect();
        x.push(0.0);
        x.sort_by(f64::total_cmp);
        x.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
        // One side of the raw table may end before the other; the mirrored
        // density then jumps there and needs a node on each side of the jump.
        let inner = pts[0].0.abs().min(pts[pts.len() - 1].0.abs());
        if inner > 0.0 && inner < x[x.len() - 1] {
            x.push(inner * (1.0 + 1e-12));
            x.sort_by(f64::total_cmp);
        }
        // A table on one half line is mirrored; a two-sided one is averaged.
        let one_sided = pts[0].0 >= 0.0 || pts[pts.len() - 1].0 <= 0.0;
        let side = if pts[0].0 >= 0.0 { 1.0 } else { -1.0 };
        let mut g: Vec<f64> = x
            .iter()
            .map(|&w| if one_sided { raw(side * w) } else { 0.5 * (raw(w) + raw(-w)) })
            .collect();
        let half_mass: f64 = x.windows(2).zip(g.windows(2)).map(|(xw, gw)| 0.5 * (xw[1] - xw[0]) * (gw[0] + gw[1])).sum();
        if !(half_mass > 0.0) {
            return Err(Error::invalid("tabulated density has zero mass"));
        }
        for v in &mut g {
            *v /= 2.0 * half_mass;
        }
        let peak = g.iter().cloned().fold(0.0, f64::max);
        if g.windows(2).any(|w| w[1] > w[0] + 1e-9 * peak) {
            return Err(Error::invalid(
                "tabulated density is not unimodal about zero after symmetrization",
            ));
        }
        Ok(Self { x, g, cdf: None })
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut points = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec?;
            let parse = |k: usize| rec.get(k).and_then(|s| s.parse::<f64>().ok());
            match (parse(0), parse(1)) {
                (Some(w), Some(d)) => points.push((w, d)),
                // A non-numeric first row is a header.
                _ if i == 0 => continue,
                _ => {
                    return Err(Error::invalid(format!(
                        "{}: row {} is not a numeric (omega, density) pair",
                        path.display(),
                        i + 1
                    )))
                }
            }
        }
        Self::from_points(&points)
    }

    fn cumulative(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.x.len()];
        for i in 1..self.x.len() {
            c[i] = c[i - 1] + (self.x[i] - self.x[i - 1]) * (self.g[i] + self.g[i - 1]);
        }
        c
    }

    pub fn support_edge(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub fn pdf(&self, omega: f64) -> f64 {
        let w = omega.abs();
        if w > self.support_edge() {
            return 0.0;
        }
        let i = self.x.partition_point(|&v| v <= w).clamp(1, self.x.len() - 1);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        self.g[i - 1] + (self.g[i] - self.g[i - 1]) * (w - x0) / (x1 - x0)
    }

    pub fn characteristic_function(&self, u: f64) -> f64 {
        let mut total = 0.0;
        for i in 1..self.x.len() {
            let (a, b) = (self.x[i - 1], self.x[i]);
            let h = 0.5 * (b - a);
            let m = 0.5 * (a + b);
            let gm = 0.5 * (self.g[i - 1] + self.g[i]);
            let slope = (self.g[i] - self.g[i - 1]) / (b - a);
            let uh = u * h;
            total += 2.0 * h * (gm * (u * m).cos() * sinc(uh) - slope * h * (u * m).sin() * bessel_j1(uh));
        }
        2.0 * total
    }

    /// `min(1, A/u + B/u²)` with `A` the summed density jumps and `B` the
    /// summed slope changes over the whole line.
    fn characteristic_envelope(&self, u: f64) -> f64 {
        let u = u.abs();
        let k = self.x.len() - 1;
        let slopes: Vec<f64> = (1..=k).map(|i| (self.g[i] - self.g[i - 1]) / (self.x[i] - self.x[i - 1])).collect();
        let jumps = 2.0 * self.g[k];
        let mut kinks = 2.0 * slopes[0].abs() + 2.0 * slopes[k - 1].abs();
        for w in slopes.windows(2) {
            kinks += 2.0 * (w[1] - w[0]).abs();
        }
        if u == 0.0 {
            return 1.0;
        }
        (jumps / u + kinks / (u * u)).min(1.0)
    }

    fn rms_width(&self) -> f64 {
        let mut m2 = 0.0;
        for i in 1..self.x.len() {
            let (a, b) = (self.x[i - 1], self.x[i]);
            let (ga, gb) = (self.g[i - 1], self.g[i]);
            // Exact ∫ ω² g over a linear segment.
            let slope = (gb - ga) / (b - a);
            let c0 = ga - slope * a;
            m2 += c0 * (b.powi(3) - a.powi(3)) / 3.0 + slope * (b.powi(4) - a.powi(4)) / 4.0;
        }
        (2.0 * m2).sqrt()
    }

    fn sample(&self, rng: &mut RngHandle) -> Result<f64> {
        let cdf = self.cdf.as_ref().ok_or(Error::TabulatedUnsupported)?;
        let sign = if rng.uniform() < 0.5 { -1.0 } else { 1.0 };
        let target = rng.uniform() * cdf[cdf.len() - 1];
        let i = cdf.partition_point(|&c| c <= target).clamp(1, cdf.len() - 1);
        let (a, b) = (self.x[i - 1], self.x[i]);
        let (ga, gb) = (self.g[i - 1], self.g[i]);
        let need = (target - cdf[i - 1]) / 2.0;
        // Solve ga*t + (gb-ga)/(2(b-a)) t^2 = need for t in [0, b-a].
        let k = 0.5 * (gb - ga) / (b - a);
        let t = if k.abs() < 1e-14 * ga.max(1e-300) / (b - a) {
            need / ga
        } else {
            let disc = (ga * ga + 4.0 * k * need).max(0.0);
            2.0 * need / (ga + disc.sqrt())
        };
        Ok(sign * (a + t.clamp(0.0, b - a)))
    }

    fn quad_nodes(&self, n: usize) -> Vec<(f64, f64)> {
        let segments = self.x.len() - 1;
        let per = (n / (2 * segments)).max(2);
        let (gx, gw) = gauss_legendre(per);
        let mut out = Vec::with_capacity(2 * segments * per);
        for i in 1..self.x.len() {
            let (a, b) = (self.x[i - 1], self.x[i]);
            let h = 0.5 * (b - a);
            for (t, w) in gx.iter().zip(&gw) {
                let omega = a + h * (1.0 + t);
                let weight = w * h * self.pdf(omega);
                out.push((omega, weight));
                out.push((-omega, weight));
            }
        }
        out.sort_by(|p, q| p.0.total_cmp(&q.0));
        out
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Spherical Bessel function j1(x) = (sin x - x cos x) / x².
fn bessel_j1(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        x / 3.0 * (1.0 - x2 / 10.0)
    } else {
        (x.sin() - x * x.cos()) / (x * x)
    }
}
