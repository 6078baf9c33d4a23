//! Empirical critical coupling from finite-size order-parameter curves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sim::{simulate_stationary_r, SimConfig, SimModel};
use crate::distribution::FrequencyDistribution;
use crate::error::{Error, Result};
use crate::numerics::RngHandle;

/// Minimum multiple of the incoherent floor `1/sqrt(N)` that counts as ordered.
pub const THRESHOLD_MULTIPLE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "J")]
    pub coupling: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub r_mean: f64,
    pub r_stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalEstimate {
    pub jc: f64,
    pub uncertainty: f64,
    /// Crossing location of each consecutive size pair.
    pub pair_crossings: Vec<f64>,
    /// All simulated points, grouped by size then coupling.
    pub curves: Vec<CurvePoint>,
}

/// Locates the coupling where the scaled curves `r N^{1/4}` of consecutive
/// system sizes cross.
///
/// Below threshold `r ~ N^{-1/2}` so the larger system lies lower; above it
/// `r` saturates and the larger system lies higher. A crossing only counts
/// if the larger system's `r` exceeds `THRESHOLD_MULTIPLE / sqrt(N)` there.
#[allow(clippy::too_many_arguments)]
pub fn estimate_critical_coupling(
    dist: &FrequencyDistribution,
    noise: f64,
    model: SimModel,
    sizes: &[usize],
    couplings: &[f64],
    cfg: &SimConfig,
    rng: &RngHandle,
) -> Result<CriticalEstimate> {
    if couplings.len() < 4 || couplings.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("coupling grid must be ascending with at least 4 points"));
    }
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[1] <= w[0]) || sizes[0] == 0 {
        return Err(Error::invalid("size list must be ascending with at least 2 entries"));
    }
    let jobs: Vec<(usize, usize)> = (0..sizes.len())
        .flat_map(|a| (0..couplings.len()).map(move |b| (a, b)))
        .collect();
    let curves = jobs
        .par_iter()
        .map(|&(a, b)| {
            let label = (a as u64) << 32 | b as u64;
            let res = simulate_stationary_r(dist, couplings[b], noise, model, sizes[a], cfg, &rng.derive(label))?;
            Ok(CurvePoint {
                coupling: couplings[b],
                n: sizes[a],
                r_mean: res.r_mean,
                r_stderr: res.r_stderr,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let m = couplings.len();
    let mut pair_crossings = Vec::new();
    for a in 0..sizes.len() - 1 {
        let small = &curves[a * m..(a + 1) * m];
        let large = &curves[(a + 1) * m..(a + 2) * m];
        if let Some(x) = pair_crossing(small, large) {
            pair_crossings.push(x);
        }
    }
    if pair_crossings.is_empty() {
        return Err(Error::NoCrossing);
    }
    let jc = pair_crossings.iter().sum::<f64>() / pair_crossings.len() as f64;
    let spread = pair_crossings.iter().map(|x| (x - jc).abs()).fold(0.0, f64::max);
    let spacing = couplings
        .windows(2)
        .filter(|w| w[0] <= jc && jc <= w[1])
        .map(|w| w[1] - w[0])
        .next()
        .unwrap_or(0.0);
    Ok(CriticalEstimate {
        jc,
        uncertainty: 0.5 * spacing + spread,
        pair_crossings,
        curves,
    })
}

fn pair_crossing(small: &[CurvePoint], large: &[CurvePoint]) -> Option<f64> {
    let scaled = |p: &CurvePoint| p.r_mean * (p.n as f64).powf(0.25);
    let d: Vec<f64> = small.iter().zip(large).map(|(s, l)| scaled(l) - scaled(s)).collect();
    let ordered = |p: &CurvePoint| p.r_mean > THRESHOLD_MULTIPLE / (p.n as f64).sqrt();
    // Last upward sign change after which the larger system stays on top.
    let mut k = d.len();
    while k > 0 && d[k - 1] > 0.0 {
        k -= 1;
    }
    if k == 0 || k == d.len() {
        return None;
    }
    if !large[k..].iter().any(ordered) {
        return None;
    }
    let (x0, x1) = (small[k - 1].coupling, small[k].coupling);
    let (d0, d1) = (d[k - 1], d[k]);
    Some(x0 + (x1 - x0) * (-d0) / (d1 - d0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coupling: f64, n: usize, r_mean: f64) -> CurvePoint {
        CurvePoint {
            coupling,
            n,
            r_mean,
            r_stderr: 0.0,
        }
    }

    #[test]
    fn crossing_is_interpolated() {
        // Synthetic curves crossing exactly at J = 2.5.
        let js = [1.0, 2.0, 3.0, 4.0];
        let small: Vec<_> = js.iter().map(|&j| pt(j, 16, 0.3 + 0.02 * j)).collect();
        let large: Vec<_> = js.iter().map(|&j| pt(j, 256, (0.3 + 0.02 * j + 0.1 * (j - 2.5)) / 2.0)).collect();
        let x = pair_crossing(&small, &large).unwrap();
        assert!((x - 2.5).abs() < 1e-12, "{x}");
    }

    #[test]
    fn no_ordered_point_means_no_crossing() {
        let js = [1.0, 2.0, 3.0, 4.0];
        let small: Vec<_> = js.iter().map(|&j| pt(j, 100, 0.05)).collect();
        let large: Vec<_> = js.iter().map(|&j| pt(j, 400, if j > 2.0 { 0.04 } else { 0.02 })).collect();
        assert!(pair_crossing(&small, &large).is_none());
    }

    #[test]
    fn subcritical_grid_reports_no_crossing() {
        let dist = FrequencyDistribution::lorentzian(1.0).unwrap();
        let cfg = SimConfig {
            dt: 0.05,
            t_burn: 5.0,
            t_avg: 10.0,
            n_realizations: 2,
            initial: Default::default(),
        };
        let err = estimate_critical_coupling(
            &dist,
            1.0,
            SimModel::Massless,
            &[100, 400],
            &[0.5, 1.0, 1.5, 2.0],
            &cfg,
            &RngHandle::new(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoCrossing));
    }
}
