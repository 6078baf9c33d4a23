//! Bath noise spectrum `D K(ν)` and its cosine transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::params::PhysicalParams;

/// `mu (ν/2) coth(ν / 2T)`, zero beyond the cutoff; `mu |ν| / 2` at T = 0.
pub fn dk_spectral(nu: f64, params: &PhysicalParams) -> f64 {
    KernelSpectrum::new(*params).eval(nu)
}

/// Noise spectrum of the Ohmic bath with a sharp cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpectrum {
    pub params: PhysicalParams,
}

impl KernelSpectrum {
    pub fn new(params: PhysicalParams) -> Self {
        Self { params }
    }

    pub fn eval(&self, nu: f64) -> f64 {
        let PhysicalParams { mu, temp, cutoff } = self.params;
        let nu = nu.abs();
        if nu > cutoff {
            return 0.0;
        }
        mu * half_coth(nu, temp)
    }

    /// `(1/π) ∫_0^cutoff D K(ν) cos(νx) dν` in closed form.
    ///
    /// The zero-point part is elementary; the thermal part is the full-range
    /// Bose transform minus a geometric series for the range beyond the cutoff.
    pub fn time_kernel(&self, x: f64) -> f64 {
        let PhysicalParams { mu, temp, cutoff } = self.params;
        let x = x.abs();
        let z = cutoff * x;
        let zero_point = mu / (2.0 * PI) * cutoff * cutoff * ramp_transform(z);
        if temp == 0.0 {
            return zero_point;
        }
        zero_point + mu / PI * (bose_transform(x, temp) - bose_tail(x, temp, cutoff))
    }
}

/// `(ν/2) coth(ν / 2T)`, the per-unit-mass spectrum.
pub(crate) fn half_coth(nu: f64, temp: f64) -> f64 {
    let nu = nu.abs();
    if temp == 0.0 {
        return 0.5 * nu;
    }
    let x = nu / (2.0 * temp);
    if x < 1e-8 {
        return temp * (1.0 + x * x / 3.0);
    }
    if x > 20.0 {
        return 0.5 * nu * (1.0 + 2.0 * (-2.0 * x).exp());
    }
    0.5 * nu / x.tanh()
}

/// `sin z / z + (cos z − 1)/z²`, the transform of a linear ramp.
fn ramp_transform(z: f64) -> f64 {
    if z.abs() < 0.05 {
        let z2 = z * z;
        return 0.5 - z2 / 8.0 + z2 * z2 / 144.0;
    }
    z.sin() / z + (z.cos() - 1.0) / (z * z)
}

/// `∫_0^∞ ν/(e^{ν/T} − 1) cos(νx) dν = 1/(2x²) − (πT)²/(2 sinh²(πTx))`.
fn bose_transform(x: f64, temp: f64) -> f64 {
    let a = PI * temp;
    let y = a * x;
    if y < 0.05 {
        let y2 = y * y;
        return 0.5 * a * a * (1.0 / 3.0 - y2 / 15.0 + 2.0 * y2 * y2 / 189.0);
    }
    let e = (-2.0 * y).exp();
    let inv_sinh2 = 4.0 * e / (-(-2.0 * y).exp_m1()).powi(2);
    0.5 / (x * x) - 0.5 * a * a * inv_sinh2
}

/// `∫_cutoff^∞ ν/(e^{ν/T} − 1) cos(νx) dν` as a sum over Bose harmonics.
fn bose_tail(x: f64, temp: f64, cutoff: f64) -> f64 {
    let terms = (40.0 * temp / cutoff).ceil() as usize + 1;
    let mut total = 0.0;
    for k in 1..=terms {
        let z = Complex64::new(k as f64 / temp, -x);
        let term = (-z * cutoff).exp() * (cutoff / z + 1.0 / (z * z));
        total += term.re;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_breakpoints, QuadratureConfig};

    fn params(temp: f64) -> PhysicalParams {
        PhysicalParams::with_cutoff(7.0, temp, 350.0).unwrap()
    }

    #[test]
    fn spectrum_limits() {
        let p = PhysicalParams::new(7.0, 3.0).unwrap();
        assert!((dk_spectral(1e-12, &p) - 21.0).abs() < 1e-12);
        assert!((dk_spectral(0.0, &p) - 21.0).abs() < 1e-12);
        let cold = PhysicalParams::new(7.0, 0.0).unwrap();
        assert_eq!(dk_spectral(4.0, &cold), 14.0);
        let nearly = PhysicalParams::new(7.0, 1e-8).unwrap();
        assert!((dk_spectral(4.0, &nearly) - 14.0).abs() < 1e-6);
        assert_eq!(dk_spectral(-4.0, &p), dk_spectral(4.0, &p));
        assert_eq!(dk_spectral(351.0, &p), 0.0);
    }

    #[test]
    fn hot_spectrum_is_flat() {
        let p = PhysicalParams::with_cutoff(7.0, 1e4, 350.0).unwrap();
        for nu in [0.0, 10.0, 100.0, 349.0] {
            assert!((dk_spectral(nu, &p) / p.noise() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn time_kernel_matches_direct_cosine_transform() {
        let cfg = QuadratureConfig::default().with_rel_tol(1e-12).with_abs_tol(1e-12);
        for temp in [0.0, 0.3, 1.0, 50.0, 400.0] {
            let k = KernelSpectrum::new(params(temp));
            for x in [0.0, 1e-3, 0.02, 0.7, 3.0] {
                let n = ((350.0 * x / PI).ceil() as usize).max(1) * 4;
                let pts: Vec<f64> = (0..=n).map(|i| 350.0 * i as f64 / n as f64).collect();
                let direct = integrate_breakpoints(|nu| k.eval(nu) * (nu * x).cos(), &pts, &cfg).unwrap().value / PI;
                let closed = k.time_kernel(x);
                let scale = k.time_kernel(0.0).abs();
                assert!(
                    (direct - closed).abs() < 1e-9 * scale,
                    "temp={temp} x={x}: {direct} vs {closed}"
                );
            }
        }
    }
}
