use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Seeded random stream. Clones continue the same sequence independently.
#[derive(Debug, Clone)]
pub struct RngHandle {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream derived from the same seed, starting from the beginning.
    pub fn fork(&self, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        inner.set_stream(stream);
        Self { seed: self.seed, inner }
    }

    /// Handle with a new seed mixed from this seed and `label`.
    ///
    /// Unlike [`Self::fork`], derived handles can be forked again without
    /// colliding with their parent's streams.
    pub fn derive(&self, label: u64) -> Self {
        Self::new(splitmix64(self.seed ^ splitmix64(label.wrapping_add(0x9e37_79b9_7f4a_7c15))))
    }

    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    pub fn fill_standard_normal(&mut self, out: &mut [f64]) {
        for x in out {
            *x = self.inner.sample(StandardNormal);
        }
    }

    pub fn inner_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.inner
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One draw from N(mean, std²). A zero `std` returns `mean` exactly.
pub fn gaussian_draw(rng: &mut RngHandle, mean: f64, std: f64) -> f64 {
    debug_assert!(std >= 0.0);
    if std == 0.0 {
        return mean;
    }
    mean + std * rng.standard_normal()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_width_returns_mean() {
        let mut rng = RngHandle::new(3);
        assert_eq!(gaussian_draw(&mut rng, 1.25, 0.0), 1.25);
    }

    #[test]
    fn moments_of_a_million_draws() {
        let mut rng = RngHandle::new(20240611);
        let n = 1_000_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = gaussian_draw(&mut rng, 0.0, 1.0);
            s += x;
            s2 += x * x;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.005, "mean {mean}");
        assert!((var - 1.0).abs() < 0.005, "var {var}");
    }

    #[test]
    fn identical_seeds_are_bit_identical() {
        let mut a = RngHandle::new(99);
        let mut b = RngHandle::new(99);
        for _ in 0..1000 {
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
    }

    #[test]
    fn different_seeds_are_uncorrelated() {
        let mut a = RngHandle::new(1);
        let mut b = RngHandle::new(2);
        let n = 100_000;
        let mut sxy = 0.0;
        for _ in 0..n {
            sxy += a.standard_normal() * b.standard_normal();
        }
        assert!((sxy / n as f64).abs() < 0.01);
    }

    #[test]
    fn forks_differ_from_each_other() {
        let root = RngHandle::new(5);
        let mut x = root.fork(1);
        let mut y = root.fork(2);
        let mut z = root.fork(1);
        let xs: Vec<f64> = (0..8).map(|_| x.uniform()).collect();
        let ys: Vec<f64> = (0..8).map(|_| y.uniform()).collect();
        let zs: Vec<f64> = (0..8).map(|_| z.uniform()).collect();
        assert_ne!(xs, ys);
        assert_eq!(xs, zs);
        assert_ne!(root.derive(1).seed(), root.derive(2).seed());
        assert_eq!(root.derive(1).seed(), RngHandle::new(5).derive(1).seed());
    }
}
