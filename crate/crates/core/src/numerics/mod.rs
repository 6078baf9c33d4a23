//! Shared numerical machinery: adaptive Gauss-Kronrod quadrature with
//! decay-detected truncation for semi-infinite ranges, bracketed root finding,
//! fixed Gauss rules, monotone interpolation and a reproducible Gaussian RNG.

mod gauss;
mod interp;
mod quadrature;
mod rng;
mod roots;

pub use gauss::{gauss_hermite, gauss_legendre};
pub use interp::MonotoneCubic;
pub use quadrature::{
    decay_horizon, integrate_adaptive, integrate_breakpoints, integrate_semi_infinite, Integral,
    QuadratureConfig, SemiInfiniteIntegral,
};
pub use rng::{gaussian_draw, RngHandle};
pub use roots::{find_root_bracketed, try_find_root_bracketed};
