//! Overdamped quantum Kuramoto model: bath spectrum, saddle paths, the
//! imaginary action and the critical coupling.

pub mod action;
pub mod coupling;
pub mod kernel;
pub mod saddle;

pub use action::{s_im, QuantumModel, SImTable};
pub use coupling::{jc_denominator, quantum_jc, Denominator, Prefactor};
pub use kernel::{dk_spectral, KernelSpectrum};
pub use saddle::{
    massless_theta_minus, massless_theta_plus, saddle_theta_minus, saddle_theta_plus, stationary_minus_profile,
    ProfileModel, SaddleProfile, SaddleScales,
};
