//! Classical noisy Kuramoto model: ensemble simulation and analytic thresholds.

pub mod estimate;
pub mod sim;
pub mod theory;

pub use estimate::{estimate_critical_coupling, CriticalEstimate, CurvePoint};
pub use sim::{
    hysteresis_scan, mean_field_force, order_parameter, pairwise_force, simulate_stationary_r, simulate_trajectory,
    step_massive, step_massless, EnsembleState, HysteresisPoint, InitialCondition, MassiveModel, OrderParameter,
    SimConfig, SimModel, StationaryR, TrajectoryPoint,
};
pub use theory::{classical_jc, classical_jc_extended, classical_jc_with, lorentz_overlap, noiseless_jc};
