#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod distribution;
pub mod error;
pub mod numerics;
pub mod params;
pub mod phase_diagram;
pub mod quantum;
pub mod verify;

pub use distribution::{DistributionSpec, FrequencyDistribution, TabulatedDensity};
pub use error::{Error, Result};
pub use params::PhysicalParams;
