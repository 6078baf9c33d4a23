use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An adaptive routine ran out of budget before meeting its tolerance.
    #[error("{context}: no convergence (estimate {estimate:e}, error {error:e})")]
    NonConvergence {
        context: &'static str,
        estimate: f64,
        error: f64,
    },

    #[error("root bracket [{lo}, {hi}] has no sign change (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tabulated distribution has no cumulative table to sample from")]
    TabulatedUnsupported,

    #[error("distribution has zero density at the origin")]
    DegenerateDistribution,

    #[error("order parameter never crossed the finite-size threshold on the coupling grid")]
    NoCrossing,

    #[error("no washboard barrier: sigma = {sigma} exceeds coupling = {coupling}")]
    BarrierAbsent { sigma: f64, coupling: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
