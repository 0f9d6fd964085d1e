//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rough profile kind was asked for a derivative where none exists
    /// (step at its jump, cusp at the origin, sin-inverse at the origin).
    #[error("profile `{kind}` has no derivative at {arg}")]
    NonDifferentiableProfile { kind: &'static str, arg: f64 },

    /// The principal-value expansion is only quadrature-accurate up to order 4.
    #[error("expansion order {0} exceeds the quadrature accuracy budget (max 4)")]
    ExpansionOrderTooHigh(usize),

    /// The k = 0 mode carries no Kelvin-Helmholtz dynamics.
    #[error("wavenumber k = 0 has no mode dynamics")]
    ZeroMode,

    /// The 3d stability matrix is defined for in-plane background vorticity.
    #[error("background vorticity must have zero third component, got {0}")]
    InvalidBackground(f64),

    /// Biot-Savart evaluation too close to the sheet for the node spacing.
    #[error("point at distance {dist:.3e} from the sheet, floor is {floor:.3e}")]
    TooCloseToSheet { dist: f64, floor: f64 },

    /// Parameter constraints of a singular surface were violated.
    #[error("invalid surface parameters: {0}")]
    InvalidParameters(String),

    /// A fit was requested over fewer dyadic levels than the estimator needs.
    #[error("increment range [{h_min:.3e}, {h_max:.3e}] spans {levels} dyadic levels, need >= {need}")]
    InsufficientIncrementRange {
        h_min: f64,
        h_max: f64,
        levels: usize,
        need: usize,
    },

    /// Generic validation failure for grids and quadrature specs.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
