//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum BeamError {
    #[error("unknown support case `{0}` (expected aa, ab, ac, bb, bc, cc, add1, add2, add3, ba, ca, cb)")]
    UnknownSupport(String),

    #[error("`{0}` is not a mirrored case name (expected ba, ca or cb)")]
    NotMirrored(String),

    #[error("beam length must be positive, got {0}")]
    InvalidLength(f64),

    #[error("support {case} has an analytic spectrum; use the closed forms instead of root scanning")]
    AnalyticCase { case: &'static str },

    #[error("support {case} has no closed-form spectrum; use the determinant root scan")]
    NumericCase { case: &'static str },

    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),

    #[error("mode count {requested} exceeds the supported maximum {max}")]
    TooManyModes { requested: usize, max: usize },

    #[error("mode count must be at least 1")]
    EmptySpectrum,

    #[error("root scan exhausted at kappa*length = {ceiling:.3} after finding {found} of {requested} roots")]
    RootScanExhausted {
        ceiling: f64,
        found: usize,
        requested: usize,
    },

    #[error("characteristic matrix at kappa = {kappa} has numerical rank {rank}, expected 3")]
    DegenerateRoot { kappa: f64, rank: usize },

    #[error("mode {index}: boundary residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("x = {x} lies outside the beam interval [0, {length}]")]
    OutOfDomain { x: f64, length: f64 },

    #[error("derivative order {0} not supported (maximum 4)")]
    BadDerivativeOrder(u8),

    #[error("modes must share one support case and geometry")]
    MixedModes,

    #[error("invalid quadrature settings: {0}")]
    BadQuadrature(String),

    #[error("invalid material parameters: {0}")]
    BadMaterial(String),

    #[error("invalid initial profile: {0}")]
    BadProfile(String),

    #[error("grid too coarse: need at least {min} interior nodes, got {got}")]
    GridTooCoarse { min: usize, got: usize },

    #[error("time step {dt:.3e} exceeds the stability bound {bound:.3e}")]
    UnstableTimeStep { dt: f64, bound: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, BeamError>;
