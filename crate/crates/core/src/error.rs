//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by model construction, evaluation, quadrature, and fitting.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A principal stretch was zero, negative, or non-finite.
    #[error("non-positive stretch: {0}")]
    NonPositiveStretch(f64),

    /// A stretch interval for linearization was empty or outside the model range.
    #[error("degenerate stretch interval [{lo}, {hi}] (need hi > lo >= 1)")]
    DegenerateInterval { lo: f64, hi: f64 },

    /// Relative input pressure must be non-negative.
    #[error("negative pressure: {0} MPa")]
    NegativePressure(f64),

    /// Geometry parameters violate an invariant.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// Material parameters violate an invariant.
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    /// Flat-wall height must exceed the inflated wall thickness.
    #[error("flat-wall height {h} mm does not exceed inflated wall thickness {t0} mm")]
    FlatWallTooShort { h: f64, t0: f64 },

    /// Quadrature settings violate an invariant.
    #[error("invalid quadrature settings: {0}")]
    InvalidQuadratureSettings(String),

    /// Adaptive quadrature ran out of refinements before reaching tolerance.
    /// Carries the best estimate assembled so far.
    #[error("quadrature did not converge within {max_refinements} refinements (last estimate {last_estimate})")]
    QuadratureNonConvergence {
        max_refinements: usize,
        last_estimate: f64,
    },

    /// A minimization did not converge; the message carries diagnostics.
    #[error("optimization failed: {0}")]
    OptimizationFailure(String),

    /// An experiment dataset violates its invariants or cannot be parsed.
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    /// The dataset cannot pin down the parameters (e.g. no super-threshold samples).
    #[error("unidentifiable dataset: {0}")]
    Unidentifiable(String),

    /// A chain configuration violates its invariants.
    #[error("invalid chain configuration: {0}")]
    InvalidChain(String),

    /// A quantity that must be finite was not.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
