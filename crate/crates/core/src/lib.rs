//! Scattering, quasi-Hermitian metric and bound states for one-dimensional
//! complex potentials built from delta spikes and flat segments.
//!
//! Units are ħ = 2m = 1, so H = −d²/dx² + V(x) and a spike z δ(x − x₀) makes
//! ψ′ jump by z ψ(x₀).

pub mod analytic;
pub mod boundstate;
pub mod current;
pub mod error;
pub mod metric;
pub mod model;
pub mod transfer;

pub use error::{Error, Result};
pub use model::{
    probability_summary, DeltaSpike, Potential1D, ProbabilitySummary, ScatteringAmplitudes,
    UniformSegment,
};
pub use transfer::scattering_coefficients;
