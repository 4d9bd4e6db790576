use thiserror::Error;

/// Errors raised by the scattering, metric and bound-state computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("segments overlap: ({0}, {1}) and ({2}, {3})")]
    SegmentOverlap(f64, f64, f64, f64),

    #[error("delta at x = {x} lies inside segment ({lo}, {hi})")]
    DeltaInsideSegment { x: f64, lo: f64, hi: f64 },

    #[error("k^2 - V vanishes (k = {k}, V = {v}); perturb k")]
    DegenerateBranch { k: f64, v: String },

    #[error("singular transfer matrix at k = {k} (|m22| = {magnitude:e}); resonance or spectral singularity")]
    Singular { k: f64, magnitude: f64 },

    #[error("point x = {0} lies on a region boundary")]
    OnBoundary(f64),

    #[error("point x = {0} lies outside every region")]
    OutsideRegions(f64),

    #[error("no sign change on [{lo}, {hi}] (alpha*L too small; try L >= {suggested_min_l})")]
    Bracket {
        lo: f64,
        hi: f64,
        suggested_min_l: f64,
    },

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("potential JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn positive(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} must be finite and > 0, got {v}"
        )))
    }
}
