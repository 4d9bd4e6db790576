//! Domain types shared by the computational modules.
//!
//! Units are fixed to ħ = 2m = 1, so H = −d²/dx² + V(x) and a free plane
//! wave e^{ikx} has energy k². A delta spike z·δ(x − x₀) produces the
//! derivative jump ψ′(x₀⁺) − ψ′(x₀⁻) = z ψ(x₀).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};

/// A point interaction `strength · δ(x − position)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaSpike {
    pub position: f64,
    pub strength: Complex64,
}

impl DeltaSpike {
    pub fn new(position: f64, strength: Complex64) -> Self {
        Self { position, strength }
    }
}

/// Constant potential `value` on the open interval (`x_lo`, `x_hi`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformSegment {
    pub x_lo: f64,
    pub x_hi: f64,
    pub value: Complex64,
}

impl UniformSegment {
    pub fn new(x_lo: f64, x_hi: f64, value: Complex64) -> Result<Self> {
        finite(x_lo, "segment lower edge")?;
        finite(x_hi, "segment upper edge")?;
        if x_lo >= x_hi {
            return Err(Error::InvalidParameter(format!(
                "segment needs x_lo < x_hi, got ({x_lo}, {x_hi})"
            )));
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite("segment value"));
        }
        Ok(Self { x_lo, x_hi, value })
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    fn contains_interior(&self, x: f64) -> bool {
        self.x_lo < x && x < self.x_hi
    }
}

/// One feature of a potential, as returned by [`Potential1D::features`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feature {
    Delta(DeltaSpike),
    Segment(UniformSegment),
}

impl Feature {
    pub fn position(&self) -> f64 {
        match self {
            Feature::Delta(d) => d.position,
            Feature::Segment(s) => s.x_lo,
        }
    }
}

/// A validated potential made of delta spikes and non-overlapping constant
/// segments; zero everywhere else. Both lists are sorted by position.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Potential1D {
    deltas: Vec<DeltaSpike>,
    segments: Vec<UniformSegment>,
}

/// Builder for [`Potential1D`]. Deltas strictly inside a segment are rejected
/// unless [`PotentialBuilder::allow_interior_deltas`] is set.
#[derive(Debug, Clone, Default)]
pub struct PotentialBuilder {
    deltas: Vec<DeltaSpike>,
    segments: Vec<UniformSegment>,
    allow_interior_deltas: bool,
}

impl PotentialBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(mut self, position: f64, strength: Complex64) -> Self {
        self.deltas.push(DeltaSpike::new(position, strength));
        self
    }

    pub fn segment(mut self, segment: UniformSegment) -> Self {
        self.segments.push(segment);
        self
    }

    pub fn allow_interior_deltas(mut self, allow: bool) -> Self {
        self.allow_interior_deltas = allow;
        self
    }

    pub fn build(self) -> Result<Potential1D> {
        let PotentialBuilder {
            mut deltas,
            mut segments,
            allow_interior_deltas,
        } = self;

        for d in &deltas {
            finite(d.position, "delta position")?;
            if !(d.strength.re.is_finite() && d.strength.im.is_finite()) {
                return Err(Error::NonFinite("delta strength"));
            }
        }
        for s in &segments {
            // re-validate: fields are public
            UniformSegment::new(s.x_lo, s.x_hi, s.value)?;
        }

        deltas.sort_by(|a, b| a.position.total_cmp(&b.position));
        segments.sort_by(|a, b| a.x_lo.total_cmp(&b.x_lo));

        for pair in segments.windows(2) {
            if pair[1].x_lo < pair[0].x_hi {
                return Err(Error::SegmentOverlap(
                    pair[0].x_lo,
                    pair[0].x_hi,
                    pair[1].x_lo,
                    pair[1].x_hi,
                ));
            }
        }
        if !allow_interior_deltas {
            for d in &deltas {
                if let Some(s) = segments.iter().find(|s| s.contains_interior(d.position)) {
                    return Err(Error::DeltaInsideSegment {
                        x: d.position,
                        lo: s.x_lo,
                        hi: s.x_hi,
                    });
                }
            }
        }
        Ok(Potential1D { deltas, segments })
    }
}

/// Validate and sort the given features into a potential.
pub fn build_potential(
    deltas: Vec<DeltaSpike>,
    segments: Vec<UniformSegment>,
) -> Result<Potential1D> {
    PotentialBuilder {
        deltas,
        segments,
        allow_interior_deltas: false,
    }
    .build()
}

impl Potential1D {
    pub fn builder() -> PotentialBuilder {
        PotentialBuilder::new()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `z δ(x)`.
    pub fn single_delta(z: Complex64) -> Result<Self> {
        Self::builder().delta(0.0, z).build()
    }

    /// `iλ(δ(x − a) − δ(x + a))`.
    pub fn two_delta(lambda: f64, a: f64) -> Result<Self> {
        Self::builder()
            .delta(-a, Complex64::new(0.0, -lambda))
            .delta(a, Complex64::new(0.0, lambda))
            .build()
    }

    /// `−iλ` on (−a, 0) and `+iλ` on (0, a).
    pub fn imaginary_square_well(lambda: f64, a: f64) -> Result<Self> {
        Self::builder()
            .segment(UniformSegment::new(-a, 0.0, Complex64::new(0.0, -lambda))?)
            .segment(UniformSegment::new(0.0, a, Complex64::new(0.0, lambda))?)
            .build()
    }

    /// `−2α δ(x) + iλ(δ(x − L) − δ(x + L))`.
    pub fn three_delta(alpha: f64, lambda: f64, l: f64) -> Result<Self> {
        Self::builder()
            .delta(-l, Complex64::new(0.0, -lambda))
            .delta(0.0, Complex64::new(-2.0 * alpha, 0.0))
            .delta(l, Complex64::new(0.0, lambda))
            .build()
    }

    pub fn deltas(&self) -> &[DeltaSpike] {
        &self.deltas
    }

    pub fn segments(&self) -> &[UniformSegment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty() && self.segments.is_empty()
    }

    /// All features sorted by position (segments by their lower edge).
    /// A delta and a segment starting at the same point are ordered delta first.
    pub fn features(&self) -> Vec<Feature> {
        let mut out: Vec<Feature> = self
            .deltas
            .iter()
            .copied()
            .map(Feature::Delta)
            .chain(self.segments.iter().copied().map(Feature::Segment))
            .collect();
        out.sort_by(|a, b| {
            a.position().total_cmp(&b.position()).then_with(|| {
                let rank = |f: &Feature| matches!(f, Feature::Segment(_)) as u8;
                rank(a).cmp(&rank(b))
            })
        });
        out
    }

    /// Smallest and largest x at which the potential is nonzero.
    pub fn extent(&self) -> Option<(f64, f64)> {
        let lo = self
            .deltas
            .iter()
            .map(|d| d.position)
            .chain(self.segments.iter().map(|s| s.x_lo))
            .min_by(f64::total_cmp)?;
        let hi = self
            .deltas
            .iter()
            .map(|d| d.position)
            .chain(self.segments.iter().map(|s| s.x_hi))
            .max_by(f64::total_cmp)?;
        Some((lo, hi))
    }

    /// Every point where the wavefunction has to be matched, ascending and
    /// deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .deltas
            .iter()
            .map(|d| d.position)
            .chain(self.segments.iter().flat_map(|s| [s.x_lo, s.x_hi]))
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Regular (segment) part of the potential at `x`; boundaries count as
    /// outside.
    pub fn segment_value_at(&self, x: f64) -> Complex64 {
        self.segments
            .iter()
            .find(|s| s.contains_interior(x))
            .map_or(Complex64::new(0.0, 0.0), |s| s.value)
    }

    /// True when every strength and segment value is real.
    pub fn is_hermitian(&self) -> bool {
        self.deltas.iter().all(|d| d.strength.im == 0.0)
            && self.segments.iter().all(|s| s.value.im == 0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PotentialDoc::from(self))
            .expect("potential document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PotentialDoc =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        doc.into_potential()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DeltaDoc {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SegmentDoc {
    lo: f64,
    hi: f64,
    re: f64,
    im: f64,
}

/// On-disk form: `{"deltas":[{"x","re","im"}], "segments":[{"lo","hi","re","im"}]}`.
#[derive(Debug, Serialize, Deserialize)]
struct PotentialDoc {
    #[serde(default)]
    deltas: Vec<DeltaDoc>,
    #[serde(default)]
    segments: Vec<SegmentDoc>,
}

impl From<&Potential1D> for PotentialDoc {
    fn from(p: &Potential1D) -> Self {
        Self {
            deltas: p
                .deltas
                .iter()
                .map(|d| DeltaDoc {
                    x: d.position,
                    re: d.strength.re,
                    im: d.strength.im,
                })
                .collect(),
            segments: p
                .segments
                .iter()
                .map(|s| SegmentDoc {
                    lo: s.x_lo,
                    hi: s.x_hi,
                    re: s.value.re,
                    im: s.value.im,
                })
                .collect(),
        }
    }
}

impl PotentialDoc {
    fn into_potential(self) -> Result<Potential1D> {
        let deltas = self
            .deltas
            .into_iter()
            .map(|d| DeltaSpike::new(d.x, Complex64::new(d.re, d.im)))
            .collect();
        let segments = self
            .segments
            .into_iter()
            .map(|s| UniformSegment::new(s.lo, s.hi, Complex64::new(s.re, s.im)))
            .collect::<Result<Vec<_>>>()?;
        build_potential(deltas, segments)
    }
}

/// Reflection amplitude `refl` (C) and transmission amplitude `trans` (D) for
/// a unit wave incident from the left: ψ = e^{ikx} + C e^{−ikx} on the far
/// left, ψ = D e^{ikx} on the far right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub refl: Complex64,
    pub trans: Complex64,
}

/// `R = |C|²`, `T = |D|²`, `total = R + T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilitySummary {
    pub reflection: f64,
    pub transmission: f64,
    pub total: f64,
}

impl ScatteringAmplitudes {
    pub fn summary(&self) -> ProbabilitySummary {
        probability_summary(self)
    }
}

pub fn probability_summary(s: &ScatteringAmplitudes) -> ProbabilitySummary {
    let reflection = s.refl.norm_sqr();
    let transmission = s.trans.norm_sqr();
    ProbabilitySummary {
        reflection,
        transmission,
        total: reflection + transmission,
    }
}
