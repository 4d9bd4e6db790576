//! 2×2 transfer matrices for piecewise-constant potentials with delta spikes.
//!
//! Coefficient pairs are edge-referenced: at a point x₀ the pair (a, b) stands
//! for ψ ≈ a e^{ik(x−x₀)} + b e^{−ik(x−x₀)}, i.e. ψ(x₀) = a + b and
//! ψ′(x₀) = ik(a − b), always with the exterior wavenumber k. Every matrix maps
//! the pair just left of a feature to the pair just right of it, so a whole
//! potential is the ordered product of its pieces.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{finite, positive, Error, Result};
use crate::model::{Potential1D, ScatteringAmplitudes};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Relative size below which the m22 entry of a composed matrix is treated
/// as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2c {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2c {
    pub const IDENTITY: Matrix2c = Matrix2c {
        m11: ONE,
        m12: ZERO,
        m21: ZERO,
        m22: ONE,
    };

    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (
            self.m11 * v.0 + self.m12 * v.1,
            self.m21 * v.0 + self.m22 * v.1,
        )
    }

    /// Largest entry modulus.
    pub fn scale(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix2c) -> f64 {
        [
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        ]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
    }
}

impl Mul for Matrix2c {
    type Output = Matrix2c;

    fn mul(self, o: Matrix2c) -> Matrix2c {
        Matrix2c {
            m11: self.m11 * o.m11 + self.m12 * o.m21,
            m12: self.m11 * o.m12 + self.m12 * o.m22,
            m21: self.m21 * o.m11 + self.m22 * o.m21,
            m22: self.m21 * o.m12 + self.m22 * o.m22,
        }
    }
}

/// Matching across `z δ(x − x₀)`: ψ continuous, ψ′ jumps by zψ(x₀).
/// Determinant is exactly 1.
pub fn delta_interface_matrix(k: f64, z: Complex64) -> Result<Matrix2c> {
    positive(k, "k")?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("delta strength"));
    }
    // β = z / (2ik); M = I + β [[1, 1], [−1, −1]]
    let beta = z / (2.0 * I * k);
    Ok(Matrix2c::new(ONE + beta, beta, -beta, ONE - beta))
}

/// Interior wavenumber sqrt(k² − V) on the branch with Im ≥ 0 (Re ≥ 0 when
/// real).
pub fn local_wavenumber(k: f64, v: Complex64) -> Complex64 {
    let kappa = (Complex64::new(k * k, 0.0) - v).sqrt();
    if kappa.im < 0.0 {
        -kappa
    } else {
        kappa
    }
}

/// Propagation across a region of constant potential `v` and width `length`,
/// expressed in the exterior-k basis on both sides.
pub fn segment_propagation_matrix(k: f64, v: Complex64, length: f64) -> Result<Matrix2c> {
    positive(k, "k")?;
    positive(length, "segment length")?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite("segment value"));
    }
    if v == ZERO {
        let phase = Complex64::new(0.0, k * length).exp();
        return Ok(Matrix2c::diag(phase, phase.inv()));
    }
    let kappa_sq = Complex64::new(k * k, 0.0) - v;
    if kappa_sq == ZERO {
        return Err(Error::DegenerateBranch {
            k,
            v: format!("{v}"),
        });
    }
    let kappa = local_wavenumber(k, v);
    let phase = kappa * length;
    let (cos, sin) = (phase.cos(), phase.sin());
    let sum = k / kappa + kappa / k;
    let diff = k / kappa - kappa / k;
    Ok(Matrix2c::new(
        cos + 0.5 * I * sum * sin,
        -0.5 * I * diff * sin,
        0.5 * I * diff * sin,
        cos - 0.5 * I * sum * sin,
    ))
}

/// One matched interval of a potential: the combined delta at `x_from`
/// followed by propagation to `x_to` through constant `value`.
#[derive(Debug, Clone, Copy)]
pub struct TransferStep {
    pub x_from: f64,
    pub x_to: f64,
    pub value: Complex64,
    pub delta: Matrix2c,
    pub propagation: Matrix2c,
}

/// Ordered decomposition of a potential into transfer steps at a fixed k.
#[derive(Debug, Clone)]
pub struct TransferChain {
    pub k: f64,
    pub steps: Vec<TransferStep>,
    /// Combined delta at the last breakpoint (identity if none).
    pub final_delta: Matrix2c,
    pub x_left: f64,
    pub x_right: f64,
}

impl TransferChain {
    pub fn new(p: &Potential1D, k: f64) -> Result<Self> {
        positive(k, "k")?;
        let points = p.breakpoints();
        let delta_at = |x: f64| -> Result<Matrix2c> {
            let z: Complex64 = p
                .deltas()
                .iter()
                .filter(|d| d.position == x)
                .map(|d| d.strength)
                .sum();
            if z == ZERO {
                Ok(Matrix2c::IDENTITY)
            } else {
                delta_interface_matrix(k, z)
            }
        };

        let mut steps = Vec::with_capacity(points.len().saturating_sub(1));
        for w in points.windows(2) {
            let (x_from, x_to) = (w[0], w[1]);
            let value = p.segment_value_at(0.5 * (x_from + x_to));
            steps.push(TransferStep {
                x_from,
                x_to,
                value,
                delta: delta_at(x_from)?,
                propagation: segment_propagation_matrix(k, value, x_to - x_from)?,
            });
        }
        let (x_left, x_right, final_delta) = match (points.first(), points.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi, delta_at(hi)?),
            _ => (0.0, 0.0, Matrix2c::IDENTITY),
        };
        Ok(Self {
            k,
            steps,
            final_delta,
            x_left,
            x_right,
        })
    }

    pub fn total(&self) -> Matrix2c {
        let m = self
            .steps
            .iter()
            .fold(Matrix2c::IDENTITY, |acc, s| s.propagation * (s.delta * acc));
        self.final_delta * m
    }
}

/// Left-incidence reflection and transmission amplitudes.
pub fn scattering_coefficients(p: &Potential1D, k: f64) -> Result<ScatteringAmplitudes> {
    finite(k, "k")?;
    let chain = TransferChain::new(p, k)?;
    if p.is_empty() {
        return Ok(ScatteringAmplitudes {
            k,
            refl: ZERO,
            trans: ONE,
        });
    }
    amplitudes_from_chain(&chain)
}

pub(crate) fn amplitudes_from_chain(chain: &TransferChain) -> Result<ScatteringAmplitudes> {
    let k = chain.k;
    let m = chain.total();
    if m.m22.norm() < SINGULAR_THRESHOLD * m.scale().max(1.0) {
        return Err(Error::Singular {
            k,
            magnitude: m.m22.norm(),
        });
    }
    // left pair (e^{ikx_L}, C e^{−ikx_L}) ↦ right pair (D e^{ikx_R}, 0)
    let refl = -m.m21 / m.m22 * Complex64::new(0.0, 2.0 * k * chain.x_left).exp();
    let trans = m.det() / m.m22 * Complex64::new(0.0, -k * (chain.x_right - chain.x_left)).exp();
    Ok(ScatteringAmplitudes { k, refl, trans })
}
