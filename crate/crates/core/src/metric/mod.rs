//! First-order metric for the single complex delta `2λ(1 + iε) δ(x)`.
//!
//! The metric is η = 1 + ε η⁽¹⁾ + O(ε²) with the non-local kernel
//!
//! ```text
//! η⁽¹⁾(x, y) = (iλ/2) [θ(xy) e^{−λ|x−y|} + θ(−xy) e^{−λ|x+y|}] sgn(y² − x²)
//! ```
//!
//! and the corrected wavefunction is Ψ = ρψ with ρ = 1 + ½ε η⁽¹⁾. The
//! convolution η⁽¹⁾ψ has an elementary closed form: for either sign of x it
//! only depends on s = |x| through
//!
//! ```text
//! (η⁽¹⁾ψ)(x) = (iλ/2) ∫₀^∞ e^{−λ|u−s|} sgn(u − s) [ψ(u) + ψ(−u)] du
//! ```
//!
//! which is what [`corrected_wavefunction`] evaluates.

mod intertwining;

pub use intertwining::{intertwining_residual, IntertwiningGrid};

use num_complex::Complex64;

use crate::analytic::{single_delta_amplitudes, SingleDeltaParams};
use crate::error::{finite, positive, Error, Result};
use crate::model::ScatteringAmplitudes;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The first-order kernel η⁽¹⁾ for a given λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricKernelFirstOrder {
    lambda: f64,
}

impl MetricKernelFirstOrder {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda: positive(lambda, "lambda")?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Kernel value with the conventions sgn(0) = 0 and θ(0) = ½, so the
    /// lines |x| = |y| carry 0 and the axes carry the (continuous) average of
    /// both branches.
    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        let sign = sgn(y * y - x * x);
        if sign == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let xy = x * y;
        let (same, cross) = if xy > 0.0 {
            (1.0, 0.0)
        } else if xy < 0.0 {
            (0.0, 1.0)
        } else {
            (0.5, 0.5)
        };
        let l = self.lambda;
        let magnitude = same * (-l * (x - y).abs()).exp() + cross * (-l * (x + y).abs()).exp();
        Complex64::new(0.0, 0.5 * l * magnitude * sign)
    }
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// η⁽¹⁾(x, y); errors on |x| = |y| where the sign factor is undefined.
pub fn eta1_value(x: f64, y: f64, lambda: f64) -> Result<Complex64> {
    finite(x, "x")?;
    finite(y, "y")?;
    if x.abs() == y.abs() {
        return Err(Error::InvalidParameter(format!(
            "eta1 is undefined on |x| = |y| (x = {x}, y = {y})"
        )));
    }
    Ok(MetricKernelFirstOrder::new(lambda)?.value(x, y))
}

/// Uncorrected scattering wavefunction ψ(x) of the single delta.
pub fn bare_wavefunction(x: f64, amps: &ScatteringAmplitudes) -> Complex64 {
    let ikx = Complex64::new(0.0, amps.k * x);
    if x < 0.0 {
        ikx.exp() + amps.refl * (-ikx).exp()
    } else {
        amps.trans * ikx.exp()
    }
}

/// ∫₀^∞ e^{−λ|u−s|} sgn(u − s) e^{iβu} du
fn folded_plane_wave(lambda: f64, beta: f64, s: f64) -> Complex64 {
    let b = Complex64::new(0.0, beta);
    let oscillating = (b * s).exp() * 2.0 * b / (lambda * lambda + beta * beta);
    let damped = (-lambda * s).exp() / (lambda + b);
    oscillating + damped
}

/// (η⁽¹⁾ψ)(x) in closed form.
pub fn eta1_applied(x: f64, lambda: f64, amps: &ScatteringAmplitudes) -> Complex64 {
    let s = x.abs();
    let k = amps.k;
    let forward = (amps.refl + amps.trans) * folded_plane_wave(lambda, k, s);
    let backward = folded_plane_wave(lambda, -k, s);
    0.5 * I * lambda * (forward + backward)
}

/// Ψ(x) = ψ(x) + ½ε (η⁽¹⁾ψ)(x), with ψ the exact solution at the given ε.
pub fn corrected_wavefunction(x: f64, p: &SingleDeltaParams) -> Result<Complex64> {
    finite(x, "x")?;
    let amps = single_delta_amplitudes(p)?;
    Ok(corrected_from_amplitudes(x, p, &amps))
}

pub(crate) fn corrected_from_amplitudes(
    x: f64,
    p: &SingleDeltaParams,
    amps: &ScatteringAmplitudes,
) -> Complex64 {
    bare_wavefunction(x, amps) + 0.5 * p.epsilon() * eta1_applied(x, p.lambda(), amps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Left,
    Right,
}

/// Plane-wave content of Ψ far from the spike, with the e^{∓λ|x|} pieces
/// dropped. On the right `amp_out` multiplies e^{ikx} and `amp_in`
/// multiplies e^{−ikx}; on the left `amp_in` multiplies e^{ikx} and
/// `amp_out` multiplies e^{−ikx}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectedWave {
    pub region: Region,
    pub amp_out: Complex64,
    pub amp_in: Complex64,
    pub epsilon: f64,
    pub q: f64,
    k: f64,
}

/// ελk / (2(λ² + k²)) = εq / (2(q² + 1))
fn mixing(p: &SingleDeltaParams) -> f64 {
    let q = p.q();
    p.epsilon() * q / (2.0 * (q * q + 1.0))
}

impl CorrectedWave {
    /// Asymptotic form of the closed-form Ψ, built from the exact C and D:
    /// Ψ_> = D e^{ikx} + g(e^{−ikx} − (C+D) e^{ikx}),
    /// Ψ_< = (1 + g) e^{ikx} + (C − g(C+D)) e^{−ikx}, g = ελk/(2(λ²+k²)).
    pub fn asymptotic(region: Region, p: &SingleDeltaParams) -> Result<Self> {
        let amps = single_delta_amplitudes(p)?;
        let g = mixing(p);
        let sum = amps.refl + amps.trans;
        let (amp_out, amp_in) = match region {
            Region::Right => (amps.trans - g * sum, Complex64::new(g, 0.0)),
            Region::Left => (amps.refl - g * sum, Complex64::new(1.0 + g, 0.0)),
        };
        Ok(Self::with(region, amp_out, amp_in, p))
    }

    /// Same decomposition with every amplitude truncated at O(ε), i.e. C and
    /// D replaced by their first-order expansions about ε = 0.
    pub fn first_order(region: Region, p: &SingleDeltaParams) -> Self {
        let q = p.q();
        let eps = p.epsilon();
        let qi = Complex64::new(q, 1.0);
        let d0 = q / qi;
        let c0 = -I / qi;
        let d1 = q / (qi * qi);
        let c1 = qi.inv() - I / (qi * qi);
        let g = mixing(p);
        let sum0 = c0 + d0;
        let (amp_out, amp_in) = match region {
            Region::Right => (d0 + eps * d1 - g * sum0, Complex64::new(g, 0.0)),
            Region::Left => (c0 + eps * c1 - g * sum0, Complex64::new(1.0 + g, 0.0)),
        };
        Self::with(region, amp_out, amp_in, p)
    }

    fn with(region: Region, amp_out: Complex64, amp_in: Complex64, p: &SingleDeltaParams) -> Self {
        Self {
            region,
            amp_out,
            amp_in,
            epsilon: p.epsilon(),
            q: p.q(),
            k: p.k(),
        }
    }

    /// Coefficients of (e^{ikx}, e^{−ikx}).
    pub fn plane_wave_coefficients(&self) -> (Complex64, Complex64) {
        match self.region {
            Region::Right => (self.amp_out, self.amp_in),
            Region::Left => (self.amp_in, self.amp_out),
        }
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let (fwd, bwd) = self.plane_wave_coefficients();
        let e = Complex64::new(0.0, self.k * x).exp();
        fwd * e + bwd * e.inv()
    }
}

/// Non-oscillatory fluxes of Ψ, interference terms dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxFactors {
    pub incoming: f64,
    pub reflected: f64,
    pub transmitted: f64,
}

/// First-order fluxes: each Hermitian flux of the real spike 2λδ(x) times the
/// common factor 1 + εq/(q² + 1).
pub fn corrected_flux_factors(p: &SingleDeltaParams) -> FluxFactors {
    let q = p.q();
    let q2 = q * q + 1.0;
    let common = 1.0 + p.epsilon() * q / q2;
    FluxFactors {
        incoming: common,
        reflected: common / q2,
        transmitted: q * q / q2 * common,
    }
}

/// Flux bookkeeping read off the plane-wave amplitudes of Ψ on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxDecomposition {
    /// |e^{ikx} amplitude|² on the left
    pub incoming: f64,
    /// |e^{−ikx} amplitude|² on the left
    pub reflected: f64,
    /// |e^{ikx} amplitude|² on the right
    pub transmitted: f64,
    /// |e^{−ikx} amplitude|² on the right
    pub incoming_from_right: f64,
}

impl FluxDecomposition {
    pub fn from_waves(left: &CorrectedWave, right: &CorrectedWave) -> Self {
        Self {
            incoming: left.amp_in.norm_sqr(),
            reflected: left.amp_out.norm_sqr(),
            transmitted: right.amp_out.norm_sqr(),
            incoming_from_right: right.amp_in.norm_sqr(),
        }
    }

    pub fn first_order(p: &SingleDeltaParams) -> Self {
        Self::from_waves(
            &CorrectedWave::first_order(Region::Left, p),
            &CorrectedWave::first_order(Region::Right, p),
        )
    }

    pub fn asymptotic(p: &SingleDeltaParams) -> Result<Self> {
        Ok(Self::from_waves(
            &CorrectedWave::asymptotic(Region::Left, p)?,
            &CorrectedWave::asymptotic(Region::Right, p)?,
        ))
    }

    /// |(R′ + T′)/incoming′ − 1|
    pub fn conservation_residual(&self) -> f64 {
        ((self.reflected + self.transmitted) / self.incoming - 1.0).abs()
    }
}

/// Conservation defect of the first-order corrected fluxes; O(ε²) and equal
/// to the neglected incoming-from-the-right flux relative to the incident one.
pub fn conservation_residual(p: &SingleDeltaParams) -> f64 {
    FluxDecomposition::first_order(p).conservation_residual()
}
