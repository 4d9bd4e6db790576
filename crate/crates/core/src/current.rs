//! Probability current and the integrated continuity identity for piecewise
//! plane-wave solutions.
//!
//! For −ψ″ + Vψ = Eψ the current j = −i(ψ*ψ′ − ψψ*′) obeys
//! dj/dx = 2 Im V |ψ|², so j(+∞) − j(−∞) = 2 ∫ Im V |ψ|² dx. A delta spike
//! z δ(x − x₀) contributes 2 Im z |ψ(x₀)|².

use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::model::{Potential1D, ScatteringAmplitudes};
use crate::transfer::{amplitudes_from_chain, local_wavenumber, TransferChain};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// ψ = A e^{iκ(x − origin)} + B e^{−iκ(x − origin)} on (x_lo, x_hi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveRegion {
    pub x_lo: f64,
    pub x_hi: f64,
    pub origin: f64,
    pub wavenumber: Complex64,
    pub amp_right: Complex64,
    pub amp_left: Complex64,
}

impl WaveRegion {
    fn phases(&self, x: f64) -> (Complex64, Complex64) {
        let e = (I * self.wavenumber * (x - self.origin)).exp();
        (e, e.inv())
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let (ep, em) = self.phases(x);
        self.amp_right * ep + self.amp_left * em
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        let (ep, em) = self.phases(x);
        I * self.wavenumber * (self.amp_right * ep - self.amp_left * em)
    }

    /// ∫ |ψ|² over [a, b] ⊂ region, in closed form.
    pub fn density_integral(&self, a: f64, b: f64) -> f64 {
        let (u0, u1) = (a - self.origin, b - self.origin);
        let kr = self.wavenumber.re;
        let ki = self.wavenumber.im;
        let right =
            self.amp_right.norm_sqr() * exp_integral(Complex64::new(-2.0 * ki, 0.0), u0, u1).re;
        let left =
            self.amp_left.norm_sqr() * exp_integral(Complex64::new(2.0 * ki, 0.0), u0, u1).re;
        let cross = self.amp_right
            * self.amp_left.conj()
            * exp_integral(Complex64::new(0.0, 2.0 * kr), u0, u1);
        right + left + 2.0 * cross.re
    }
}

/// ∫_{u0}^{u1} e^{γu} du
pub(crate) fn exp_integral(gamma: Complex64, u0: f64, u1: f64) -> Complex64 {
    let width = u1 - u0;
    (gamma * u0).exp() * width * exprel(gamma * width)
}

/// (e^w − 1)/w with the removable singularity filled in.
pub(crate) fn exprel(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
    } else {
        (w.exp() - 1.0) / w
    }
}

/// Regions tiling the line in increasing x.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseWave {
    regions: Vec<WaveRegion>,
}

impl PiecewiseWave {
    pub fn new(regions: Vec<WaveRegion>) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::InvalidParameter(
                "a wave needs at least one region".into(),
            ));
        }
        for r in &regions {
            // also rejects NaN edges
            if r.x_lo.partial_cmp(&r.x_hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidParameter(format!(
                    "empty region ({}, {})",
                    r.x_lo, r.x_hi
                )));
            }
        }
        for w in regions.windows(2) {
            if w[0].x_hi != w[1].x_lo {
                return Err(Error::InvalidParameter(format!(
                    "regions do not tile: {} vs {}",
                    w[0].x_hi, w[1].x_lo
                )));
            }
        }
        Ok(Self { regions })
    }

    pub fn regions(&self) -> &[WaveRegion] {
        &self.regions
    }

    /// Internal region boundaries.
    pub fn boundaries(&self) -> impl Iterator<Item = f64> + '_ {
        self.regions.windows(2).map(|w| w[0].x_hi)
    }

    fn region_at(&self, x: f64) -> Result<&WaveRegion> {
        if self.boundaries().any(|b| b == x) {
            return Err(Error::OnBoundary(x));
        }
        self.regions
            .iter()
            .find(|r| r.x_lo < x && x < r.x_hi)
            .ok_or(Error::OutsideRegions(x))
    }

    /// ψ(x); at an internal boundary the left region's limit is used.
    pub fn value(&self, x: f64) -> Result<Complex64> {
        match self.region_at(x) {
            Ok(r) => Ok(r.value(x)),
            Err(Error::OnBoundary(_)) => Ok(self.left_region_of(x).value(x)),
            Err(e) => Err(e),
        }
    }

    fn left_region_of(&self, boundary: f64) -> &WaveRegion {
        self.regions
            .iter()
            .find(|r| r.x_hi == boundary)
            .expect("boundary belongs to a region")
    }

    fn right_region_of(&self, boundary: f64) -> &WaveRegion {
        self.regions
            .iter()
            .find(|r| r.x_lo == boundary)
            .expect("boundary belongs to a region")
    }

    /// Largest |ψ(b⁺) − ψ(b⁻)| over internal boundaries.
    pub fn continuity_mismatch(&self) -> f64 {
        self.regions
            .windows(2)
            .map(|w| (w[1].value(w[0].x_hi) - w[0].value(w[0].x_hi)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest |ψ′(b⁺) − ψ′(b⁻) − z_b ψ(b)| over internal boundaries, where z_b
    /// is the total delta strength the potential places at b.
    pub fn jump_mismatch(&self, p: &Potential1D) -> f64 {
        self.boundaries()
            .map(|b| {
                let z: Complex64 = p
                    .deltas()
                    .iter()
                    .filter(|d| d.position == b)
                    .map(|d| d.strength)
                    .sum();
                let (l, r) = (self.left_region_of(b), self.right_region_of(b));
                (r.derivative(b) - l.derivative(b) - z * l.value(b)).norm()
            })
            .fold(0.0, f64::max)
    }

    fn sample_point(r: &WaveRegion) -> f64 {
        match (r.x_lo.is_finite(), r.x_hi.is_finite()) {
            (true, true) => 0.5 * (r.x_lo + r.x_hi),
            (true, false) => r.x_lo + 1.0,
            (false, true) => r.x_hi - 1.0,
            (false, false) => 0.0,
        }
    }
}

/// j(x) = −i(ψ*ψ′ − ψψ*′) = 2 Im(ψ*ψ′), from the closed-form derivative.
pub fn probability_current(w: &PiecewiseWave, x: f64) -> Result<f64> {
    let r = w.region_at(x)?;
    Ok(2.0 * (r.value(x).conj() * r.derivative(x)).im)
}

/// Both sides of j(+∞) − j(−∞) = 2 ∫ Im V |ψ|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityDefect {
    pub lhs: f64,
    pub rhs: f64,
}

impl ContinuityDefect {
    pub fn mismatch(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Evaluate the integrated continuity identity for a solution `w` of the
/// Schrödinger equation with potential `p`. The left side uses the currents
/// in the outermost regions; the right side integrates Im V |ψ|² exactly.
pub fn continuity_defect(p: &Potential1D, w: &PiecewiseWave) -> Result<ContinuityDefect> {
    let first = &w.regions[0];
    let last = &w.regions[w.regions.len() - 1];
    let lhs = probability_current(w, PiecewiseWave::sample_point(last))?
        - probability_current(w, PiecewiseWave::sample_point(first))?;

    let mut rhs = 0.0;
    for d in p.deltas() {
        if d.strength.im != 0.0 {
            rhs += 2.0 * d.strength.im * w.value(d.position)?.norm_sqr();
        }
    }
    for s in p.segments().iter().filter(|s| s.value.im != 0.0) {
        for r in &w.regions {
            let (a, b) = (s.x_lo.max(r.x_lo), s.x_hi.min(r.x_hi));
            if a < b {
                rhs += 2.0 * s.value.im * r.density_integral(a, b);
            }
        }
    }
    Ok(ContinuityDefect { lhs, rhs })
}

/// Left-incidence scattering solution assembled region by region.
pub fn scattering_wave(p: &Potential1D, k: f64) -> Result<(ScatteringAmplitudes, PiecewiseWave)> {
    positive(k, "k")?;
    let kc = Complex64::new(k, 0.0);
    if p.is_empty() {
        let wave = PiecewiseWave::new(vec![WaveRegion {
            x_lo: f64::NEG_INFINITY,
            x_hi: f64::INFINITY,
            origin: 0.0,
            wavenumber: kc,
            amp_right: Complex64::new(1.0, 0.0),
            amp_left: ZERO,
        }])?;
        let amps = ScatteringAmplitudes {
            k,
            refl: ZERO,
            trans: Complex64::new(1.0, 0.0),
        };
        return Ok((amps, wave));
    }

    let chain = TransferChain::new(p, k)?;
    let amps = amplitudes_from_chain(&chain)?;
    let mut state = (
        Complex64::new(0.0, k * chain.x_left).exp(),
        amps.refl * Complex64::new(0.0, -k * chain.x_left).exp(),
    );
    let mut regions = Vec::with_capacity(chain.steps.len() + 2);
    regions.push(WaveRegion {
        x_lo: f64::NEG_INFINITY,
        x_hi: chain.x_left,
        origin: chain.x_left,
        wavenumber: kc,
        amp_right: state.0,
        amp_left: state.1,
    });
    for step in &chain.steps {
        state = step.delta.apply(state);
        let (a, b) = state;
        let (wavenumber, amp_right, amp_left) = if step.value == ZERO {
            (kc, a, b)
        } else {
            let kappa = local_wavenumber(k, step.value);
            let ratio = kc / kappa;
            (
                kappa,
                0.5 * ((a + b) + ratio * (a - b)),
                0.5 * ((a + b) - ratio * (a - b)),
            )
        };
        regions.push(WaveRegion {
            x_lo: step.x_from,
            x_hi: step.x_to,
            origin: step.x_from,
            wavenumber,
            amp_right,
            amp_left,
        });
        state = step.propagation.apply(state);
    }
    state = chain.final_delta.apply(state);
    regions.push(WaveRegion {
        x_lo: chain.x_right,
        x_hi: f64::INFINITY,
        origin: chain.x_right,
        wavenumber: kc,
        amp_right: state.0,
        amp_left: state.1,
    });
    Ok((amps, PiecewiseWave::new(regions)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{single_delta_amplitudes, SingleDeltaParams};
    use crate::model::{build_potential, UniformSegment};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn free_wave(k: f64, a: Complex64, b: Complex64) -> PiecewiseWave {
        PiecewiseWave::new(vec![WaveRegion {
            x_lo: f64::NEG_INFINITY,
            x_hi: f64::INFINITY,
            origin: 0.0,
            wavenumber: c(k, 0.0),
            amp_right: a,
            amp_left: b,
        }])
        .unwrap()
    }

    #[test]
    fn plane_wave_current() {
        let w = free_wave(1.7, c(1.0, 0.0), ZERO);
        for x in [-3.0, 0.0, 2.2] {
            assert_relative_eq!(
                probability_current(&w, x).unwrap(),
                3.4,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn counter_propagating_current_has_no_interference() {
        let (k, a, b) = (0.9, c(0.3, -1.2), c(-0.7, 0.4));
        let w = free_wave(k, a, b);
        let expected = 2.0 * k * (a.norm_sqr() - b.norm_sqr());
        for i in 0..20 {
            let x = -5.0 + 0.53 * i as f64;
            assert_relative_eq!(
                probability_current(&w, x).unwrap(),
                expected,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn single_delta_currents() {
        let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0).unwrap();
        let pot = Potential1D::single_delta(p.z()).unwrap();
        let (amps, w) = scattering_wave(&pot, p.k()).unwrap();
        let exact = single_delta_amplitudes(&p).unwrap();
        assert!((amps.refl - exact.refl).norm() < 1e-14);
        let k = p.k();
        assert_relative_eq!(
            probability_current(&w, -2.0).unwrap(),
            2.0 * k * (1.0 - 1.01 / 1.81),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            probability_current(&w, 3.0).unwrap(),
            2.0 * k / 1.81,
            max_relative = 1e-13
        );
        assert!(matches!(
            probability_current(&w, 0.0),
            Err(Error::OnBoundary(_))
        ));
    }

    #[test]
    fn single_delta_defect() {
        let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0).unwrap();
        let pot = Potential1D::single_delta(p.z()).unwrap();
        let (amps, w) = scattering_wave(&pot, p.k()).unwrap();
        let d = continuity_defect(&pot, &w).unwrap();
        let total = amps.summary().total;
        assert_relative_eq!(d.lhs, 2.0 * p.k() * (total - 1.0), max_relative = 1e-12);
        // ψ(0) = D
        assert_relative_eq!(
            d.rhs,
            2.0 * (2.0 * 0.1) * amps.trans.norm_sqr(),
            max_relative = 1e-12
        );
        assert!(d.mismatch() < 1e-12);
        assert!(d.lhs > 0.0);
    }

    #[test]
    fn real_potential_has_no_defect() {
        let pot = build_potential(
            vec![crate::model::DeltaSpike::new(0.3, c(1.5, 0.0))],
            vec![UniformSegment::new(-1.0, 0.0, c(-2.0, 0.0)).unwrap()],
        )
        .unwrap();
        let (_, w) = scattering_wave(&pot, 1.2).unwrap();
        let d = continuity_defect(&pot, &w).unwrap();
        assert!(d.lhs.abs() < 1e-12 && d.rhs == 0.0);
    }

    #[test]
    fn square_well_wave_matches() {
        let pot = Potential1D::imaginary_square_well(1.0, 1.0).unwrap();
        let (_, w) = scattering_wave(&pot, 1.3).unwrap();
        assert!(w.continuity_mismatch() < 1e-12);
        assert!(w.jump_mismatch(&pot) < 1e-12);
        let d = continuity_defect(&pot, &w).unwrap();
        assert!(d.mismatch() < 1e-10, "{d:?}");
    }

    #[test]
    fn density_integral_against_midpoint_sum() {
        let r = WaveRegion {
            x_lo: -1.0,
            x_hi: 2.0,
            origin: -1.0,
            wavenumber: c(1.3, 0.4),
            amp_right: c(0.5, 0.2),
            amp_left: c(-0.3, 0.9),
        };
        let n = 200_000;
        let h = 3.0 / n as f64;
        let sum: f64 = (0..n)
            .map(|i| r.value(-1.0 + (i as f64 + 0.5) * h).norm_sqr() * h)
            .sum();
        assert_relative_eq!(r.density_integral(-1.0, 2.0), sum, max_relative = 1e-9);
    }

    #[test]
    fn exprel_small_and_large() {
        assert_relative_eq!(
            exprel(c(1e-6, 0.0)).re,
            1.0 + 5e-7 + 1e-12 / 6.0,
            max_relative = 1e-15
        );
        let w = c(0.3, -2.0);
        assert!((exprel(w) - (w.exp() - 1.0) / w).norm() < 1e-15);
    }

    #[test]
    fn wave_validation() {
        let r = |lo: f64, hi: f64| WaveRegion {
            x_lo: lo,
            x_hi: hi,
            origin: 0.0,
            wavenumber: c(1.0, 0.0),
            amp_right: c(1.0, 0.0),
            amp_left: ZERO,
        };
        assert!(PiecewiseWave::new(vec![]).is_err());
        assert!(PiecewiseWave::new(vec![r(0.0, 1.0), r(1.5, 2.0)]).is_err());
        assert!(PiecewiseWave::new(vec![r(1.0, 1.0)]).is_err());
        let w = PiecewiseWave::new(vec![r(0.0, 1.0), r(1.0, 2.0)]).unwrap();
        assert!(matches!(
            probability_current(&w, 5.0),
            Err(Error::OutsideRegions(_))
        ));
    }
}
