//! Closed-form amplitudes for the two-delta and single-delta models.

use num_complex::Complex64;

use crate::error::{finite, positive, Error, Result};
use crate::model::ScatteringAmplitudes;

/// Guard on denominators of the closed forms; same scale as the transfer
/// matrix singularity check.
pub const POLE_GUARD: f64 = 1e-14;

/// `iλ(δ(x − a) − δ(x + a))` probed at wavenumber k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoDeltaParams {
    lambda: f64,
    a: f64,
    k: f64,
}

impl TwoDeltaParams {
    pub fn new(lambda: f64, a: f64, k: f64) -> Result<Self> {
        Ok(Self {
            lambda: positive(lambda, "lambda")?,
            a: positive(a, "a")?,
            k: positive(k, "k")?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// α = λ / 2k
    pub fn alpha(&self) -> f64 {
        self.lambda / (2.0 * self.k)
    }
}

/// `z δ(x)` with z = 2λ(1 + iε), probed at k = qλ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleDeltaParams {
    lambda: f64,
    epsilon: f64,
    k: f64,
}

impl SingleDeltaParams {
    pub fn new(lambda: f64, epsilon: f64, k: f64) -> Result<Self> {
        Ok(Self {
            lambda: positive(lambda, "lambda")?,
            epsilon: finite(epsilon, "epsilon")?,
            k: positive(k, "k")?,
        })
    }

    /// Same model parametrized by q = k/λ.
    pub fn from_q(lambda: f64, epsilon: f64, q: f64) -> Result<Self> {
        let lambda = positive(lambda, "lambda")?;
        Self::new(lambda, epsilon, positive(q, "q")? * lambda)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn q(&self) -> f64 {
        self.k / self.lambda
    }

    pub fn z(&self) -> Complex64 {
        2.0 * self.lambda * Complex64::new(1.0, self.epsilon)
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..*self }
    }
}

pub fn two_delta_amplitudes(p: &TwoDeltaParams) -> Result<ScatteringAmplitudes> {
    let alpha = p.alpha();
    let ka2 = 2.0 * p.k * p.a;
    let s = ka2.sin();
    let denom = 1.0 + Complex64::new(0.0, 2.0 * alpha * alpha * s) * Complex64::new(0.0, ka2).exp();
    if denom.norm() < POLE_GUARD {
        return Err(Error::Singular {
            k: p.k,
            magnitude: denom.norm(),
        });
    }
    let trans = denom.inv();
    let refl = Complex64::new(0.0, 2.0 * alpha * (1.0 - alpha) * s) * trans;
    Ok(ScatteringAmplitudes {
        k: p.k,
        refl,
        trans,
    })
}

fn two_delta_denominator(p: &TwoDeltaParams) -> Result<f64> {
    let alpha = p.alpha();
    let s2 = (2.0 * p.k * p.a).sin().powi(2);
    let denom = 1.0 - 4.0 * alpha * alpha * (1.0 - alpha * alpha) * s2;
    if denom.abs() < POLE_GUARD {
        return Err(Error::Singular {
            k: p.k,
            magnitude: denom.abs(),
        });
    }
    Ok(denom)
}

/// |D|² = 1 / (1 − 4α²(1 − α²) sin² 2ka)
pub fn two_delta_transmission(p: &TwoDeltaParams) -> Result<f64> {
    Ok(1.0 / two_delta_denominator(p)?)
}

/// |C|² + |D|² = (1 + 4α²(1 − α)² sin² 2ka) / (1 − 4α²(1 − α²) sin² 2ka)
pub fn two_delta_total(p: &TwoDeltaParams) -> Result<f64> {
    let alpha = p.alpha();
    let s2 = (2.0 * p.k * p.a).sin().powi(2);
    let num = 1.0 + 4.0 * alpha * alpha * (1.0 - alpha).powi(2) * s2;
    Ok(num / two_delta_denominator(p)?)
}

/// D = (1 + iz/2k)⁻¹, C = −(iz/2k) D
pub fn single_delta_amplitudes(p: &SingleDeltaParams) -> Result<ScatteringAmplitudes> {
    let w = Complex64::new(0.0, 1.0) * p.z() / (2.0 * p.k);
    let denom = 1.0 + w;
    if denom.norm() < POLE_GUARD {
        return Err(Error::Singular {
            k: p.k,
            magnitude: denom.norm(),
        });
    }
    let trans = denom.inv();
    Ok(ScatteringAmplitudes {
        k: p.k,
        refl: -w * trans,
        trans,
    })
}

/// |C|² + |D|² = (1 − 2εq / (1 + ε² + q²))⁻¹
pub fn single_delta_total(p: &SingleDeltaParams) -> Result<f64> {
    let (eps, q) = (p.epsilon, p.q());
    let denom = 1.0 - 2.0 * eps * q / (1.0 + eps * eps + q * q);
    if denom.abs() < POLE_GUARD {
        return Err(Error::Singular {
            k: p.k,
            magnitude: denom.abs(),
        });
    }
    Ok(1.0 / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::probability_summary;
    use approx::assert_relative_eq;

    #[test]
    fn two_delta_weak_limit() {
        let p = TwoDeltaParams::new(1e-12, 1.0, 1.0).unwrap();
        let s = two_delta_amplitudes(&p).unwrap();
        assert!((s.trans - 1.0).norm() < 1e-11);
        assert!(s.refl.norm() < 1e-11);
    }

    #[test]
    fn two_delta_reference_values() {
        let p = TwoDeltaParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.alpha(), 0.5);
        // 1 / (1 − 0.75 sin² 2)
        let expected_t = 1.0 / (1.0 - 0.75 * 2f64.sin().powi(2));
        assert_relative_eq!(
            two_delta_transmission(&p).unwrap(),
            expected_t,
            max_relative = 1e-15
        );
        assert_relative_eq!(expected_t, 2.63238, max_relative = 2e-6);
        let s = probability_summary(&two_delta_amplitudes(&p).unwrap());
        assert_relative_eq!(s.transmission, expected_t, max_relative = 1e-13);
        assert_relative_eq!(two_delta_total(&p).unwrap(), 3.17651, max_relative = 2e-6);
    }

    #[test]
    fn two_delta_transparent_when_sine_vanishes() {
        let k = 1.3;
        let a = std::f64::consts::FRAC_PI_2 / k;
        let p = TwoDeltaParams::new(0.8, a, k).unwrap();
        let s = two_delta_amplitudes(&p).unwrap();
        assert!((s.trans - 1.0).norm() < 1e-14);
        assert!(s.refl.norm() < 1e-14);
        assert!((two_delta_total(&p).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_delta_total_exceeds_one_below_alpha_one() {
        for &(lambda, a, k) in &[(0.5, 0.3, 1.0), (1.0, 1.7, 2.0), (1.9, 0.4, 1.0)] {
            let p = TwoDeltaParams::new(lambda, a, k).unwrap();
            assert!(p.alpha() < 1.0);
            assert!(two_delta_total(&p).unwrap() > 1.0);
            let s = probability_summary(&two_delta_amplitudes(&p).unwrap());
            assert_relative_eq!(s.total, two_delta_total(&p).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn single_delta_hermitian_point() {
        let p = SingleDeltaParams::from_q(1.0, 0.0, 1.0).unwrap();
        let s = single_delta_amplitudes(&p).unwrap();
        assert!((s.trans - Complex64::new(1.0, 1.0).inv()).norm() < 1e-15);
        let sum = probability_summary(&s);
        assert_relative_eq!(sum.transmission, 0.5, max_relative = 1e-15);
        assert_relative_eq!(sum.reflection, 0.5, max_relative = 1e-15);
        assert_eq!(single_delta_total(&p).unwrap(), 1.0);
    }

    #[test]
    fn single_delta_reference_values() {
        let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0).unwrap();
        let s = probability_summary(&single_delta_amplitudes(&p).unwrap());
        assert_relative_eq!(s.transmission, 1.0 / 1.81, max_relative = 1e-14);
        assert_relative_eq!(s.reflection, 1.01 / 1.81, max_relative = 1e-14);
        assert_relative_eq!(
            single_delta_total(&p).unwrap(),
            1.110497,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            single_delta_total(&p).unwrap(),
            s.total,
            max_relative = 1e-14
        );

        let m = SingleDeltaParams::from_q(1.0, -0.1, 1.0).unwrap();
        let t = single_delta_total(&m).unwrap();
        assert_relative_eq!(t, 1.0 / (1.0 + 0.2 / 2.01), max_relative = 1e-15);
        assert_relative_eq!(t, 0.909502, max_relative = 1e-6);
    }

    #[test]
    fn single_delta_small_strength() {
        let p = SingleDeltaParams::new(1e-13, 0.3, 1.0).unwrap();
        let s = single_delta_amplitudes(&p).unwrap();
        assert!(s.refl.norm() < 1e-12);
        assert!((s.trans - 1.0).norm() < 1e-12);
    }

    #[test]
    fn parameter_validation() {
        assert!(TwoDeltaParams::new(0.0, 1.0, 1.0).is_err());
        assert!(TwoDeltaParams::new(1.0, -1.0, 1.0).is_err());
        assert!(SingleDeltaParams::new(1.0, f64::NAN, 1.0).is_err());
        assert!(SingleDeltaParams::from_q(1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn single_delta_has_no_real_pole() {
        // 1 + iz/2k = (q − ε + i)/q never vanishes for real q, ε
        let p = SingleDeltaParams::from_q(1.0, 1.0, 1.0).unwrap();
        let s = probability_summary(&single_delta_amplitudes(&p).unwrap());
        assert_relative_eq!(single_delta_total(&p).unwrap(), 3.0, max_relative = 1e-15);
        assert_relative_eq!(s.total, 3.0, max_relative = 1e-14);
    }
}
