//! Bound state of `−2α δ(x) + iλ(δ(x − L) − δ(x + L))`.
//!
//! With ψ = A e^{κx} (x < −L), B e^{κx} + C e^{−κx} (−L < x < 0),
//! D e^{−κx} + E e^{κx} (0 < x < L), F e^{−κx} (x > L), matching at ±L gives
//!
//! ```text
//! B = A(1 − iλ/2κ)   C = A (iλ/2κ) e^{−2κL}
//! D = F(1 + iλ/2κ)   E = −F (iλ/2κ) e^{−2κL}
//! ```
//!
//! and matching at the origin leaves the real eigenvalue condition
//!
//! ```text
//! α = κ + e^{−2κL} / (1 + (2κ/λ)²) · [2α − (κ + α) e^{−2κL}]
//! ```
//!
//! Energies are −κ² (ħ = 2m = 1).

use num_complex::Complex64;

use crate::current::{PiecewiseWave, WaveRegion};
use crate::error::{finite, positive, Error, Result};
use crate::model::Potential1D;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeDeltaModel {
    pub alpha: f64,
    pub lambda: f64,
    pub l: f64,
}

impl ThreeDeltaModel {
    pub fn new(alpha: f64, lambda: f64, l: f64) -> Result<Self> {
        let lambda = finite(lambda, "lambda")?;
        if lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be >= 0, got {lambda}"
            )));
        }
        Ok(Self {
            alpha: positive(alpha, "alpha")?,
            lambda,
            l: positive(l, "L")?,
        })
    }

    pub fn potential(&self) -> Result<Potential1D> {
        Potential1D::three_delta(self.alpha, self.lambda, self.l)
    }
}

/// Region amplitudes A…F of the bound-state ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateSolution {
    pub kappa: f64,
    pub coeffs: RegionCoefficients,
    pub energy: f64,
}

impl BoundStateSolution {
    /// Coefficients for a trial κ with A = 1. B, C come from matching at −L,
    /// D, E from matching at +L, and F from the derivative jump at the origin,
    /// so ψ is continuous at 0 (and |A| = |F|) only when κ solves the
    /// eigenvalue condition.
    pub fn at_kappa(kappa: f64, m: &ThreeDeltaModel) -> Result<Self> {
        let kappa = positive(kappa, "kappa")?;
        let g = Complex64::new(0.0, m.lambda / (2.0 * kappa));
        let e = (-2.0 * kappa * m.l).exp();
        let a = Complex64::new(1.0, 0.0);
        let b = a * (1.0 - g);
        let c = a * g * e;
        let num = 2.0 * m.alpha * (1.0 - g * (1.0 - e)) - kappa * (1.0 - g * (1.0 + e));
        let f = a * num / (kappa * (1.0 + g * (1.0 + e)));
        let d = f * (1.0 + g);
        let e_coef = -f * g * e;
        Ok(Self {
            kappa,
            coeffs: RegionCoefficients {
                a,
                b,
                c,
                d,
                e: e_coef,
                f,
            },
            energy: -kappa * kappa,
        })
    }

    /// The solution as a piecewise wave (wavenumber −iκ turns e^{iκ'x} into
    /// e^{κx}).
    pub fn wave(&self, m: &ThreeDeltaModel) -> PiecewiseWave {
        let grow = Complex64::new(0.0, -self.kappa);
        let c = &self.coeffs;
        let zero = Complex64::new(0.0, 0.0);
        let region = |x_lo: f64, x_hi: f64, amp_right: Complex64, amp_left: Complex64| WaveRegion {
            x_lo,
            x_hi,
            origin: 0.0,
            wavenumber: grow,
            amp_right,
            amp_left,
        };
        PiecewiseWave::new(vec![
            region(f64::NEG_INFINITY, -m.l, c.a, zero),
            region(-m.l, 0.0, c.b, c.c),
            region(0.0, m.l, c.e, c.d),
            region(m.l, f64::INFINITY, zero, c.f),
        ])
        .expect("bound-state regions tile the line")
    }
}

/// f(κ) = κ + e^{−2κL}/(1 + (2κ/λ)²)·[2α − (κ + α)e^{−2κL}] − α.
/// The correction term is 0 at λ = 0.
pub fn eigenvalue_residual(kappa: f64, m: &ThreeDeltaModel) -> f64 {
    if m.lambda == 0.0 {
        return kappa - m.alpha;
    }
    let e = (-2.0 * kappa * m.l).exp();
    let weight = 1.0 + (2.0 * kappa / m.lambda).powi(2);
    kappa + e / weight * (2.0 * m.alpha - (kappa + m.alpha) * e) - m.alpha
}

/// κ/α ≈ 1 − 2e^{−2αL}/(1 + (2α/λ)²)
pub fn large_l_kappa(m: &ThreeDeltaModel) -> f64 {
    if m.lambda == 0.0 {
        return m.alpha;
    }
    let weight = 1.0 + (2.0 * m.alpha / m.lambda).powi(2);
    m.alpha * (1.0 - 2.0 * (-2.0 * m.alpha * m.l).exp() / weight)
}

/// Bisection for the root continuously connected to κ = α, on [α/2, 2α].
pub fn solve_kappa(m: &ThreeDeltaModel, tol: f64) -> Result<BoundStateSolution> {
    let tol = positive(tol, "tol")?;
    if m.lambda == 0.0 {
        return BoundStateSolution::at_kappa(m.alpha, m);
    }
    let (mut lo, mut hi) = (0.5 * m.alpha, 2.0 * m.alpha);
    let f_lo = eigenvalue_residual(lo, m);
    let f_hi = eigenvalue_residual(hi, m);
    if f_lo >= 0.0 || f_hi <= 0.0 {
        return Err(Error::Bracket {
            lo,
            hi,
            suggested_min_l: suggest_min_l(m),
        });
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = eigenvalue_residual(mid, m);
        if f_mid.abs() < tol || hi - lo <= 4.0 * f64::EPSILON * mid {
            if f_mid.abs() >= tol {
                break;
            }
            return BoundStateSolution::at_kappa(mid, m);
        }
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

/// Smallest L (doubling from the current one) at which the lower bracket end
/// has the required sign.
fn suggest_min_l(m: &ThreeDeltaModel) -> f64 {
    let mut trial = *m;
    for _ in 0..60 {
        trial.l *= 2.0;
        if eigenvalue_residual(0.5 * trial.alpha, &trial) < 0.0 {
            return trial.l;
        }
    }
    f64::INFINITY
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtCheck {
    /// ||A| − |F||
    pub amp_defect: f64,
    /// φ = arg(F/A*), the phase in ψ(−x) = e^{iφ} ψ*(x)
    pub phase: f64,
}

pub fn pt_symmetry_check(s: &BoundStateSolution) -> PtCheck {
    let c = &s.coeffs;
    PtCheck {
        amp_defect: (c.a.norm() - c.f.norm()).abs(),
        phase: (c.f / c.a.conj()).arg(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::continuity_defect;
    use approx::assert_relative_eq;

    fn model(alpha: f64, lambda: f64, l: f64) -> ThreeDeltaModel {
        ThreeDeltaModel::new(alpha, lambda, l).unwrap()
    }

    #[test]
    fn hermitian_limit() {
        let m = model(1.3, 0.0, 2.0);
        assert_eq!(eigenvalue_residual(1.3, &m), 0.0);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        assert_eq!(s.kappa, 1.3);
        let c = s.coeffs;
        let one = Complex64::new(1.0, 0.0);
        assert_eq!((c.b, c.d, c.f), (one, one, one));
        assert_eq!(c.c.norm(), 0.0);
        assert_eq!(c.e.norm(), 0.0);
        assert_relative_eq!(s.energy, -1.69, max_relative = 1e-15);
        let pt = pt_symmetry_check(&s);
        assert_eq!((pt.amp_defect, pt.phase), (0.0, 0.0));
        assert_eq!(large_l_kappa(&m), 1.3);
    }

    #[test]
    fn residual_reference_value() {
        let m = model(1.0, 1.0, 5.0);
        let e = (-10f64).exp();
        let expected = e / 5.0 * (2.0 - 2.0 * e);
        assert_relative_eq!(eigenvalue_residual(1.0, &m), expected, max_relative = 1e-12);
        assert_relative_eq!(eigenvalue_residual(1.0, &m), 1.816e-5, max_relative = 1e-3);
    }

    #[test]
    fn small_kappa_limit() {
        let m = model(1.0, 1.0, 5.0);
        assert!(eigenvalue_residual(1e-12, &m).abs() < 1e-10);
    }

    #[test]
    fn reference_root() {
        let m = model(1.0, 1.0, 5.0);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        assert!((s.kappa - (1.0 - 1.816e-5)).abs() < 1e-8);
        assert!(eigenvalue_residual(s.kappa, &m).abs() < DEFAULT_TOL);
        assert!((s.kappa - large_l_kappa(&m)).abs() < 1e-8);
        assert!(pt_symmetry_check(&s).amp_defect < 1e-10);
    }

    #[test]
    fn stronger_spikes() {
        let m = model(1.0, 2.0, 3.0);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        assert!(eigenvalue_residual(s.kappa, &m).abs() < DEFAULT_TOL);
        // next order is O(L e^{-4αL})
        assert!((s.kappa - large_l_kappa(&m)).abs() < 10.0 * 3.0 * (-12f64).exp());
    }

    #[test]
    fn coefficient_ratios() {
        let m = model(1.0, 1.5, 2.5);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        let c = s.coeffs;
        let bound = m.lambda / (2.0 * s.kappa) * (-2.0 * s.kappa * m.l).exp();
        assert_relative_eq!((c.e / c.f).norm(), bound, max_relative = 1e-12);
        assert_relative_eq!((c.c / c.a).norm(), bound, max_relative = 1e-12);
        assert!((c.e / c.d).norm() <= bound * (1.0 + 1e-10));
    }

    #[test]
    fn wave_matches_all_interfaces() {
        let m = model(1.0, 1.0, 2.0);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        let w = s.wave(&m);
        let pot = m.potential().unwrap();
        assert!(w.continuity_mismatch() < 1e-10);
        assert!(w.jump_mismatch(&pot) < 1e-10);
        let d = continuity_defect(&pot, &w).unwrap();
        assert!(d.lhs.abs() < 1e-12 && d.rhs.abs() < 1e-10, "{d:?}");
    }

    #[test]
    fn perturbed_kappa_breaks_symmetry() {
        let m = model(1.0, 1.0, 5.0);
        let s = solve_kappa(&m, DEFAULT_TOL).unwrap();
        let wrong = BoundStateSolution::at_kappa(1.01 * s.kappa, &m).unwrap();
        assert!(pt_symmetry_check(&wrong).amp_defect > 1e-3);
        assert!(wrong.wave(&m).continuity_mismatch() > 1e-3);
    }

    #[test]
    fn bracket_failure_suggests_length() {
        let m = model(1.0, 2.0, 0.5);
        match solve_kappa(&m, DEFAULT_TOL) {
            Err(Error::Bracket {
                suggested_min_l, ..
            }) => {
                assert!(suggested_min_l > 0.5);
                let fixed = ThreeDeltaModel {
                    l: suggested_min_l,
                    ..m
                };
                assert!(solve_kappa(&fixed, DEFAULT_TOL).is_ok());
            }
            other => panic!("expected bracket error, got {other:?}"),
        }
    }

    #[test]
    fn model_validation() {
        assert!(ThreeDeltaModel::new(0.0, 1.0, 1.0).is_err());
        assert!(ThreeDeltaModel::new(1.0, -1.0, 1.0).is_err());
        assert!(ThreeDeltaModel::new(1.0, 1.0, 0.0).is_err());
        assert!(solve_kappa(&model(1.0, 1.0, 5.0), 0.0).is_err());
    }
}
