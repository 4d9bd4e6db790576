//! Invariant suite behind `qhscatter check`. Each check cross-validates two
//! independent computation paths of the library.

use std::process::ExitCode;

use num_complex::Complex64;

use qhscatter::analytic::{
    single_delta_total, two_delta_amplitudes, two_delta_total, SingleDeltaParams, TwoDeltaParams,
};
use qhscatter::boundstate::{
    large_l_kappa, pt_symmetry_check, solve_kappa, ThreeDeltaModel, DEFAULT_TOL,
};
use qhscatter::current::{continuity_defect, scattering_wave};
use qhscatter::metric::{
    conservation_residual, corrected_flux_factors, corrected_wavefunction, eta1_value,
    intertwining_residual, CorrectedWave, Region,
};
use qhscatter::{scattering_coefficients, Potential1D, UniformSegment};

type Named = (&'static str, fn() -> Outcome);
type Outcome = qhscatter::Result<(bool, String)>;

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn unitarity() -> Outcome {
    let real = [
        Potential1D::single_delta(Complex64::new(2.0, 0.0))?,
        Potential1D::builder()
            .segment(UniformSegment::new(-1.0, 1.0, Complex64::new(-2.0, 0.0))?)
            .delta(1.0, Complex64::new(0.5, 0.0))
            .build()?,
    ];
    let mut worst: f64 = 0.0;
    for p in &real {
        for k in grid(0.05, 20.0, 100) {
            worst = worst.max((scattering_coefficients(p, k)?.summary().total - 1.0).abs());
        }
    }
    Ok((worst < 1e-12, format!("max |R + T − 1| = {worst:.2e}")))
}

fn two_delta() -> Outcome {
    let mut worst: f64 = 0.0;
    for lambda in grid(0.1, 3.0, 10) {
        for a in grid(0.1, 3.0, 10) {
            for k in grid(0.1, 5.0, 10) {
                let p = TwoDeltaParams::new(lambda, a, k)?;
                let closed = two_delta_amplitudes(&p)?;
                let transfer = scattering_coefficients(&Potential1D::two_delta(lambda, a)?, k)?;
                let total = two_delta_total(&p)?;
                worst = worst
                    .max((closed.trans - transfer.trans).norm() / closed.trans.norm())
                    .max((transfer.summary().total - total).abs() / total);
            }
        }
    }
    Ok((worst < 1e-10, format!("max relative deviation {worst:.2e}")))
}

fn square_well() -> Outcome {
    let well = Potential1D::imaginary_square_well(1.0, 1.0)?;
    let t = |k: f64| scattering_coefficients(&well, k).map(|s| s.summary().transmission);
    let mut inside = 0;
    for k in grid(0.5, 2.5, 41) {
        if t(k)? > 1.0 {
            inside += 1;
        }
    }
    let far = t(50.0)?;
    Ok((
        inside == 41 && (far - 1.0).abs() < 1e-3,
        format!(
            "T > 1 throughout k ∈ [0.5, 2.5]: {}; T(50) = {far:.6}",
            inside == 41
        ),
    ))
}

fn single_delta() -> Outcome {
    let mut worst: f64 = 0.0;
    for eps in grid(-0.5, 0.5, 11) {
        for q in grid(0.2, 5.0, 13) {
            let p = SingleDeltaParams::from_q(1.0, eps, q)?;
            let transfer = scattering_coefficients(&Potential1D::single_delta(p.z())?, p.k())?;
            let total = single_delta_total(&p)?;
            worst = worst.max((transfer.summary().total - total).abs() / total);
        }
    }
    Ok((worst < 1e-10, format!("max relative deviation {worst:.2e}")))
}

fn conservation() -> Outcome {
    let eps = [0.2, 0.1, 0.05, 0.025];
    let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0)?;
    let r: Vec<f64> = eps
        .iter()
        .map(|&e| conservation_residual(&p.with_epsilon(e)))
        .collect();
    let slope = (r[0] / r[3]).ln() / (eps[0] / eps[3]).ln();
    let f = corrected_flux_factors(&p);
    let ok = (slope - 2.0).abs() <= 0.1
        && (f.incoming - 1.05).abs() < 1e-12
        && (f.transmitted - 0.525).abs() < 1e-12
        && (f.reflected - 0.525).abs() < 1e-12;
    Ok((
        ok,
        format!(
            "ε-slope {slope:.3}; factors ({:.4}, {:.4}, {:.4})",
            f.incoming, f.reflected, f.transmitted
        ),
    ))
}

fn asymptotics() -> Outcome {
    let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0)?;
    let right = CorrectedWave::asymptotic(Region::Right, &p)?;
    let left = CorrectedWave::asymptotic(Region::Left, &p)?;
    let mut worst: f64 = 0.0;
    for x in [26.0, 31.5, 40.0] {
        let r = corrected_wavefunction(x, &p)?;
        let l = corrected_wavefunction(-x, &p)?;
        worst = worst
            .max((r - right.value(x)).norm() / r.norm())
            .max((l - left.value(-x)).norm() / l.norm());
    }
    Ok((
        worst < 1e-8,
        format!("far-field relative deviation {worst:.2e}"),
    ))
}

fn continuity() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in grid(0.2, 4.0, 12) {
        for p in [
            Potential1D::two_delta(1.0, 1.0)?,
            Potential1D::imaginary_square_well(1.0, 1.0)?,
            Potential1D::single_delta(Complex64::new(2.0, 0.4))?,
        ] {
            let (_, wave) = scattering_wave(&p, k)?;
            let d = continuity_defect(&p, &wave)?;
            worst = worst.max(d.mismatch() / d.lhs.abs().max(1.0));
        }
    }
    Ok((worst < 1e-10, format!("max |lhs − rhs| {worst:.2e}")))
}

fn bound_state() -> Outcome {
    let hermitian = solve_kappa(&ThreeDeltaModel::new(1.0, 0.0, 3.0)?, DEFAULT_TOL)?.kappa == 1.0;
    let m = ThreeDeltaModel::new(1.0, 1.0, 5.0)?;
    let s = solve_kappa(&m, DEFAULT_TOL)?;
    let pt = pt_symmetry_check(&s);
    let gap = (s.kappa - large_l_kappa(&m)).abs();
    let ok = hermitian
        && (s.kappa - (1.0 - 1.816e-5)).abs() < 1e-8
        && pt.amp_defect < 1e-10
        && gap < 1e-8;
    Ok((
        ok,
        format!(
            "κ = {:.12}; ||A| − |F|| = {:.1e}; asymptotic gap {gap:.1e}",
            s.kappa, pt.amp_defect
        ),
    ))
}

fn kernel() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        for j in 0..100 {
            let (x, y) = (-10.0 + 0.2013 * i as f64, -9.97 + 0.1987 * j as f64);
            if x.abs() == y.abs() {
                continue;
            }
            let a = eta1_value(x, y, 1.3)?;
            worst = worst.max((eta1_value(y, x, 1.3)? - a.conj()).norm());
        }
    }
    let p = SingleDeltaParams::from_q(1.0, 0.1, 1.0)?;
    let coarse = intertwining_residual(0.004, 6.0, 0.016, &p)?;
    let fine = intertwining_residual(0.002, 6.0, 0.008, &p)?;
    Ok((
        worst <= 1e-15 && fine < coarse,
        format!(
            "Hermiticity max {worst:.1e}; intertwining {coarse:.3e} → {fine:.3e} under refinement"
        ),
    ))
}

pub fn run() -> ExitCode {
    let suite: [Named; 9] = [
        ("hermitian unitarity", unitarity),
        ("two-delta closed forms", two_delta),
        ("square-well transmission", square_well),
        ("single-delta total", single_delta),
        ("first-order conservation", conservation),
        ("corrected-wave asymptotics", asymptotics),
        ("continuity identity", continuity),
        ("three-delta bound state", bound_state),
        ("kernel and intertwining", kernel),
    ];
    let mut failures = 0;
    for (name, check) in suite {
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failures += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("{}/{} checks passed", suite.len() - failures, suite.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
