//! Independent reference computations used by the integration tests.
#![allow(dead_code, clippy::excessive_precision)]

use num_complex::Complex64;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Left-incidence amplitudes (C, D) by propagating (ψ, ψ′) from the right
/// edge to the left edge. Deltas are (position, strength), segments are
/// (lo, hi, value). Normalized to D = 1 at the right and rescaled at the end.
pub fn propagate_amplitudes(
    deltas: &[(f64, Complex64)],
    segments: &[(f64, f64, Complex64)],
    k: f64,
) -> (Complex64, Complex64) {
    let mut cuts: Vec<f64> = deltas.iter().map(|d| d.0).collect();
    for s in segments {
        cuts.push(s.0);
        cuts.push(s.1);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    if cuts.is_empty() {
        return (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    }
    let (x_lo, x_hi) = (cuts[0], cuts[cuts.len() - 1]);
    let kc = Complex64::new(k, 0.0);
    let mut psi = (I * kc * x_hi).exp();
    let mut dpsi = I * kc * psi;
    for idx in (0..cuts.len()).rev() {
        let x = cuts[idx];
        for d in deltas.iter().filter(|d| d.0 == x) {
            dpsi -= d.1 * psi;
        }
        if idx == 0 {
            break;
        }
        let left = cuts[idx - 1];
        let mid = 0.5 * (left + x);
        let v: Complex64 = segments
            .iter()
            .filter(|s| s.0 <= mid && mid <= s.1)
            .map(|s| s.2)
            .sum();
        let kappa = (kc * kc - v).sqrt();
        let len = x - left;
        let (c, s) = ((kappa * len).cos(), (kappa * len).sin());
        let new_psi = psi * c - dpsi * s / kappa;
        let new_dpsi = psi * kappa * s + dpsi * c;
        psi = new_psi;
        dpsi = new_dpsi;
    }
    let incident = 0.5 * (psi + dpsi / (I * kc)) * (-I * kc * x_lo).exp();
    let reflected = 0.5 * (psi - dpsi / (I * kc)) * (I * kc * x_lo).exp();
    (reflected / incident, incident.inv())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of a complex integrand.
pub fn integrate<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
        const XK: [f64; 8] = [
            0.991455371120812639206854697526329,
            0.949107912342758524526189684047851,
            0.864864423359769072789712788640926,
            0.741531185599394439863864773280788,
            0.586087235467691130294144845693013,
            0.405845151377397166906606412076961,
            0.207784955007898467600689403773245,
            0.000000000000000000000000000000000,
        ];
        const WK: [f64; 8] = [
            0.022935322010529224963732008058970,
            0.063092092629978553290700663189204,
            0.104790010322250183839876322541518,
            0.140653259715525918745189590510238,
            0.169004726639267902826583426598550,
            0.190350578064785409913256402421014,
            0.204432940075298892414161999234649,
            0.209482141084727828012999174891714,
        ];
        const WG: [f64; 4] = [
            0.129484966168869693270611432679082,
            0.279705391489276667901467771423780,
            0.381830050505118944950369775488975,
            0.417959183673469387755102040816327,
        ];
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let centre = f(c);
        let mut kron = centre * WK[7];
        let mut gauss = centre * WG[3];
        for j in 0..7 {
            let pair = f(c - h * XK[j]) + f(c + h * XK[j]);
            kron += pair * WK[j];
            if j % 2 == 1 {
                gauss += pair * WG[j / 2];
            }
        }
        (kron * h, ((kron - gauss) * h).norm())
    }
    fn recurse<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (value, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return value;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth - 1) + recurse(f, m, b, 0.5 * tol, depth - 1)
    }
    recurse(f, a, b, tol, 40)
}

/// The first-order kernel evaluated straight from its definition.
pub fn kernel(x: f64, y: f64, lambda: f64) -> Complex64 {
    let sign = (y * y - x * x).signum();
    let branch = if x * y > 0.0 {
        (-lambda * (x - y).abs()).exp()
    } else {
        (-lambda * (x + y).abs()).exp()
    };
    I * 0.5 * lambda * branch * sign
}

/// Single-delta amplitudes for z = 2λ(1 + iε), k = qλ.
pub fn single_delta(lambda: f64, eps: f64, q: f64) -> (Complex64, Complex64) {
    let k = q * lambda;
    let z = 2.0 * lambda * Complex64::new(1.0, eps);
    let w = I * z / (2.0 * k);
    let d = (1.0 + w).inv();
    (-w * d, d)
}

/// Ψ(x) = ψ(x) + ½ε ∫ η⁽¹⁾(x, y) ψ(y) dy by quadrature, split at 0 and ±x.
pub fn corrected_by_quadrature(x: f64, lambda: f64, eps: f64, q: f64, tol: f64) -> Complex64 {
    let k = q * lambda;
    let (c, d) = single_delta(lambda, eps, q);
    let psi = move |y: f64| {
        if y < 0.0 {
            (I * k * y).exp() + c * (-I * k * y).exp()
        } else {
            d * (I * k * y).exp()
        }
    };
    let integrand = |y: f64| kernel(x, y, lambda) * psi(y);
    let reach = x.abs() + 45.0 / lambda;
    let mut cuts = vec![-reach, -x.abs(), 0.0, x.abs(), reach];
    cuts.dedup();
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        // keep panels short so the oscillation is resolved
        let pieces = ((w[1] - w[0]) * (k + lambda)).ceil().max(1.0) as usize;
        let step = (w[1] - w[0]) / pieces as f64;
        for p in 0..pieces {
            let a = w[0] + p as f64 * step;
            total += integrate(&integrand, a, a + step, tol / pieces as f64);
        }
    }
    psi(x) + 0.5 * eps * total
}

/// Least-squares slope of log(y) against log(x).
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    linear_slope(&lx, &ly)
}

pub fn linear_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
