//! Discretized check of H†η = ηH at first order in ε.
//!
//! H = −d²/dx² + z g_w(x) on a uniform grid with Dirichlet ends, where g_w is
//! a normalized Gaussian of width w standing in for δ(x), and η = 1 + εη⁽¹⁾.
//! The residual R = H†η − ηH is measured weakly, against a fixed family of
//! smooth Gaussian wavepackets {φ_a}:
//!
//! ```text
//! residual = max_ab |⟨φ_a, R φ_b⟩| / max_ab |⟨φ_a, η⁽¹⁾ φ_b⟩|
//! ```
//!
//! The first-order part of R vanishes in the continuum, so the residual is
//! ε²·O(1) plus a discretization term that shrinks with w and the spacing.

use num_complex::Complex64;

use crate::analytic::SingleDeltaParams;
use crate::error::{positive, Error, Result};

/// Wavepacket centres, in units of 1/λ.
const PACKET_CENTRES: [f64; 5] = [-1.5, -0.5, 0.0, 0.7, 1.5];
/// Wavepacket momenta, in units of λ.
const PACKET_MOMENTA: [f64; 3] = [0.0, 1.0, 2.0];
/// Wavepacket width, in units of 1/λ.
const PACKET_WIDTH: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwiningGrid {
    pub spacing: f64,
    pub half_width: f64,
    pub delta_width: f64,
}

impl IntertwiningGrid {
    pub fn new(spacing: f64, half_width: f64, delta_width: f64) -> Result<Self> {
        Ok(Self {
            spacing: positive(spacing, "grid spacing")?,
            half_width: positive(half_width, "domain half-width")?,
            delta_width: positive(delta_width, "delta width")?,
        })
    }

    /// spacing ≤ w/2, w ≤ 0.1/λ, spacing ≤ 0.02/λ, half-width ≥ 6/λ.
    fn check(&self, lambda: f64) -> Result<()> {
        let fail = |msg: String| Err(Error::Resolution(msg));
        if self.spacing > 0.5 * self.delta_width {
            return fail(format!(
                "spacing {} must be at most half the delta width {}",
                self.spacing, self.delta_width
            ));
        }
        if self.delta_width > 0.1 / lambda {
            return fail(format!(
                "delta width {} must be at most 0.1/lambda",
                self.delta_width
            ));
        }
        if self.spacing > 0.02 / lambda {
            return fail(format!(
                "spacing {} must be at most 0.02/lambda",
                self.spacing
            ));
        }
        if self.half_width < 6.0 / lambda {
            return fail(format!(
                "half-width {} must be at least 6/lambda",
                self.half_width
            ));
        }
        Ok(())
    }

    fn points(&self) -> usize {
        (self.half_width / self.spacing).round() as usize
    }
}

/// Uniform symmetric grid x_i = i·h, i = −n..=n, stored left to right.
struct Grid {
    h: f64,
    n: usize,
}

impl Grid {
    fn len(&self) -> usize {
        2 * self.n + 1
    }

    fn x(&self, idx: usize) -> f64 {
        (idx as f64 - self.n as f64) * self.h
    }
}

/// η⁽¹⁾ applied to grid values with trapezoid weights, in O(N).
///
/// For every x the kernel sum only sees s = |x| and w(u) = v(u) + v(−u),
/// so one forward and one backward exponential recursion over u ≥ 0 give the
/// dense product exactly.
fn apply_eta1(grid: &Grid, lambda: f64, v: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n;
    let folded: Vec<Complex64> = (0..=n)
        .map(|j| if j == 0 { v[n] } else { v[n + j] + v[n - j] })
        .collect();
    let r = (-lambda * grid.h).exp();

    let mut below = vec![Complex64::new(0.0, 0.0); n + 1];
    for i in 1..=n {
        below[i] = r * (below[i - 1] + folded[i - 1]);
    }
    let mut above = vec![Complex64::new(0.0, 0.0); n + 1];
    for i in (0..n).rev() {
        above[i] = r * (above[i + 1] + folded[i + 1]);
    }

    let scale = Complex64::new(0.0, 0.5 * lambda * grid.h);
    let half: Vec<Complex64> = (0..=n).map(|i| scale * (above[i] - below[i])).collect();
    (0..grid.len())
        .map(|idx| half[(idx as isize - n as isize).unsigned_abs()])
        .collect()
}

/// (−D₂ + z g) v with Dirichlet ends.
fn apply_hamiltonian(grid: &Grid, potential: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let len = v.len();
    (0..len)
        .map(|i| {
            let left = if i > 0 {
                v[i - 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let right = if i + 1 < len {
                v[i + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            (2.0 * v[i] - left - right) * inv_h2 + potential[i] * v[i]
        })
        .collect()
}

fn inner(grid: &Grid, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * grid.h
}

/// Weak-form residual of H†(1 + εη⁽¹⁾) − (1 + εη⁽¹⁾)H, normalized by the
/// same weak norm of η⁽¹⁾.
pub fn intertwining_residual(
    grid_spacing: f64,
    domain_half_width: f64,
    delta_width: f64,
    p: &SingleDeltaParams,
) -> Result<f64> {
    let spec = IntertwiningGrid::new(grid_spacing, domain_half_width, delta_width)?;
    let lambda = p.lambda();
    spec.check(lambda)?;
    let grid = Grid {
        h: spec.spacing,
        n: spec.points(),
    };
    let eps = p.epsilon();
    let z = p.z();
    let w = spec.delta_width;
    let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * w);
    let gauss: Vec<f64> = (0..grid.len())
        .map(|i| {
            let x = grid.x(i);
            norm * (-0.5 * (x / w).powi(2)).exp()
        })
        .collect();
    let pot: Vec<Complex64> = gauss.iter().map(|&g| z * g).collect();
    let pot_adj: Vec<Complex64> = pot.iter().map(|v| v.conj()).collect();

    let packets: Vec<Vec<Complex64>> = PACKET_CENTRES
        .iter()
        .flat_map(|&c| PACKET_MOMENTA.iter().map(move |&m| (c, m)))
        .map(|(c, m)| {
            let (centre, momentum, width) = (c / lambda, m * lambda, PACKET_WIDTH / lambda);
            (0..grid.len())
                .map(|i| {
                    let x = grid.x(i);
                    let envelope = (-0.5 * ((x - centre) / width).powi(2)).exp();
                    Complex64::from_polar(envelope, momentum * x)
                })
                .collect()
        })
        .collect();

    let mut residual_max: f64 = 0.0;
    let mut eta_max: f64 = 0.0;
    for b in &packets {
        let eta_b = apply_eta1(&grid, lambda, b);
        // H†(b + ε η b)
        let metric_b: Vec<Complex64> = b.iter().zip(&eta_b).map(|(v, e)| v + eps * e).collect();
        let left = apply_hamiltonian(&grid, &pot_adj, &metric_b);
        // (1 + εη) H b
        let hb = apply_hamiltonian(&grid, &pot, b);
        let eta_hb = apply_eta1(&grid, lambda, &hb);
        let r_b: Vec<Complex64> = left
            .iter()
            .zip(&hb)
            .zip(&eta_hb)
            .map(|((l, h), eh)| l - (h + eps * eh))
            .collect();
        for a in &packets {
            residual_max = residual_max.max(inner(&grid, a, &r_b).norm());
            eta_max = eta_max.max(inner(&grid, a, &eta_b).norm());
        }
    }
    Ok(residual_max / eta_max)
}
