//! Pegg–Barnett phase distribution in the continuum limit, on the window
//! θ ∈ [−π, π] (reference phase θ_0 = −π).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::FieldDensityMatrix;
use crate::error::{Error, Result};

/// Odd, so that θ = 0 is a grid point.
pub const DEFAULT_THETA_GRID: usize = 513;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDistribution {
    /// Uniform over [−π, π], both endpoints included.
    pub theta_grid: Vec<f64>,
    pub p: Vec<f64>,
    pub tau: f64,
    pub theta_0: f64,
}

impl PhaseDistribution {
    /// Trapezoid rule over the grid.
    pub fn integral(&self) -> f64 {
        self.theta_grid
            .windows(2)
            .zip(self.p.windows(2))
            .map(|(t, p)| 0.5 * (t[1] - t[0]) * (p[0] + p[1]))
            .sum()
    }

    /// max_i |P(θ_i) − P(−θ_i)|; the grid is symmetric so θ_i ↔ θ_{N−1−i}.
    pub fn asymmetry(&self) -> f64 {
        let n = self.p.len();
        (0..n / 2)
            .map(|i| (self.p[i] - self.p[n - 1 - i]).abs())
            .fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> f64 {
        let (i, _) = self
            .p
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bp), (i, &p)| if p > bp { (i, p) } else { (bi, bp) });
        self.theta_grid[i]
    }
}

/// c_d = Σ_m ρ_{m+d, m} for d = 0..dim (c_0 is the trace).
pub fn coherence_sums(rho: &FieldDensityMatrix) -> Vec<C64> {
    let n = rho.dim();
    (0..n)
        .map(|d| (d..n).map(|m| rho.rho[(m, m - d)]).sum())
        .collect()
}

fn theta_grid(size: usize) -> Vec<f64> {
    let step = 2.0 * PI / (size - 1) as f64;
    (0..size)
        .map(|i| if i == size - 1 { PI } else { -PI + i as f64 * step })
        .collect()
}

fn density_at(c: &[C64], theta: f64) -> f64 {
    let s: f64 = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, cd)| (cd * C64::cis(-(d as f64) * theta)).re)
        .sum();
    (1.0 + 2.0 * s) / (2.0 * PI)
}

/// P(θ) = (1/2π)[1 + 2 Re Σ_{m>m'} ρ_{m,m'} e^{−i(m−m')θ}] on `grid_size`
/// uniformly spaced angles.
pub fn phase_distribution(rho: &FieldDensityMatrix, grid_size: usize) -> Result<PhaseDistribution> {
    if grid_size < 64 {
        return Err(Error::GridTooSmall(grid_size));
    }
    let c = coherence_sums(rho);
    let theta_grid = theta_grid(grid_size);
    let p = theta_grid.iter().map(|&t| density_at(&c, t)).collect();
    Ok(PhaseDistribution { theta_grid, p, tau: rho.tau, theta_0: -PI })
}

/// ∫_{−π}^{π} θ^order P(θ) dθ, from the Fourier integrals
///
/// ```text
/// ∫ θ  e^{−idθ} dθ / 2π = −i (−1)^{d+1} / d
/// ∫ θ² e^{−idθ} dθ / 2π = 2 (−1)^d / d²
/// ```
///
/// which give ⟨φ⟩ = 2 Σ_d (−1)^{d+1} Im c_d / d and
/// ⟨φ²⟩ = π²/3 + 4 Σ_d (−1)^d Re c_d / d².
pub fn phase_moment(rho: &FieldDensityMatrix, order: u32) -> Result<f64> {
    let c = coherence_sums(rho);
    let sign = |d: usize| if d.is_multiple_of(2) { 1.0 } else { -1.0 };
    match order {
        1 => Ok(c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, cd)| -2.0 * sign(d) * cd.im / d as f64)
            .sum()),
        2 => Ok(PI * PI / 3.0
            + c.iter()
                .enumerate()
                .skip(1)
                .map(|(d, cd)| 4.0 * sign(d) * cd.re / (d * d) as f64)
                .sum::<f64>()),
        o => Err(Error::UnsupportedOrder(o)),
    }
}

/// Composite Simpson quadrature of ∫ θ^order P(θ) dθ over `intervals`
/// (rounded up to even) subintervals, for checking [`phase_moment`].
pub fn phase_moment_quadrature(rho: &FieldDensityMatrix, order: u32, intervals: usize) -> f64 {
    let c = coherence_sums(rho);
    let intervals = intervals + intervals % 2;
    let grid = theta_grid(intervals + 1);
    let h = 2.0 * PI / intervals as f64;
    let sum: f64 = grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let w = if i == 0 || i == intervals { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * t.powi(order as i32) * density_at(&c, t)
        })
        .sum();
    sum * h / 3.0
}

/// (Δφ)² = ⟨φ²⟩ − ⟨φ⟩²
pub fn phase_variance(rho: &FieldDensityMatrix) -> f64 {
    let m1 = phase_moment(rho, 1).expect("order 1 supported");
    let m2 = phase_moment(rho, 2).expect("order 2 supported");
    m2 - m1 * m1
}
