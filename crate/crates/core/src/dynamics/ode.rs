//! Classic fourth-order Runge–Kutta on the folded system
//!
//! ```text
//!         ⎛ α_1          v_1 e^{−iδ_1t}  0               0              ⎞
//! i dA/dt=⎜ 2v_1 e^{iδ_1t}  α_3           v_3 e^{−iδ_3t}  0              ⎟ A
//!         ⎜ 0            v_3 e^{iδ_3t}   α_4             v_4 e^{−iδ_4t} ⎟
//!         ⎝ 0            0               v_4 e^{iδ_4t}   α_5            ⎠
//! ```
//!
//! for A = (A_1, A_3, A_4, A_5). The integration runs in a frame rotating at
//! the midpoint c of the Kerr shifts, A = Ã e^{−ict}, which is exact and
//! shrinks the step-size bound when χ is large.

use num_complex::Complex64 as C64;

use super::Amplitudes;
use crate::error::{Error, Result};
use crate::manifold::ManifoldCoefficients;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// h ≤ safety / ρ with ρ a bound on the generator's spectral scale.
    pub safety: f64,
    pub max_step: f64,
    /// Put α_5 rather than α_4 on the third diagonal entry.
    pub literal_kerr_entry: bool,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { safety: 0.01, max_step: 1e-3, literal_kerr_entry: false }
    }
}

struct Generator {
    diag: [f64; 4],
    v1: f64,
    v3: f64,
    v4: f64,
    d1: f64,
    d3: f64,
    d4: f64,
}

impl Generator {
    fn new(c: &ManifoldCoefficients, opts: &OdeOptions) -> (Self, f64) {
        let a4 = if opts.literal_kerr_entry { c.alpha_5 } else { c.alpha_4 };
        let raw = [c.alpha_1, c.alpha_3, a4, c.alpha_5];
        let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let shift = 0.5 * (lo + hi);
        let g = Generator {
            diag: raw.map(|a| a - shift),
            v1: c.v_1,
            v3: c.v_3,
            v4: c.v_4,
            d1: c.delta_1,
            d3: c.delta_3,
            d4: c.delta_4,
        };
        (g, shift)
    }

    /// Gershgorin row bound plus the coupling-phase frequencies.
    fn spectral_scale(&self) -> f64 {
        let rows = [
            self.diag[0].abs() + self.v1,
            self.diag[1].abs() + 2.0 * self.v1 + self.v3,
            self.diag[2].abs() + self.v3 + self.v4,
            self.diag[3].abs() + self.v4,
        ];
        let gersh = rows.iter().copied().fold(0.0, f64::max);
        gersh + self.d1.abs() + self.d3.abs() + self.d4.abs()
    }

    /// dA/dt = −i M(t) A
    fn rhs(&self, t: f64, y: &[C64; 4]) -> [C64; 4] {
        let e1 = C64::cis(self.d1 * t);
        let e3 = C64::cis(self.d3 * t);
        let e4 = C64::cis(self.d4 * t);
        let m = [
            self.diag[0] * y[0] + self.v1 * e1.conj() * y[1],
            2.0 * self.v1 * e1 * y[0] + self.diag[1] * y[1] + self.v3 * e3.conj() * y[2],
            self.v3 * e3 * y[1] + self.diag[2] * y[2] + self.v4 * e4.conj() * y[3],
            self.v4 * e4 * y[2] + self.diag[3] * y[3],
        ];
        m.map(|z| C64::new(z.im, -z.re))
    }

    fn rk4_step(&self, t: f64, h: f64, y: &[C64; 4]) -> [C64; 4] {
        let add = |y: &[C64; 4], k: &[C64; 4], s: f64| -> [C64; 4] {
            [y[0] + k[0] * s, y[1] + k[1] * s, y[2] + k[2] * s, y[3] + k[3] * s]
        };
        let k1 = self.rhs(t, y);
        let k2 = self.rhs(t + 0.5 * h, &add(y, &k1, 0.5 * h));
        let k3 = self.rhs(t + 0.5 * h, &add(y, &k2, 0.5 * h));
        let k4 = self.rhs(t + h, &add(y, &k3, h));
        let mut out = *y;
        for i in 0..4 {
            out[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
        out
    }

    fn max_step(&self, opts: &OdeOptions) -> Result<f64> {
        let rho = self.spectral_scale();
        let h = if rho > 0.0 { opts.max_step.min(opts.safety / rho) } else { opts.max_step };
        if !(h >= 1e-12) {
            return Err(Error::StepSizeUnderflow(h));
        }
        Ok(h)
    }

    /// Rotating-frame state from t0 to t1 in equal steps no longer than h.
    fn advance(&self, y: [C64; 4], t0: f64, t1: f64, h: f64) -> [C64; 4] {
        let span = t1 - t0;
        if span == 0.0 {
            return y;
        }
        let steps = (span.abs() / h).ceil().max(1.0) as usize;
        let dt = span / steps as f64;
        let mut y = y;
        for i in 0..steps {
            y = self.rk4_step(t0 + i as f64 * dt, dt, &y);
        }
        y
    }
}

/// Propagate `state` from `t0` to `t1` (either direction).
pub fn propagate(
    coeffs: &ManifoldCoefficients,
    state: Amplitudes,
    t0: f64,
    t1: f64,
    opts: &OdeOptions,
) -> Result<Amplitudes> {
    let (gen, shift) = Generator::new(coeffs, opts);
    let h = gen.max_step(opts)?;
    let into = C64::cis(shift * t0);
    let y0 = state.as_array().map(|z| z * into);
    let y1 = gen.advance(y0, t0, t1, h);
    let out = C64::cis(-shift * t1);
    Ok(Amplitudes::from_array(y1.map(|z| z * out)))
}

pub fn integrate_manifold_ode(
    coeffs: &ManifoldCoefficients,
    initial_weight: C64,
    t_grid: &[f64],
) -> Result<Vec<Amplitudes>> {
    integrate_manifold_ode_with(coeffs, initial_weight, t_grid, &OdeOptions::default())
}

/// Samples of (A_1, A_3, A_4, A_5) on `t_grid`, starting from all weight in
/// level 5.
pub fn integrate_manifold_ode_with(
    coeffs: &ManifoldCoefficients,
    initial_weight: C64,
    t_grid: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<Amplitudes>> {
    super::evolve::check_grid(t_grid)?;
    let (gen, shift) = Generator::new(coeffs, opts);
    let h = gen.max_step(opts)?;
    let mut y = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), initial_weight];
    let mut t = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &tn in t_grid {
        y = gen.advance(y, t, tn, h);
        t = tn;
        let back = C64::cis(-shift * t);
        out.push(Amplitudes::from_array(y.map(|z| z * back)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;

    #[test]
    fn frozen_without_coupling_or_kerr() {
        let mut p = ModelParams::new(5.0, 1);
        for l in [&mut p.lambda_1, &mut p.lambda_2, &mut p.lambda_3, &mut p.lambda_4] {
            *l = 0.0;
        }
        let c = ManifoldCoefficients::new(&p, 3).unwrap();
        let q = C64::new(0.3, 0.1);
        let out = integrate_manifold_ode(&c, q, &[0.0, 0.5, 2.0]).unwrap();
        for a in out {
            assert_eq!(a, Amplitudes::excited(q));
        }
    }

    #[test]
    fn kerr_only_is_a_phase() {
        let mut p = ModelParams::new(5.0, 1);
        for l in [&mut p.lambda_1, &mut p.lambda_2, &mut p.lambda_3, &mut p.lambda_4] {
            *l = 0.0;
        }
        p.chi = 0.7;
        let c = ManifoldCoefficients::new(&p, 6).unwrap();
        let q = C64::new(0.5, 0.0);
        let grid = [0.0, 0.25, 1.0, 3.0];
        let out = integrate_manifold_ode(&c, q, &grid).unwrap();
        for (a, t) in out.iter().zip(grid) {
            assert!((a.a5 - q * C64::cis(-c.alpha_5 * t)).norm() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_grid() {
        let p = ModelParams::new(5.0, 1);
        let c = ManifoldCoefficients::new(&p, 0).unwrap();
        let q = C64::new(1.0, 0.0);
        assert_eq!(integrate_manifold_ode(&c, q, &[0.1, 0.2]), Err(Error::InvalidTimeGrid));
        assert_eq!(integrate_manifold_ode(&c, q, &[0.0, 0.2, 0.1]), Err(Error::InvalidTimeGrid));
    }

    #[test]
    fn step_underflow_reported() {
        let mut p = ModelParams::new(5.0, 1);
        p.delta_cap_1 = 1e11;
        let c = ManifoldCoefficients::new(&p, 0).unwrap();
        let err = integrate_manifold_ode(&c, C64::new(1.0, 0.0), &[0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::StepSizeUnderflow(_)));
    }
}
