use serde::Serialize;

use super::Scenario;
use crate::dynamics::StateTrajectory;
use crate::manifold::ManifoldCoefficients;
use crate::observables::{phase_distribution, population_inversion, reduced_field_density_at};
use crate::quartic::{self, vieta_errors, RESIDUAL_TOL};

pub const NORM_TOL: f64 = 1e-8;
pub const INITIAL_TOL: f64 = 1e-9;
pub const VIETA_TOL: f64 = 1e-8;
pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-8;
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const PHASE_NORM_TOL: f64 = 1e-6;
/// Density matrices are checked on this many evenly spaced grid points.
pub const DENSITY_SAMPLES: usize = 21;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst value found; the check passes when it does not exceed the
    /// tolerance.
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &'static str, worst: f64, tolerance: f64) -> Self {
        Check { name, worst, tolerance, passed: worst <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub scenario: String,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {:.3e} > {:.1e}", c.name, c.worst, c.tolerance))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("audit {}\n", self.scenario);
        for c in &self.checks {
            out += &format!(
                "  {:<6} {:<24} worst {:.3e}  tol {:.1e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance
            );
        }
        out
    }
}

/// Relative residual and worst Vieta error of `zeta` as roots of the
/// manifold's characteristic quartic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCheck {
    pub residual: f64,
    pub vieta: f64,
}

impl QuarticCheck {
    pub fn passed(&self) -> bool {
        self.residual <= RESIDUAL_TOL && self.vieta <= VIETA_TOL
    }
}

pub fn audit_quartic(coeffs: &ManifoldCoefficients, zeta: &[f64; 4]) -> QuarticCheck {
    let a = &coeffs.a;
    let scale = quartic::coefficient_scale(a);
    let residual = zeta.iter().map(|&z| quartic::eval(a, z).abs()).fold(0.0, f64::max) / scale;
    let vieta = vieta_errors(zeta, a).into_iter().fold(0.0, f64::max);
    QuarticCheck { residual, vieta }
}

fn sample_indices(len: usize) -> Vec<usize> {
    if len <= DENSITY_SAMPLES {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..DENSITY_SAMPLES)
        .map(|i| i * (len - 1) / (DENSITY_SAMPLES - 1))
        .collect();
    idx.dedup();
    idx
}

/// Run the invariant suite over an evolved scenario.
pub fn audit_trajectory(scenario: &Scenario, traj: &StateTrajectory) -> AuditReport {
    let mut checks = Vec::new();
    let n0 = traj.norm_history[0];

    checks.push(Check::new("norm_conservation", traj.max_norm_drift(), NORM_TOL));
    if traj.params.renormalize {
        checks.push(Check::new("unit_initial_norm", (n0 - 1.0).abs(), INITIAL_TOL));
    }

    let initial = &traj.amplitudes[0];
    let manifold_drift = traj
        .amplitudes
        .iter()
        .flat_map(|row| row.iter().zip(initial).map(|(a, a0)| (a.weighted_norm() - a0.weighted_norm()).abs()))
        .fold(0.0, f64::max);
    checks.push(Check::new("manifold_norm", manifold_drift, NORM_TOL));

    let lower_levels = initial
        .iter()
        .map(|a| a.a1.norm().max(a.a3.norm()).max(a.a4.norm()))
        .fold(0.0, f64::max);
    let w = population_inversion(traj);
    let w0_error = (w[0].1 - n0).abs();
    checks.push(Check::new("initial_conditions", lower_levels.max(w0_error), INITIAL_TOL));

    let mut worst_residual = 0.0f64;
    let mut worst_vieta = 0.0f64;
    for (c, sol) in traj.coefficients.iter().zip(&traj.solutions) {
        if let Some(roots) = sol.as_ref().and_then(|s| s.roots.as_ref()) {
            let q = audit_quartic(c, &roots.zeta);
            worst_residual = worst_residual.max(q.residual);
            worst_vieta = worst_vieta.max(q.vieta);
        }
    }
    checks.push(Check::new("quartic_residual", worst_residual, RESIDUAL_TOL));
    checks.push(Check::new("vieta_identities", worst_vieta, VIETA_TOL));

    let w_excess = w
        .iter()
        .map(|&(_, w)| (w - 1.0).max(-2.0 - w).max(0.0))
        .fold(0.0, f64::max);
    checks.push(Check::new("inversion_range", w_excess, POSITIVITY_TOL));

    let mut herm = 0.0f64;
    let mut trace = 0.0f64;
    let mut diag = 0.0f64;
    let mut eig = 0.0f64;
    let mut phase_norm = 0.0f64;
    let mut phase_neg = 0.0f64;
    for i in sample_indices(traj.time_grid.len()) {
        let rho = match reduced_field_density_at(traj, i) {
            Ok(r) => r,
            Err(_) => {
                herm = f64::INFINITY;
                continue;
            }
        };
        herm = herm.max(rho.hermiticity_error());
        trace = trace.max((rho.trace() - traj.norm_history[i]).abs());
        for p in rho.photon_distribution() {
            diag = diag.max((p - 1.0).max(-p).max(0.0));
        }
        eig = eig.max(-rho.min_eigenvalue());
        if let Ok(pd) = phase_distribution(&rho, scenario.theta_grid) {
            phase_norm = phase_norm.max((pd.integral() - 1.0).abs());
            phase_neg = phase_neg.max(-pd.p.iter().copied().fold(f64::INFINITY, f64::min));
        }
    }
    checks.push(Check::new("density_hermiticity", herm, HERMITICITY_TOL));
    checks.push(Check::new("density_trace", trace, TRACE_TOL));
    checks.push(Check::new("density_diagonal", diag, HERMITICITY_TOL));
    checks.push(Check::new("density_positivity", eig.max(0.0), POSITIVITY_TOL));
    checks.push(Check::new("phase_normalization", phase_norm, PHASE_NORM_TOL));
    checks.push(Check::new("phase_positivity", phase_neg.max(0.0), POSITIVITY_TOL));

    AuditReport { scenario: scenario.name.clone(), checks }
}
