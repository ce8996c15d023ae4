use std::time::Instant;

use serde::Serialize;

use super::{HarnessError, Scenario};
use crate::dynamics::{evolve_state, evolve_state_with, EvolveOptions, StateTrajectory};

/// Acceptance bound on the spectral-vs-integrator amplitude deviation.
pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub scenario: String,
    pub max_deviation: f64,
    pub worst_manifold: usize,
    pub worst_tau: f64,
    /// Max norm drift of the integrated trajectory.
    pub oracle_norm_drift: f64,
    pub spectral_seconds: f64,
    pub oracle_seconds: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= ORACLE_TOL
    }

    pub fn render(&self) -> String {
        format!(
            "oracle-compare {}: max |A_closed - A_ode| = {:.3e} (manifold {}, tau = {}) {}\n  \
             ode norm drift {:.3e}; spectral {:.2}s, ode {:.2}s\n",
            self.scenario,
            self.max_deviation,
            self.worst_manifold,
            self.worst_tau,
            if self.passed() { "PASS" } else { "FAIL" },
            self.oracle_norm_drift,
            self.spectral_seconds,
            self.oracle_seconds,
        )
    }
}

/// Largest amplitude difference between two trajectories on the same grid,
/// with the manifold and time at which it occurs.
pub fn max_deviation(a: &StateTrajectory, b: &StateTrajectory) -> (f64, usize, f64) {
    let mut worst = (0.0, 0, 0.0);
    for ((ra, rb), &t) in a.amplitudes.iter().zip(&b.amplitudes).zip(&a.time_grid) {
        for (n, (x, y)) in ra.iter().zip(rb).enumerate() {
            let d = x.max_abs_diff(y);
            if d > worst.0 {
                worst = (d, n, t);
            }
        }
    }
    worst
}

/// Evolve `scenario` with the spectral solution and again with the
/// integrator, and compare.
pub fn oracle_compare(scenario: &Scenario) -> Result<OracleReport, HarnessError> {
    oracle_compare_on(scenario, &scenario.time_grid())
}

pub fn oracle_compare_on(scenario: &Scenario, grid: &[f64]) -> Result<OracleReport, HarnessError> {
    let wrap = |e| HarnessError::model(&scenario.name, e);
    let start = Instant::now();
    let spectral = evolve_state(&scenario.params, grid).map_err(wrap)?;
    let spectral_seconds = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let opts = EvolveOptions { force_ode: true, ..Default::default() };
    let oracle = evolve_state_with(&scenario.params, grid, &opts).map_err(wrap)?;
    let oracle_seconds = start.elapsed().as_secs_f64();
    let (max_deviation, worst_manifold, worst_tau) = max_deviation(&spectral, &oracle);
    Ok(OracleReport {
        scenario: scenario.name.clone(),
        max_deviation,
        worst_manifold,
        worst_tau,
        oracle_norm_drift: oracle.max_norm_drift(),
        spectral_seconds,
        oracle_seconds,
    })
}
