use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::audit::{audit_trajectory, AuditReport};
use super::oracle::{oracle_compare, OracleReport};
use super::{HarnessError, Scenario};
use crate::dynamics::{evolve_state, StateTrajectory};
use crate::observables::{
    phase_distribution, phase_variance, population_inversion, reduced_field_density_at, PhaseDistribution,
};

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub description: String,
    pub cutoff: usize,
    pub manifolds: usize,
    pub integrator_fallbacks: usize,
    pub norm_deficit: f64,
    pub max_norm_drift: f64,
    pub min_root_gap: Option<f64>,
    pub wall_seconds: f64,
    pub files: Vec<PathBuf>,
    pub breaches: Vec<String>,
    pub oracle: Option<OracleReport>,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.breaches.is_empty()
    }

    pub fn render(&self) -> String {
        let gap = self.min_root_gap.map_or("n/a".to_string(), |g| format!("{g:.3e}"));
        let mut out = format!(
            "{}: {} manifolds (cutoff {}, {} integrated), norm deficit {:.3e}, \
             max norm drift {:.3e}, min root gap {}, {:.2}s\n",
            self.scenario,
            self.manifolds,
            self.cutoff,
            self.integrator_fallbacks,
            self.norm_deficit,
            self.max_norm_drift,
            gap,
            self.wall_seconds
        );
        for f in &self.files {
            out += &format!("  wrote {}\n", f.display());
        }
        if let Some(o) = &self.oracle {
            out += &format!("  {}", o.render());
        }
        for b in &self.breaches {
            out += &format!("  BREACH {b}\n");
        }
        out
    }
}

pub fn simulate(scenario: &Scenario) -> Result<StateTrajectory, HarnessError> {
    evolve_state(&scenario.params, &scenario.time_grid()).map_err(|e| HarnessError::model(&scenario.name, e))
}

/// Phase distributions at every grid point, in grid order.
pub fn phase_series(scenario: &Scenario, traj: &StateTrajectory) -> Result<Vec<PhaseDistribution>, HarnessError> {
    (0..traj.time_grid.len())
        .into_par_iter()
        .map(|i| {
            let rho = reduced_field_density_at(traj, i)?;
            phase_distribution(&rho, scenario.theta_grid)
        })
        .collect::<crate::Result<_>>()
        .map_err(|e| HarnessError::model(&scenario.name, e))
}

pub fn variance_series(scenario: &Scenario, traj: &StateTrajectory) -> Result<Vec<(f64, f64)>, HarnessError> {
    (0..traj.time_grid.len())
        .into_par_iter()
        .map(|i| reduced_field_density_at(traj, i).map(|rho| (rho.tau, phase_variance(&rho))))
        .collect::<crate::Result<_>>()
        .map_err(|e| HarnessError::model(&scenario.name, e))
}

fn csv_writer(path: &Path, header: &str) -> Result<BufWriter<File>, HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{header}").map_err(|e| HarnessError::io(path, e))?;
    Ok(w)
}

fn write_rows(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<(), HarnessError> {
    let mut w = csv_writer(path, header)?;
    for row in rows {
        writeln!(w, "{row}").map_err(|e| HarnessError::io(path, e))?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// Write the CSV files selected by the scenario's mode; returns their paths.
pub fn write_outputs(scenario: &Scenario, traj: &StateTrajectory, out_dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    std::fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let mut files = Vec::new();
    let name = &scenario.name;
    if scenario.mode.wants_inversion() {
        let path = out_dir.join(format!("{name}_inversion.csv"));
        let w = population_inversion(traj);
        write_rows(&path, "tau,W", w.iter().map(|(t, w)| format!("{t:.16e},{w:.16e}")))?;
        files.push(path);
    }
    if scenario.mode.wants_phase() {
        let path = out_dir.join(format!("{name}_phase.csv"));
        let series = phase_series(scenario, traj)?;
        let rows = series.iter().flat_map(|pd| {
            pd.theta_grid
                .iter()
                .zip(&pd.p)
                .map(move |(th, p)| format!("{:.16e},{th:.16e},{p:.16e}", pd.tau))
        });
        write_rows(&path, "tau,theta,P", rows)?;
        files.push(path);
    }
    if scenario.mode.wants_variance() {
        let path = out_dir.join(format!("{name}_variance.csv"));
        let series = variance_series(scenario, traj)?;
        write_rows(&path, "tau,var", series.iter().map(|(t, v)| format!("{t:.16e},{v:.16e}")))?;
        files.push(path);
    }
    Ok(files)
}

/// Evolve, write outputs and a JSON summary, and audit the invariants.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path) -> Result<(RunSummary, AuditReport), HarnessError> {
    let start = Instant::now();
    let traj = simulate(scenario)?;
    let mut files = write_outputs(scenario, &traj, out_dir)?;
    let audit = audit_trajectory(scenario, &traj);
    let mut breaches = audit.failures();
    let oracle = if scenario.flags.oracle_compare {
        let report = oracle_compare(scenario)?;
        if !report.passed() {
            breaches.push(format!("oracle_deviation: {:.3e}", report.max_deviation));
        }
        Some(report)
    } else {
        None
    };
    let summary_path = out_dir.join(format!("{}_summary.json", scenario.name));
    files.push(summary_path.clone());
    let summary = RunSummary {
        scenario: scenario.name.clone(),
        description: scenario.description.clone(),
        cutoff: scenario.params.cutoff,
        manifolds: traj.manifold_count(),
        integrator_fallbacks: traj.methods.iter().filter(|m| **m == crate::dynamics::SolutionMethod::Ode).count(),
        norm_deficit: traj.norm_deficit,
        max_norm_drift: traj.max_norm_drift(),
        min_root_gap: traj.min_root_gap(),
        wall_seconds: start.elapsed().as_secs_f64(),
        files,
        breaches,
        oracle,
    };
    let json = serde_json::json!({ "scenario": scenario, "summary": &summary, "audit": &audit });
    let text = serde_json::to_string_pretty(&json).expect("summary serialises");
    std::fs::write(&summary_path, text + "\n").map_err(|e| HarnessError::io(&summary_path, e))?;
    Ok((summary, audit))
}
