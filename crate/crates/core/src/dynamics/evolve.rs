use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{
    evaluate_amplitudes, integrate_manifold_ode_with, solve_manifold_closed_form, Amplitudes,
    ManifoldSolution, OdeOptions, SolutionMethod,
};
use crate::coherent::coherent_weights;
use crate::error::{Error, Result};
use crate::manifold::ManifoldCoefficients;
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, Default)]
pub struct EvolveOptions {
    /// Integrate every manifold numerically instead of using the spectral
    /// solution.
    pub force_ode: bool,
    pub ode: OdeOptions,
}

/// Amplitudes of every manifold on a time grid.
#[derive(Debug, Clone)]
pub struct StateTrajectory {
    pub params: ModelParams,
    pub time_grid: Vec<f64>,
    /// `amplitudes[i][n]`: manifold n at `time_grid[i]`.
    pub amplitudes: Vec<Vec<Amplitudes>>,
    /// Σ_n weighted norm at each grid point.
    pub norm_history: Vec<f64>,
    pub coefficients: Vec<ManifoldCoefficients>,
    /// Spectral solution per manifold; `None` where the integrator was used.
    pub solutions: Vec<Option<ManifoldSolution>>,
    pub methods: Vec<SolutionMethod>,
    /// Σ_{m<3k} |q_m|² of the untruncated coherent state.
    pub norm_deficit: f64,
    /// Total initial norm of the represented state.
    pub initial_norm: f64,
}

impl StateTrajectory {
    pub fn manifold_count(&self) -> usize {
        self.coefficients.len()
    }

    pub fn k(&self) -> usize {
        self.params.k as usize
    }

    pub fn time_index(&self, tau: f64) -> Option<usize> {
        let tol = 1e-9 * tau.abs().max(1.0);
        self.time_grid.iter().position(|t| (t - tau).abs() <= tol)
    }

    /// max_τ |N(τ) − N(0)|
    pub fn max_norm_drift(&self) -> f64 {
        self.norm_history
            .iter()
            .map(|n| (n - self.initial_norm).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_root_gap(&self) -> Option<f64> {
        self.solutions
            .iter()
            .flatten()
            .filter_map(|s| s.roots.as_ref())
            .map(|r| r.min_gap)
            .reduce(f64::min)
    }
}

pub(crate) fn check_grid(t_grid: &[f64]) -> Result<()> {
    match t_grid.first() {
        Some(&0.0) => {}
        _ => return Err(Error::InvalidTimeGrid),
    }
    if t_grid.windows(2).any(|w| !(w[1] >= w[0])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidTimeGrid);
    }
    Ok(())
}

pub fn evolve_state(params: &ModelParams, t_grid: &[f64]) -> Result<StateTrajectory> {
    evolve_state_with(params, t_grid, &EvolveOptions::default())
}

struct ManifoldRun {
    coeffs: ManifoldCoefficients,
    solution: Option<ManifoldSolution>,
    method: SolutionMethod,
    samples: Vec<Amplitudes>,
}

fn run_manifold(
    params: &ModelParams,
    n: usize,
    weight: C64,
    t_grid: &[f64],
    opts: &EvolveOptions,
) -> Result<ManifoldRun> {
    let coeffs = ManifoldCoefficients::new(params, n)?;
    let spectral = if opts.force_ode {
        None
    } else {
        match solve_manifold_closed_form(&coeffs, weight) {
            Ok(sol) => Some(sol),
            Err(Error::DegenerateRoots { .. } | Error::VanishingCoupling(_)) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(match spectral {
        Some(sol) => ManifoldRun {
            samples: t_grid.iter().map(|&t| evaluate_amplitudes(&sol, t)).collect(),
            method: sol.method,
            solution: Some(sol),
            coeffs,
        },
        None => ManifoldRun {
            samples: integrate_manifold_ode_with(&coeffs, weight, t_grid, &opts.ode)?,
            method: SolutionMethod::Ode,
            solution: None,
            coeffs,
        },
    })
}

/// Evolve the initial coherent state through every manifold
/// n = 0..=cutoff − 3k. Manifolds are solved in parallel and assembled in
/// order of n, so the result does not depend on the thread count.
pub fn evolve_state_with(
    params: &ModelParams,
    t_grid: &[f64],
    opts: &EvolveOptions,
) -> Result<StateTrajectory> {
    params.validate()?;
    check_grid(t_grid)?;
    let weights = coherent_weights(params);
    let span = params.span();
    let count = params.manifold_count();

    let runs: Vec<ManifoldRun> = (0..count)
        .into_par_iter()
        .map(|n| {
            let w = weights.initial_weight(n, span, params.renormalize);
            run_manifold(params, n, w, t_grid, opts).map_err(|e| e.in_manifold(n))
        })
        .collect::<Result<_>>()?;

    let initial_norm: f64 = (0..count)
        .map(|n| weights.initial_weight(n, span, params.renormalize).norm_sqr())
        .sum();

    let amplitudes: Vec<Vec<Amplitudes>> = (0..t_grid.len())
        .map(|i| runs.iter().map(|r| r.samples[i]).collect())
        .collect();
    let norm_history = amplitudes
        .iter()
        .map(|row| row.iter().map(Amplitudes::weighted_norm).sum())
        .collect();

    let mut coefficients = Vec::with_capacity(count);
    let mut solutions = Vec::with_capacity(count);
    let mut methods = Vec::with_capacity(count);
    for r in runs {
        coefficients.push(r.coeffs);
        solutions.push(r.solution);
        methods.push(r.method);
    }

    Ok(StateTrajectory {
        params: params.clone(),
        time_grid: t_grid.to_vec(),
        amplitudes,
        norm_history,
        coefficients,
        solutions,
        methods,
        norm_deficit: weights.norm_deficit,
        initial_norm,
    })
}

/// Uniform grid 0, step, 2·step, … up to `tau_max` (inclusive within
/// rounding).
pub fn uniform_grid(tau_max: f64, step: f64) -> Vec<f64> {
    let count = (tau_max / step + 1e-9).floor() as usize;
    (0..=count).map(|i| i as f64 * step).collect()
}
