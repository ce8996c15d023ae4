//! Atomic and field observables of a [`StateTrajectory`].

mod density;
mod phase;

pub use density::{reduced_field_density, reduced_field_density_at, FieldDensityMatrix};
pub use phase::{
    coherence_sums, phase_distribution, phase_moment, phase_moment_quadrature, phase_variance,
    PhaseDistribution, DEFAULT_THETA_GRID,
};

use crate::dynamics::StateTrajectory;

/// W(τ) = Σ_n [|A_5(n+3k, τ)|² − 2|A_1(n, τ)|²]. Levels 3 and 4 do not
/// enter.
pub fn population_inversion(traj: &StateTrajectory) -> Vec<(f64, f64)> {
    traj.time_grid
        .iter()
        .zip(&traj.amplitudes)
        .map(|(&t, row)| {
            let w = row.iter().map(|a| a.a5.norm_sqr() - 2.0 * a.a1.norm_sqr()).sum();
            (t, w)
        })
        .collect()
}

/// (τ, [P_1, P_2, P_3, P_4, P_5]) with P_1 = P_2.
pub fn level_populations(traj: &StateTrajectory) -> Vec<(f64, [f64; 5])> {
    traj.time_grid
        .iter()
        .zip(&traj.amplitudes)
        .map(|(&t, row)| {
            let mut p = [0.0; 5];
            for a in row {
                p[0] += a.a1.norm_sqr();
                p[2] += a.a3.norm_sqr();
                p[3] += a.a4.norm_sqr();
                p[4] += a.a5.norm_sqr();
            }
            p[1] = p[0];
            (t, p)
        })
        .collect()
}
