use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::dynamics::StateTrajectory;
use crate::error::{Error, Result};

/// Reduced density matrix of the cavity field in the Fock basis 0..=cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDensityMatrix {
    pub rho: DMatrix<C64>,
    pub tau: f64,
}

impl FieldDensityMatrix {
    pub fn new(rho: DMatrix<C64>, tau: f64) -> Self {
        assert!(rho.is_square(), "density matrix must be square");
        FieldDensityMatrix { rho, tau }
    }

    /// Diagonal matrix of photon-number probabilities.
    pub fn from_populations(p: &[f64]) -> Self {
        let n = p.len();
        let rho = DMatrix::from_fn(n, n, |i, j| {
            if i == j { C64::new(p[i], 0.0) } else { C64::new(0.0, 0.0) }
        });
        FieldDensityMatrix { rho, tau: 0.0 }
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalised) Fock-basis vector.
    pub fn from_pure(psi: &[C64]) -> Self {
        let n = psi.len();
        let rho = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        FieldDensityMatrix { rho, tau: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.rho[(i, i)].re).sum()
    }

    pub fn photon_distribution(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.rho[(i, i)].re).collect()
    }

    /// max |ρ_{ij} − conj(ρ_{ji})|
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self.rho[(i, j)] - self.rho[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.rho
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn reduced_field_density(traj: &StateTrajectory, tau: f64) -> Result<FieldDensityMatrix> {
    let idx = traj.time_index(tau).ok_or(Error::TimeNotOnGrid(tau))?;
    reduced_field_density_at(traj, idx)
}

/// Trace over the atom at grid point `idx`.
///
/// Level j of manifold n carries photon number n + o_j with offsets
/// 0, 0, k, 2k, 3k; only equal-level pairs survive the trace, so
/// ρ_{m,m'} = 2A_1(m)A_1*(m') + A_3(m−k)A_3*(m'−k) + A_4(m−2k)A_4*(m'−2k)
/// + A_5(m−3k)A_5*(m'−3k), where A_j(n) is manifold n's amplitude.
pub fn reduced_field_density_at(traj: &StateTrajectory, idx: usize) -> Result<FieldDensityMatrix> {
    let row = &traj.amplitudes[idx];
    let dim = traj.params.cutoff + 1;
    let k = traj.k();
    let count = row.len();
    let last = 3 * k + count - 1;
    if last >= dim {
        return Err(Error::IndexOverflow { index: last, dim });
    }

    let mut rho = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    let levels: [(usize, f64, fn(&crate::dynamics::Amplitudes) -> C64); 4] = [
        (0, 2.0, |a| a.a1),
        (k, 1.0, |a| a.a3),
        (2 * k, 1.0, |a| a.a4),
        (3 * k, 1.0, |a| a.a5),
    ];
    for (offset, weight, get) in levels {
        for n in 0..count {
            let x = get(&row[n]) * weight;
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for l in 0..=n {
                rho[(n + offset, l + offset)] += x * get(&row[l]).conj();
            }
        }
    }
    // lower triangle filled above; mirror it
    for i in 0..dim {
        rho[(i, i)].im = 0.0;
        for j in 0..i {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    Ok(FieldDensityMatrix { rho, tau: traj.time_grid[idx] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::coherent_weights;
    use crate::dynamics::evolve_state;
    use crate::params::ModelParams;

    #[test]
    fn initial_field_is_truncated_coherent_state() {
        let p = ModelParams::new(5.0, 1);
        let traj = evolve_state(&p, &[0.0, 1.0]).unwrap();
        let rho = reduced_field_density(&traj, 0.0).unwrap();
        let w = coherent_weights(&p);
        let s = w.represented.sqrt();
        for i in 0..rho.dim() {
            for j in 0..rho.dim() {
                let expected = if i >= 3 && j >= 3 {
                    w.q[i] * w.q[j].conj() / (s * s)
                } else {
                    C64::new(0.0, 0.0)
                };
                assert!((rho.rho[(i, j)] - expected).norm() < 1e-12);
            }
        }
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn off_grid_time_rejected() {
        let p = ModelParams::new(1.0, 1);
        let traj = evolve_state(&p, &[0.0, 1.0]).unwrap();
        assert_eq!(reduced_field_density(&traj, 0.5), Err(Error::TimeNotOnGrid(0.5)));
    }

    #[test]
    fn evolved_matrix_is_a_state() {
        let mut p = ModelParams::new(3.0, 2);
        p.chi = 0.1;
        p.mu = 0.1;
        p.delta_cap_1 = 1.0;
        let traj = evolve_state(&p, &[0.0, 2.5]).unwrap();
        let rho = reduced_field_density(&traj, 2.5).unwrap();
        assert_eq!(rho.hermiticity_error(), 0.0);
        assert!((rho.trace() - 1.0).abs() < 1e-10);
        assert!(rho.min_eigenvalue() > -1e-10);
        assert!(rho.purity() < 1.0);
    }
}
