//! Time evolution of the manifold amplitudes.
//!
//! Each manifold evolves independently. The closed-form spectral solution is
//! the production path; the Runge–Kutta integrator of the coupled system is
//! the reference it is checked against and the fallback for manifolds whose
//! spectrum is (nearly) degenerate.

mod closed_form;
mod evolve;
mod ode;

use num_complex::Complex64 as C64;

pub use closed_form::{evaluate_amplitudes, solve_manifold_closed_form, ManifoldSolution};
pub use evolve::{evolve_state, evolve_state_with, uniform_grid, EvolveOptions, StateTrajectory};
pub use ode::{integrate_manifold_ode, integrate_manifold_ode_with, propagate, OdeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionMethod {
    ClosedForm,
    /// Level 5 uncoupled from the chain: only the Kerr phase evolves.
    Decoupled,
    Ode,
}

/// Folded amplitudes of one manifold: A_1 (= A_2), A_3, A_4, A_5.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Amplitudes {
    pub a1: C64,
    pub a3: C64,
    pub a4: C64,
    pub a5: C64,
}

impl Amplitudes {
    pub fn new(a1: C64, a3: C64, a4: C64, a5: C64) -> Self {
        Amplitudes { a1, a3, a4, a5 }
    }

    pub fn excited(a5: C64) -> Self {
        Amplitudes { a5, ..Default::default() }
    }

    pub fn a2(&self) -> C64 {
        self.a1
    }

    /// (A_1, A_2, A_3, A_4, A_5)
    pub fn five(&self) -> [C64; 5] {
        [self.a1, self.a1, self.a3, self.a4, self.a5]
    }

    pub(crate) fn as_array(&self) -> [C64; 4] {
        [self.a1, self.a3, self.a4, self.a5]
    }

    pub(crate) fn from_array(a: [C64; 4]) -> Self {
        Amplitudes { a1: a[0], a3: a[1], a4: a[2], a5: a[3] }
    }

    /// 2|A_1|² + |A_3|² + |A_4|² + |A_5|², the probability carried by the
    /// manifold (levels 1 and 2 share A_1).
    pub fn weighted_norm(&self) -> f64 {
        2.0 * self.a1.norm_sqr() + self.a3.norm_sqr() + self.a4.norm_sqr() + self.a5.norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Amplitudes) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}
