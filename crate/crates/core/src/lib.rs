//! Exact dynamics of a five-level inverted-Y atom coupled to a single-mode
//! cavity field through k-photon transitions, with a Kerr medium and a
//! coupling that varies as cos(μt).
//!
//! The state space splits into independent five-dimensional manifolds. Each
//! is solved through the roots of a quartic ([`quartic`]) and cross-checked
//! against direct integration ([`dynamics`]). From the evolved state the
//! crate computes the atomic population inversion and the Pegg–Barnett phase
//! distribution of the field ([`observables`]). [`harness`] runs named
//! scenarios and writes CSV output.

pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod manifold;
pub mod observables;
pub mod params;
pub mod quartic;

pub use coherent::{choose_cutoff, coherent_weights, CoherentWeights};
pub use dynamics::{evolve_state, Amplitudes, StateTrajectory};
pub use error::{Error, Result};
pub use manifold::ManifoldCoefficients;
pub use params::ModelParams;
pub use quartic::QuarticRoots;
