//! Physical inputs of the model.
//!
//! Every rate is expressed in units of the common coupling constant λ, and
//! time is the scaled time τ = λt.

use serde::{Deserialize, Serialize};

use crate::coherent::{choose_cutoff, DEFAULT_TAIL_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    #[serde(default = "one")]
    pub lambda_1: f64,
    #[serde(default = "one")]
    pub lambda_2: f64,
    #[serde(default = "one")]
    pub lambda_3: f64,
    #[serde(default = "one")]
    pub lambda_4: f64,
    /// Coupling-variation rate μ of γ(t) = λ cos(μt).
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub delta_cap_1: f64,
    #[serde(default)]
    pub delta_cap_3: f64,
    #[serde(default)]
    pub delta_cap_4: f64,
    /// Kerr strength χ.
    #[serde(default)]
    pub chi: f64,
    /// Photon multiplicity of each transition.
    #[serde(default = "one_u32")]
    pub k: u32,
    pub n_bar: f64,
    /// Largest photon number kept in the field basis.
    pub cutoff: usize,
    /// Constant-coupling model: couplings are doubled and μ is ignored.
    #[serde(default)]
    pub time_independent: bool,
    /// Rescale the represented initial weights to unit norm.
    #[serde(default = "yes")]
    pub renormalize: bool,
}

fn one() -> f64 {
    1.0
}

fn one_u32() -> u32 {
    1
}

fn yes() -> bool {
    true
}

impl ModelParams {
    /// Resonant, Kerr-free, time-dependent defaults with the cutoff chosen
    /// from the Poisson tail of `n_bar`.
    pub fn new(n_bar: f64, k: u32) -> Self {
        ModelParams {
            lambda_1: 1.0,
            lambda_2: 1.0,
            lambda_3: 1.0,
            lambda_4: 1.0,
            mu: 0.0,
            delta_cap_1: 0.0,
            delta_cap_3: 0.0,
            delta_cap_4: 0.0,
            chi: 0.0,
            k,
            n_bar,
            cutoff: choose_cutoff(n_bar, DEFAULT_TAIL_TOL, k.max(1)),
            time_independent: false,
            renormalize: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let finite = [
            ("lambda_1", self.lambda_1),
            ("lambda_2", self.lambda_2),
            ("lambda_3", self.lambda_3),
            ("lambda_4", self.lambda_4),
            ("mu", self.mu),
            ("delta_cap_1", self.delta_cap_1),
            ("delta_cap_3", self.delta_cap_3),
            ("delta_cap_4", self.delta_cap_4),
            ("chi", self.chi),
            ("n_bar", self.n_bar),
        ];
        for (name, x) in finite {
            if !x.is_finite() {
                return bad(format!("{name} must be finite, got {x}"));
            }
        }
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.n_bar < 0.0 {
            return bad(format!("n_bar must be non-negative, got {}", self.n_bar));
        }
        if self.mu < 0.0 {
            return bad(format!("mu must be non-negative, got {}", self.mu));
        }
        if self.chi < 0.0 {
            return bad(format!("chi must be non-negative, got {}", self.chi));
        }
        for (name, l) in [
            ("lambda_1", self.lambda_1),
            ("lambda_3", self.lambda_3),
            ("lambda_4", self.lambda_4),
        ] {
            if l < 0.0 {
                return bad(format!("{name} must be non-negative, got {l}"));
            }
        }
        // A_1 = A_2 only holds for identical couplings on both lower legs.
        if self.lambda_1 != self.lambda_2 {
            return bad(format!(
                "lambda_1 ({}) and lambda_2 ({}) must be equal",
                self.lambda_1, self.lambda_2
            ));
        }
        let min_cutoff = self.min_cutoff();
        if self.cutoff < min_cutoff {
            return bad(format!(
                "cutoff {} below minimum {} for n_bar = {}, k = {}",
                self.cutoff, min_cutoff, self.n_bar, self.k
            ));
        }
        Ok(())
    }

    /// ceil(n̄) + 3k + 1
    pub fn min_cutoff(&self) -> usize {
        self.n_bar.ceil() as usize + 3 * self.k as usize + 1
    }

    /// Photon-number offset between level 1 and level 5.
    pub fn span(&self) -> usize {
        3 * self.k as usize
    }

    /// Number of manifolds n = 0..=cutoff − 3k.
    pub fn manifold_count(&self) -> usize {
        self.cutoff.saturating_sub(self.span()) + 1
    }

    /// Couplings actually entering v_i. The constant-coupling model carries
    /// the full λ instead of the λ/2 left by the cos(μt) expansion.
    pub fn effective_lambdas(&self) -> [f64; 4] {
        let f = if self.time_independent { 2.0 } else { 1.0 };
        [
            f * self.lambda_1,
            f * self.lambda_2,
            f * self.lambda_3,
            f * self.lambda_4,
        ]
    }

    /// δ_1, δ_3, δ_4 (δ_2 = δ_1).
    pub fn shifted_detunings(&self) -> [f64; 3] {
        let mu = if self.time_independent { 0.0 } else { self.mu };
        [
            self.delta_cap_1 - mu,
            self.delta_cap_3 - mu,
            self.delta_cap_4 - mu,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for k in [1, 2, 3] {
            for n_bar in [0.0, 0.3, 5.0, 20.0] {
                ModelParams::new(n_bar, k).validate().unwrap();
            }
        }
    }

    #[test]
    fn rejects_unequal_lower_couplings() {
        let mut p = ModelParams::new(5.0, 1);
        p.lambda_2 = 0.9;
        assert!(matches!(p.validate(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn rejects_small_cutoff() {
        let mut p = ModelParams::new(5.0, 2);
        p.cutoff = 5 + 6;
        assert!(p.validate().is_err());
        p.cutoff = 5 + 6 + 1;
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_bad_scalars() {
        let base = ModelParams::new(5.0, 1);
        let mut p = base.clone();
        p.k = 0;
        assert!(p.validate().is_err());
        let mut p = base.clone();
        p.n_bar = -1.0;
        assert!(p.validate().is_err());
        let mut p = base.clone();
        p.chi = f64::NAN;
        assert!(p.validate().is_err());
        let mut p = base;
        p.mu = -0.1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn time_independent_doubles_couplings_and_drops_mu() {
        let mut p = ModelParams::new(5.0, 1);
        p.mu = 0.7;
        p.delta_cap_3 = 2.0;
        assert_eq!(p.effective_lambdas(), [1.0; 4]);
        assert_eq!(p.shifted_detunings(), [-0.7, 1.3, -0.7]);
        p.time_independent = true;
        assert_eq!(p.effective_lambdas(), [2.0; 4]);
        assert_eq!(p.shifted_detunings(), [0.0, 2.0, 0.0]);
    }
}
