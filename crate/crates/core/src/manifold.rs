//! Per-photon-number coefficients of one invariant manifold
//! {|1,n⟩, |2,n⟩, |3,n+k⟩, |4,n+2k⟩, |5,n+3k⟩}.

use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldCoefficients {
    pub n: usize,
    /// Kerr shifts χ m(m−1) at the photon number paired with levels 1, 3, 4, 5.
    pub alpha_1: f64,
    pub alpha_3: f64,
    pub alpha_4: f64,
    pub alpha_5: f64,
    pub v_1: f64,
    pub v_3: f64,
    pub v_4: f64,
    pub delta_1: f64,
    pub delta_3: f64,
    pub delta_4: f64,
    pub delta_sum: f64,
    /// Γ_1..Γ_8
    pub gamma: [f64; 8],
    /// a_1..a_4 of ζ⁴ + a_1ζ³ + a_2ζ² + a_3ζ + a_4
    pub a: [f64; 4],
}

/// √(Π_{i=1..count} (start + i)), i.e. √((start+count)!/start!).
fn sqrt_rising(start: usize, count: usize) -> f64 {
    (1..=count)
        .map(|i| (start + i) as f64)
        .product::<f64>()
        .sqrt()
}

fn kerr(chi: f64, m: usize) -> f64 {
    let m = m as f64;
    chi * m * (m - 1.0)
}

impl ManifoldCoefficients {
    pub fn new(params: &ModelParams, n: usize) -> Result<Self> {
        let k = params.k as usize;
        let needed = n + 3 * k;
        if needed > params.cutoff {
            return Err(Error::ManifoldOutOfRange { n, needed, cutoff: params.cutoff });
        }
        let chi = params.chi;
        let [l1, _, l3, l4] = params.effective_lambdas();
        let [d1, d3, d4] = params.shifted_detunings();

        let alpha_1 = kerr(chi, n);
        let alpha_3 = kerr(chi, n + k);
        let alpha_4 = kerr(chi, n + 2 * k);
        let alpha_5 = kerr(chi, n + 3 * k);
        let v_1 = 0.5 * l1 * sqrt_rising(n, k);
        let v_3 = 0.5 * l3 * sqrt_rising(n + k, k);
        let v_4 = 0.5 * l4 * sqrt_rising(n + 2 * k, k);

        let mut c = ManifoldCoefficients {
            n,
            alpha_1,
            alpha_3,
            alpha_4,
            alpha_5,
            v_1,
            v_3,
            v_4,
            delta_1: d1,
            delta_3: d3,
            delta_4: d4,
            delta_sum: d1 + d3 + d4,
            gamma: [0.0; 8],
            a: [0.0; 4],
        };
        c.gamma = c.compute_gammas();
        c.a = c.compute_quartic();
        Ok(c)
    }

    fn compute_gammas(&self) -> [f64; 8] {
        let (v1s, v3s) = (self.v_1 * self.v_1, self.v_3 * self.v_3);
        let g1 = self.alpha_3 + self.delta_1;
        let g2 = self.alpha_4 + self.delta_1 + self.delta_3;
        let g3 = self.alpha_5 + self.delta_sum;
        let g4 = self.alpha_1 + g1;
        let g5 = self.alpha_1 * g1 - 2.0 * v1s;
        let g6 = g2 + g4;
        let g7 = g5 + g2 * g4 - v3s;
        let g8 = g2 * g5 - self.alpha_1 * v3s;
        [g1, g2, g3, g4, g5, g6, g7, g8]
    }

    fn compute_quartic(&self) -> [f64; 4] {
        let [_, _, g3, g4, _, g6, g7, g8] = self.gamma;
        let (v1s, v4s) = (self.v_1 * self.v_1, self.v_4 * self.v_4);
        let a1 = g3 + g6;
        let a2 = g3 * g6 + g7 - v4s;
        let a3 = g3 * g7 + g8 - v4s * g4;
        let a4 = g3 * g8 - self.alpha_1 * self.gamma[0] * v4s + 2.0 * v1s * v4s;
        [a1, a2, a3, a4]
    }

    /// Diagonal of the rotating-frame generator whose eigenvalues are −ζ_j:
    /// (α_1, Γ_1, Γ_2, Γ_3).
    pub fn frame_diagonal(&self) -> [f64; 4] {
        [self.alpha_1, self.gamma[0], self.gamma[1], self.gamma[2]]
    }

    /// True when some coupling of the chain vanishes.
    pub fn is_decoupled(&self) -> bool {
        self.v_1 == 0.0 || self.v_3 == 0.0 || self.v_4 == 0.0
    }

    /// The quartic evaluated through the tridiagonal continuant
    /// det(K + ζ) and its derivative.
    ///
    /// Equal to ζ⁴ + a_1ζ³ + a_2ζ² + a_3ζ + a_4 in exact arithmetic, but
    /// without the cancellation the expanded form suffers when the Kerr
    /// shifts are large.
    pub fn characteristic(&self, zeta: f64) -> (f64, f64) {
        let [d0, d1, d2, d3] = self.frame_diagonal();
        let off = [
            2.0 * self.v_1 * self.v_1,
            self.v_3 * self.v_3,
            self.v_4 * self.v_4,
        ];
        let diag = [d1, d2, d3];
        let (mut f_prev, mut df_prev) = (1.0, 0.0);
        let (mut f, mut df) = (zeta + d0, 1.0);
        for i in 0..3 {
            let x = zeta + diag[i];
            let f_next = x * f - off[i] * f_prev;
            let df_next = f + x * df - off[i] * df_prev;
            f_prev = f;
            df_prev = df;
            f = f_next;
            df = df_next;
        }
        (f, df)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, lambda: f64, chi: f64) -> ModelParams {
        let mut p = ModelParams::new(5.0, k);
        p.lambda_1 = lambda;
        p.lambda_2 = lambda;
        p.lambda_3 = lambda;
        p.lambda_4 = lambda;
        p.chi = chi;
        p
    }

    #[test]
    fn couplings_at_vacuum() {
        let c = ManifoldCoefficients::new(&params(1, 1.0, 0.0), 0).unwrap();
        assert_eq!(c.v_1, 0.5);
        assert!((c.v_3 - 0.5 * 2f64.sqrt()).abs() < 1e-15);
        assert!((c.v_4 - 0.5 * 3f64.sqrt()).abs() < 1e-15);
        assert!((c.v_3 - 0.70711).abs() < 1e-5);
        assert!((c.v_4 - 0.86603).abs() < 1e-5);
        for a in [c.alpha_1, c.alpha_3, c.alpha_4, c.alpha_5] {
            assert_eq!(a, 0.0);
        }
    }

    #[test]
    fn kerr_shifts() {
        let c = ManifoldCoefficients::new(&params(1, 0.0, 1.0), 2).unwrap();
        assert_eq!(c.alpha_1, 2.0);
        assert_eq!(c.alpha_3, 6.0);
        assert_eq!(c.alpha_4, 12.0);
        assert_eq!(c.alpha_5, 20.0);
        assert_eq!([c.v_1, c.v_3, c.v_4], [0.0; 3]);
    }

    #[test]
    fn rejects_manifold_past_cutoff() {
        let p = params(2, 1.0, 0.0);
        let last = p.cutoff - 6;
        assert!(ManifoldCoefficients::new(&p, last).is_ok());
        assert!(matches!(
            ManifoldCoefficients::new(&p, last + 1),
            Err(Error::ManifoldOutOfRange { .. })
        ));
    }

    #[test]
    fn rebuild_is_bitwise_identical() {
        let mut p = params(2, 1.0, 0.1);
        p.mu = 0.3;
        p.delta_cap_1 = 1.5;
        for n in 0..10 {
            let a = ManifoldCoefficients::new(&p, n).unwrap();
            let b = ManifoldCoefficients::new(&p, n).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn uncoupled_quartic_factorises() {
        // λ = 0: roots are −α_1, −Γ_1, −Γ_2, −Γ_3
        let mut p = params(1, 0.0, 0.3);
        p.mu = 0.2;
        p.delta_cap_3 = 1.1;
        let c = ManifoldCoefficients::new(&p, 4).unwrap();
        let roots = [-c.alpha_1, -c.gamma[0], -c.gamma[1], -c.gamma[2]];
        let [a1, a2, a3, a4] = c.a;
        for z in roots {
            let p = (((z + a1) * z + a2) * z + a3) * z + a4;
            assert!(p.abs() < 1e-9 * (1.0 + a4.abs()), "{p}");
        }
    }

    #[test]
    fn continuant_matches_expanded_quartic() {
        let mut p = params(2, 1.0, 0.1);
        p.mu = 0.1;
        p.delta_cap_1 = 1.5;
        p.delta_cap_4 = -0.5;
        let c = ManifoldCoefficients::new(&p, 3).unwrap();
        let [a1, a2, a3, a4] = c.a;
        for z in [-7.0, -1.0, 0.0, 0.4, 3.0] {
            let expanded = (((z + a1) * z + a2) * z + a3) * z + a4;
            let d_expanded = ((4.0 * z + 3.0 * a1) * z + 2.0 * a2) * z + a3;
            let (f, df) = c.characteristic(z);
            assert!((f - expanded).abs() < 1e-10 * (1.0 + expanded.abs()));
            assert!((df - d_expanded).abs() < 1e-10 * (1.0 + d_expanded.abs()));
        }
    }
}
