use num_complex::Complex64 as C64;

use super::{Amplitudes, SolutionMethod};
use crate::error::{Error, Result};
use crate::manifold::ManifoldCoefficients;
use crate::quartic::{self, QuarticRoots, GAP_TOL};

/// Spectral solution of one manifold.
///
/// With ζ_j the quartic roots, every amplitude is a sum of four modes
/// e^{iζ_j t} times a level-dependent phase e^{iφt}, φ ∈ {0, δ_1, δ_1+δ_3, δ}.
/// `modes[j]` holds the prefactors of mode j for (A_1, A_3, A_4, A_5):
///
/// ```text
/// A_1: B_j
/// A_3: −B_j (α_1 + ζ_j) / v_1
/// A_4:  B_j [(Γ_1 + ζ_j)(α_1 + ζ_j) − 2v_1²] / (v_1 v_3)
/// A_5:  B_j [(α_1 + ζ_j)(v_3² − (Γ_1 + ζ_j)(Γ_2 + ζ_j)) + 2v_1²(Γ_2 + ζ_j)] / (v_1 v_3 v_4)
/// ```
///
/// and B_j = −q v_1 v_3 v_4 / Π_{k≠j} (ζ_j − ζ_k) fixes A_{1,3,4}(0) = 0,
/// A_5(0) = q.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSolution {
    pub n: usize,
    pub initial_weight: C64,
    pub method: SolutionMethod,
    pub roots: Option<QuarticRoots>,
    pub b: [C64; 4],
    pub modes: [[C64; 4]; 4],
    /// Level phases φ for A_1, A_3, A_4, A_5 (A_5 of a decoupled manifold
    /// uses −α_5 with no mode sum).
    pub phases: [f64; 4],
}

/// Newton refinement of each root on the continuant form of the
/// characteristic polynomial, steps capped at a quarter of the root gap.
fn refine_roots(coeffs: &ManifoldCoefficients, roots: &QuarticRoots) -> QuarticRoots {
    let cap = 0.25 * roots.min_gap;
    let zeta = roots.zeta.map(|mut z| {
        let (mut f, _) = coeffs.characteristic(z);
        for _ in 0..4 {
            let (fz, dz) = coeffs.characteristic(z);
            if dz == 0.0 || fz == 0.0 {
                break;
            }
            let step = (fz / dz).clamp(-cap, cap);
            let next = z - step;
            let (fn_, _) = coeffs.characteristic(next);
            if !(fn_.abs() < f.abs()) {
                break;
            }
            z = next;
            f = fn_;
        }
        z
    });
    let mut sorted = zeta;
    sorted.sort_by(|x, y| x.total_cmp(y));
    QuarticRoots {
        zeta: sorted,
        residuals: sorted.map(|z| quartic::eval(&coeffs.a, z).abs()),
        min_gap: quartic::min_gap(&sorted),
        method: roots.method,
    }
}

pub fn solve_manifold_closed_form(
    coeffs: &ManifoldCoefficients,
    initial_weight: C64,
) -> Result<ManifoldSolution> {
    let c = coeffs;
    let phases = [0.0, c.delta_1, c.delta_1 + c.delta_3, c.delta_sum];
    if c.v_4 == 0.0 {
        return Ok(ManifoldSolution {
            n: c.n,
            initial_weight,
            method: SolutionMethod::Decoupled,
            roots: None,
            b: [C64::new(0.0, 0.0); 4],
            modes: [[C64::new(0.0, 0.0); 4]; 4],
            phases: [0.0, 0.0, 0.0, -c.alpha_5],
        });
    }
    if c.v_1 == 0.0 {
        return Err(Error::VanishingCoupling(1));
    }
    if c.v_3 == 0.0 {
        return Err(Error::VanishingCoupling(3));
    }

    let raw = quartic::solve_companion(c.a)?;
    let roots = if raw.min_gap > 0.0 { refine_roots(c, &raw) } else { raw };
    let scale = roots.zeta.iter().fold(1.0f64, |m, z| m.max(z.abs()));
    if roots.is_near_degenerate() {
        return Err(Error::DegenerateRoots { gap: roots.min_gap, threshold: GAP_TOL * scale });
    }

    let z = roots.zeta;
    let (v1, v3, v4) = (c.v_1, c.v_3, c.v_4);
    let v1s = v1 * v1;
    let v3s = v3 * v3;
    let g1 = c.gamma[0];
    let g2 = c.gamma[1];
    let mut b = [C64::new(0.0, 0.0); 4];
    let mut modes = [[C64::new(0.0, 0.0); 4]; 4];
    for j in 0..4 {
        let denom: f64 = (0..4).filter(|&k| k != j).map(|k| z[j] - z[k]).product();
        b[j] = -initial_weight * (v1 * v3 * v4 / denom);
        let s1 = c.alpha_1 + z[j];
        let sg1 = g1 + z[j];
        let sg2 = g2 + z[j];
        modes[j] = [
            b[j],
            -b[j] * (s1 / v1),
            b[j] * ((sg1 * s1 - 2.0 * v1s) / (v1 * v3)),
            b[j] * ((s1 * (v3s - sg1 * sg2) + 2.0 * v1s * sg2) / (v1 * v3 * v4)),
        ];
    }
    Ok(ManifoldSolution {
        n: c.n,
        initial_weight,
        method: SolutionMethod::ClosedForm,
        roots: Some(roots),
        b,
        modes,
        phases,
    })
}

/// (A_1, A_3, A_4, A_5) at time `t`.
pub fn evaluate_amplitudes(sol: &ManifoldSolution, t: f64) -> Amplitudes {
    match sol.method {
        SolutionMethod::Decoupled => {
            Amplitudes::excited(sol.initial_weight * C64::cis(sol.phases[3] * t))
        }
        _ => {
            let roots = sol.roots.as_ref().expect("closed-form solution carries roots");
            let mut out = [C64::new(0.0, 0.0); 4];
            for (j, z) in roots.zeta.iter().enumerate() {
                let e = C64::cis(z * t);
                for l in 0..4 {
                    out[l] += sol.modes[j][l] * e;
                }
            }
            for l in 1..4 {
                out[l] *= C64::cis(sol.phases[l] * t);
            }
            Amplitudes::from_array(out)
        }
    }
}
