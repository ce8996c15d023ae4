//! Real roots of the monic quartic ζ⁴ + a_1ζ³ + a_2ζ² + a_3ζ + a_4.
//!
//! Two independent routes: the Ferrari-type closed form written in terms of
//! the intermediates y_1, y_2, d_1, d_2, z_1, z_2, z_3, and the eigenvalues of
//! the companion matrix. The companion route is the one used for dynamics; the
//! closed form is kept as a cross-check.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Residual tolerance relative to [`coefficient_scale`].
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Imaginary parts above this (relative to [`root_scale`]) mean the quartic
/// has genuinely complex roots.
pub const IMAG_TOL: f64 = 1e-6;
/// Relative gap below which two roots are treated as coincident.
pub const GAP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    ClosedForm,
    CompanionMatrix,
}

/// How the nested radicals of the closed form are read.
///
/// With S = z_1/2 the four roots are
///
/// ```text
/// ζ = −a_1/4 ∓ S ± ½ √(z_2 ∓ z_3/(4 z_1))
/// ```
///
/// i.e. the inner square root carries a factor ½. `Literal` drops that
/// factor and is only correct when z_2 ∓ z_3/(4z_1) vanishes; it exists so
/// the discrepancy can be demonstrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadicalReading {
    #[default]
    Corrected,
    Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRoots {
    /// Ascending.
    pub zeta: [f64; 4],
    /// |p(ζ_j)| with p evaluated in expanded Horner form.
    pub residuals: [f64; 4],
    pub min_gap: f64,
    pub method: RootMethod,
}

/// max(1, |a_1|, |a_2|, |a_3|, |a_4|)
pub fn coefficient_scale(a: &[f64; 4]) -> f64 {
    a.iter().fold(1.0f64, |m, x| m.max(x.abs()))
}

/// max(1, max_i |a_i|^{1/i}), a bound on the root magnitudes up to a small
/// factor.
pub fn root_scale(a: &[f64; 4]) -> f64 {
    a.iter()
        .enumerate()
        .fold(1.0f64, |m, (i, x)| m.max(x.abs().powf(1.0 / (i as f64 + 1.0))))
}

pub fn eval(a: &[f64; 4], z: f64) -> f64 {
    (((z + a[0]) * z + a[1]) * z + a[2]) * z + a[3]
}

fn eval_c(a: &[f64; 4], z: C64) -> C64 {
    (((z + a[0]) * z + a[1]) * z + a[2]) * z + a[3]
}

fn eval_deriv(a: &[f64; 4], z: f64) -> f64 {
    ((4.0 * z + 3.0 * a[0]) * z + 2.0 * a[1]) * z + a[2]
}

impl QuarticRoots {
    fn from_real(a: &[f64; 4], mut zeta: [f64; 4], method: RootMethod) -> Self {
        zeta.sort_by(|x, y| x.total_cmp(y));
        let residuals = zeta.map(|z| eval(a, z).abs());
        QuarticRoots { zeta, residuals, min_gap: min_gap(&zeta), method }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0f64, |m, r| m.max(*r))
    }

    /// Largest residual divided by the coefficient scale.
    pub fn relative_residual(&self, a: &[f64; 4]) -> f64 {
        self.max_residual() / coefficient_scale(a)
    }

    pub fn is_near_degenerate(&self) -> bool {
        let scale = self.zeta.iter().fold(1.0f64, |m, z| m.max(z.abs()));
        self.min_gap < GAP_TOL * scale
    }
}

/// Smallest pairwise distance of sorted roots.
pub fn min_gap(sorted: &[f64; 4]) -> f64 {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Relative errors of the four Vieta identities
/// e_1 = −a_1, e_2 = a_2, e_3 = −a_3, e_4 = a_4, each divided by the
/// magnitude of the corresponding symmetric sum (at least 1).
pub fn vieta_errors(zeta: &[f64; 4], a: &[f64; 4]) -> [f64; 4] {
    let mut e = [0.0f64; 4];
    let mut mag = [0.0f64; 4];
    for i in 0..4 {
        e[0] += zeta[i];
        mag[0] += zeta[i].abs();
        for j in i + 1..4 {
            e[1] += zeta[i] * zeta[j];
            mag[1] += (zeta[i] * zeta[j]).abs();
            for k in j + 1..4 {
                e[2] += zeta[i] * zeta[j] * zeta[k];
                mag[2] += (zeta[i] * zeta[j] * zeta[k]).abs();
            }
        }
    }
    e[3] = zeta.iter().product();
    mag[3] = e[3].abs();
    let target = [-a[0], a[1], -a[2], a[3]];
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = (e[i] - target[i]).abs() / mag[i].max(target[i].abs()).max(1.0);
    }
    out
}

fn truncate_imag(roots: [C64; 4], scale: f64) -> Result<[f64; 4]> {
    let max_imag = roots.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if !(max_imag <= IMAG_TOL * scale) {
        return Err(Error::NonRealRoots { max_imag });
    }
    Ok(roots.map(|z| z.re))
}

pub fn solve_closed_form(a: [f64; 4]) -> Result<QuarticRoots> {
    solve_closed_form_with(a, RadicalReading::Corrected)
}

pub fn solve_closed_form_with(a: [f64; 4], reading: RadicalReading) -> Result<QuarticRoots> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateBranch("non-finite coefficient"));
    }
    let [a1, a2, a3, a4] = a;
    let s = root_scale(&a);

    let y1 = 12.0 * a4 + a2 * a2 - 3.0 * a1 * a3;
    let y2 = -2.0 * a2 / 3.0 + a1 * a1 / 4.0;
    let d1 = 27.0 * a3 * a3 - 72.0 * a2 * a4 + 2.0 * a2 * a2 * a2 - 9.0 * a1 * a2 * a3
        + 27.0 * a1 * a1 * a4;
    let z3 = -8.0 * a3 + 4.0 * a1 * a2 - a1 * a1 * a1;

    let disc = C64::new(d1 * d1 - 4.0 * y1 * y1 * y1, 0.0).sqrt();
    let d2_principal = ((d1 + disc) / 2.0).cbrt();
    if d2_principal.norm() <= 1e-12 * s * s {
        return Err(Error::DegenerateBranch("d2 vanishes"));
    }

    let tol = RESIDUAL_TOL * coefficient_scale(&a);
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut best: Option<([C64; 4], f64)> = None;
    let mut last_err = Error::DegenerateBranch("z1 vanishes");
    for branch in 0..3 {
        let d2 = d2_principal * omega.powi(branch);
        let z1 = (y2 + y1 / (3.0 * d2) + d2 / 3.0).sqrt();
        if z1.norm() <= 1e-12 * s {
            last_err = Error::DegenerateBranch("z1 vanishes");
            continue;
        }
        let z2 = 2.0 * y2 - y1 / (3.0 * d2) - d2 / 3.0;
        let lower = (z2 - z3 / (4.0 * z1)).sqrt();
        let upper = (z2 + z3 / (4.0 * z1)).sqrt();
        let half = match reading {
            RadicalReading::Corrected => 0.5,
            RadicalReading::Literal => 1.0,
        };
        let base = C64::new(-a1 / 4.0, 0.0);
        let roots = [
            base - z1 / 2.0 - half * lower,
            base - z1 / 2.0 + half * lower,
            base + z1 / 2.0 - half * upper,
            base + z1 / 2.0 + half * upper,
        ];
        let worst = roots.iter().fold(0.0f64, |m, z| m.max(eval_c(&a, *z).norm()));
        if best.as_ref().is_none_or(|(_, w)| worst < *w) {
            best = Some((roots, worst));
        }
        if worst <= tol {
            break;
        }
    }
    let Some((roots, worst)) = best else {
        return Err(last_err);
    };
    if reading == RadicalReading::Corrected && !(worst <= tol) {
        return Err(Error::DegenerateBranch("no branch meets the residual tolerance"));
    }
    let real = truncate_imag(roots, s)?;
    Ok(QuarticRoots::from_real(&a, real, RootMethod::ClosedForm))
}

/// Eigenvalues of the companion matrix of the quartic rescaled to unit root
/// magnitude, followed by at most three Newton steps per root that are kept
/// only when they reduce the residual.
pub fn solve_companion(a: [f64; 4]) -> Result<QuarticRoots> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonRealRoots { max_imag: f64::NAN });
    }
    let s = a
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (i, x)| m.max(x.abs().powf(1.0 / (i as f64 + 1.0))));
    if s == 0.0 {
        return Ok(QuarticRoots::from_real(&a, [0.0; 4], RootMethod::CompanionMatrix));
    }
    let b = [a[0] / s, a[1] / (s * s), a[2] / (s * s * s), a[3] / (s * s * s * s)];
    #[rustfmt::skip]
    let companion = Matrix4::new(
        -b[0], -b[1], -b[2], -b[3],
        1.0,   0.0,   0.0,   0.0,
        0.0,   1.0,   0.0,   0.0,
        0.0,   0.0,   1.0,   0.0,
    );
    let eig = companion.complex_eigenvalues();
    let scaled = [eig[0] * s, eig[1] * s, eig[2] * s, eig[3] * s];
    let real = truncate_imag(scaled, s.max(1.0))?;
    let polished = real.map(|z| polish(&a, z));
    Ok(QuarticRoots::from_real(&a, polished, RootMethod::CompanionMatrix))
}

fn polish(a: &[f64; 4], mut z: f64) -> f64 {
    let mut r = eval(a, z).abs();
    for _ in 0..3 {
        let d = eval_deriv(a, z);
        if d == 0.0 || r == 0.0 {
            break;
        }
        let next = z - eval(a, z) / d;
        let rn = eval(a, next).abs();
        if !(rn < r) {
            break;
        }
        z = next;
        r = rn;
    }
    z
}
