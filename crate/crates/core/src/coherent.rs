//! Initial coherent field and Fock-space truncation.

use num_complex::Complex64 as C64;

use crate::params::ModelParams;

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Coherent-state amplitudes q_m = e^{−n̄/2} α^m / √(m!) with α = √n̄ real.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentWeights {
    /// q_0..=q_cutoff
    pub q: Vec<C64>,
    /// Σ_{m<3k} |q_m|², the weight the five-level ansatz cannot carry.
    pub norm_deficit: f64,
    /// Σ_{3k≤m≤cutoff} |q_m|², the weight actually placed on level 5.
    pub represented: f64,
}

impl CoherentWeights {
    /// Initial level-5 amplitude of manifold `n`, rescaled when requested.
    pub fn initial_weight(&self, n: usize, span: usize, renormalize: bool) -> C64 {
        let q = self.q[n + span];
        if renormalize && self.represented > 0.0 {
            q / self.represented.sqrt()
        } else {
            q
        }
    }
}

fn log_poisson_amplitudes(n_bar: f64, len: usize) -> Vec<f64> {
    // ln q_m, with ln q_0 = −n̄/2
    let mut out = Vec::with_capacity(len);
    let ln_alpha = if n_bar > 0.0 { 0.5 * n_bar.ln() } else { f64::NEG_INFINITY };
    let mut acc = -0.5 * n_bar;
    for m in 0..len {
        if m > 0 {
            acc += ln_alpha - 0.5 * (m as f64).ln();
        }
        out.push(acc);
    }
    out
}

pub fn coherent_weights(params: &ModelParams) -> CoherentWeights {
    let len = params.cutoff + 1;
    let q: Vec<C64> = if params.n_bar == 0.0 {
        let mut q = vec![C64::new(0.0, 0.0); len];
        q[0] = C64::new(1.0, 0.0);
        q
    } else {
        log_poisson_amplitudes(params.n_bar, len)
            .into_iter()
            .map(|l| C64::new(l.exp(), 0.0))
            .collect()
    };
    let span = params.span().min(len);
    let norm_deficit = q[..span].iter().map(|z| z.norm_sqr()).sum();
    let represented = q[span..].iter().map(|z| z.norm_sqr()).sum();
    CoherentWeights { q, norm_deficit, represented }
}

/// Smallest N with Poisson tail Σ_{m>N} p_m below `tail_tol`, plus a 3k
/// margin, never below the ceil(n̄) + 3k + 1 floor required of a cutoff.
pub fn choose_cutoff(n_bar: f64, tail_tol: f64, k: u32) -> usize {
    assert!(tail_tol > 0.0 && tail_tol < 1.0, "tail_tol must lie in (0, 1)");
    let margin = 3 * k as usize;
    let floor = n_bar.ceil() as usize + margin + 1;
    if n_bar == 0.0 {
        return floor;
    }
    // Walk far enough out that the remaining terms are negligible next to
    // tail_tol, then accumulate suffix sums from the top down.
    let mut len = (n_bar + 20.0 * n_bar.sqrt() + 40.0).ceil() as usize;
    let probs = loop {
        let logs = log_poisson_amplitudes(n_bar, len);
        let last = 2.0 * logs[len - 1];
        if last < (tail_tol * 1e-6).ln() {
            break logs.into_iter().map(|l| (2.0 * l).exp()).collect::<Vec<_>>();
        }
        len *= 2;
    };
    let mut suffix = 0.0;
    let mut n = len - 1;
    // suffix == Σ_{m>n} p_m at the top of each iteration
    loop {
        if suffix >= tail_tol {
            n += 1;
            break;
        }
        if n == 0 {
            break;
        }
        suffix += probs[n];
        n -= 1;
    }
    (n + margin).max(floor)
}
