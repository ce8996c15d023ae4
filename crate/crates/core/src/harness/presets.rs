//! Bundled scenarios, named after the figure panel each one reproduces.
//!
//! `fig2*`–`fig4*` give W(τ) for n̄ = 20, with k = 1 in panels a, c, e and
//! k = 2 in b, d, f. The rest use n̄ = 5: `fig5*`/`fig6*` give P(θ, τ),
//! `fig7*`/`fig8*` the phase variance of the same cases, and `fig9*`–`fig12*`
//! repeat those four with k = 2.

use super::scenario::{Mode, ScenarioSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub spec: ScenarioSpec,
}

/// Shared settings of one panel, before k and the output mode are chosen.
#[derive(Clone, Copy, Default)]
struct Case {
    time_independent: bool,
    mu: f64,
    chi: f64,
    delta: [f64; 3],
}

impl Case {
    fn dependent(mu: f64, chi: f64, delta: [f64; 3]) -> Self {
        Case { time_independent: false, mu, chi, delta }
    }

    fn independent(chi: f64) -> Self {
        Case { time_independent: true, chi, ..Default::default() }
    }

    fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.time_independent {
            parts.push("time-independent".to_string());
        } else {
            parts.push(format!("mu={}", self.mu));
        }
        parts.push(format!("chi={}", self.chi));
        for (name, d) in ["delta1", "delta3", "delta4"].iter().zip(self.delta) {
            if d != 0.0 {
                parts.push(format!("{name}={d}"));
            }
        }
        parts.join(", ")
    }

    fn spec(&self, n_bar: f64, k: u32, mode: Mode, tau_step: f64, what: &str) -> ScenarioSpec {
        ScenarioSpec {
            description: Some(format!("{what}, n_bar={n_bar}, k={k}, {}", self.label())),
            mode: Some(mode),
            n_bar: Some(n_bar),
            k: Some(k),
            mu: Some(if self.time_independent { 0.0 } else { self.mu }),
            chi: Some(self.chi),
            delta1: Some(self.delta[0]),
            delta3: Some(self.delta[1]),
            delta4: Some(self.delta[2]),
            tau_max: Some(50.0),
            tau_step: Some(tau_step),
            time_independent: Some(self.time_independent),
            ..Default::default()
        }
    }
}

const SMALL_KERR: f64 = 1e-4;
const INVERSION_STEP: f64 = 0.02;
const PHASE_STEP: f64 = 0.1;

fn inversion_figures() -> Vec<(u32, [Case; 3])> {
    let zero = [0.0; 3];
    vec![
        (
            2,
            [
                Case::independent(SMALL_KERR),
                Case::dependent(0.1, SMALL_KERR, zero),
                Case::dependent(2.0, SMALL_KERR, zero),
            ],
        ),
        (
            3,
            [
                Case::dependent(0.1, SMALL_KERR, [15.0, 0.0, 0.0]),
                Case::dependent(0.1, SMALL_KERR, [0.0, 20.0, 0.0]),
                Case::dependent(0.1, SMALL_KERR, [15.0, 20.0, 30.0]),
            ],
        ),
        (
            4,
            [
                Case::dependent(0.1, 0.01, zero),
                Case::dependent(0.1, 0.1, zero),
                Case::dependent(0.1, 1.0, zero),
            ],
        ),
    ]
}

fn phase_cases() -> [[Case; 4]; 2] {
    let zero = [0.0; 3];
    [
        [
            Case::independent(SMALL_KERR),
            Case::dependent(0.1, SMALL_KERR, zero),
            Case::dependent(0.5, SMALL_KERR, zero),
            Case::dependent(2.0, SMALL_KERR, zero),
        ],
        [
            Case::dependent(0.1, SMALL_KERR, [15.0, 0.0, 0.0]),
            Case::dependent(0.1, SMALL_KERR, [15.0, 20.0, 30.0]),
            Case::dependent(0.1, 0.1, zero),
            Case::dependent(0.1, 1.0, zero),
        ],
    ]
}

/// Every bundled preset, in figure order.
pub fn all() -> Vec<Preset> {
    let mut out = Vec::new();
    for (fig, cases) in inversion_figures() {
        for (i, case) in cases.iter().enumerate() {
            for (j, k) in [1u32, 2].into_iter().enumerate() {
                let panel = (b'a' + (2 * i + j) as u8) as char;
                out.push(Preset {
                    name: format!("fig{fig}{panel}"),
                    spec: case.spec(20.0, k, Mode::Inversion, INVERSION_STEP, "population inversion"),
                });
            }
        }
    }
    let phase = phase_cases();
    for (base, k) in [(5u32, 1u32), (9, 2)] {
        for (offset, mode, what) in [
            (0, Mode::PhaseDistribution, "phase distribution"),
            (2, Mode::PhaseVariance, "phase variance"),
        ] {
            for (g, cases) in phase.iter().enumerate() {
                let fig = base + offset + g as u32;
                for (i, case) in cases.iter().enumerate() {
                    let panel = (b'a' + i as u8) as char;
                    out.push(Preset {
                        name: format!("fig{fig}{panel}"),
                        spec: case.spec(5.0, k, mode, PHASE_STEP, what),
                    });
                }
            }
        }
    }
    out.sort_by_key(|p| {
        let digits: String = p.name[3..].chars().take_while(char::is_ascii_digit).collect();
        (digits.parse::<u32>().unwrap_or(0), p.name.clone())
    });
    out
}

pub fn find(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|p| p.name).collect()
}
