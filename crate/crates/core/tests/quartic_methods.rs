use invy::quartic::{
    root_scale, solve_closed_form, solve_closed_form_with, solve_companion, vieta_errors, RadicalReading,
    RESIDUAL_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn expand(r: [f64; 4]) -> [f64; 4] {
    let e1 = r.iter().sum::<f64>();
    let mut e2 = 0.0;
    let mut e3 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            e2 += r[i] * r[j];
            for k in j + 1..4 {
                e3 += r[i] * r[j] * r[k];
            }
        }
    }
    [-e1, e2, -e3, r.iter().product()]
}

/// Four real roots at least `min_gap` apart, spread over a random scale.
fn draw_roots(rng: &mut ChaCha8Rng, min_gap: f64) -> [f64; 4] {
    loop {
        let scale = 10f64.powf(rng.random_range(-1.0..1.5));
        let mut r = [0.0; 4].map(|_: f64| rng.random_range(-scale..scale));
        r.sort_by(f64::total_cmp);
        if r.windows(2).all(|w| w[1] - w[0] >= min_gap * scale) {
            return r;
        }
    }
}

#[test]
fn closed_form_agrees_with_companion_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let a = expand(draw_roots(&mut rng, 0.05));
        let cf = solve_closed_form(a).expect("closed form");
        let cm = solve_companion(a).expect("companion");
        let scale = root_scale(&a);
        for (x, y) in cf.zeta.iter().zip(&cm.zeta) {
            worst = worst.max((x - y).abs() / scale);
        }
        assert!(cf.relative_residual(&a) <= RESIDUAL_TOL);
        assert!(cm.relative_residual(&a) <= RESIDUAL_TOL);
    }
    assert!(worst <= 1e-8, "worst relative disagreement {worst:e}");
}

#[test]
fn recovered_roots_satisfy_vieta() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let r = draw_roots(&mut rng, 0.05);
        let a = expand(r);
        let s = solve_companion(a).unwrap();
        assert!(vieta_errors(&s.zeta, &a).iter().all(|e| *e <= 1e-8));
        for (x, y) in s.zeta.iter().zip(r) {
            assert!((x - y).abs() <= 1e-8 * root_scale(&a));
        }
    }
}

#[test]
fn literal_radical_reading_misses_the_roots() {
    // Without the factor ½ on the inner radical the roots are off on
    // generic quartics.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    for _ in 0..200 {
        let a = expand(draw_roots(&mut rng, 0.05));
        match solve_closed_form_with(a, RadicalReading::Literal) {
            Ok(s) if s.relative_residual(&a) <= RESIDUAL_TOL => {}
            _ => failures += 1,
        }
    }
    assert!(failures >= 190, "literal reading failed on only {failures}/200 draws");
}
