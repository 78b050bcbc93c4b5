//! Step engine against the dense `S (B (x) 1)` brute force.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::{
    build_initial_state, distribution_from_state, evolve_disordered, evolve_ordered,
    sample_schedule, CoinParams, CoinSchedule, InitialStateParams, Preset,
};
use qwalk_oracle as dense;

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn as_tuples(s: &CoinSchedule) -> Vec<(f64, f64, f64)> {
    s.entries.iter().map(|c| (c.xi, c.theta, c.zeta)).collect()
}

#[test]
fn presets_match_dense_operator() {
    for preset in Preset::ALL {
        for t in 0..=8usize {
            let init = InitialStateParams::symmetric();
            let schedule = sample_schedule(&preset.spec(), t, 1234, 7).unwrap();
            let engine =
                evolve_disordered(&build_initial_state(init, t.max(1)).unwrap(), &schedule)
                    .unwrap();
            let oracle = dense::evolve(
                &dense::initial_vector(init.delta, init.phi, t.max(1)),
                &as_tuples(&schedule),
                t.max(1),
            );
            assert!(
                max_diff(&engine.to_vector(), &oracle) < 1e-12,
                "{preset} t={t}"
            );

            let p = distribution_from_state(&engine).unwrap().p;
            let q = dense::probabilities(&oracle, t.max(1));
            for (a, b) in p.iter().zip(&q) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn hadamard_two_steps_exact_amplitudes() {
    // Hand product: H(1, i)/sqrt2 = ((1+i)/2, (1-i)/2) -> x=-1 coin 0, x=+1 coin 1.
    // Second step: x=-2 coin 0 gets (1+i)/(2 sqrt2); x=0 coin 1 gets (1+i)/(2 sqrt2);
    // x=0 coin 0 gets (1-i)/(2 sqrt2); x=+2 coin 1 gets -(1-i)/(2 sqrt2).
    let k = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    let s = build_initial_state(InitialStateParams::symmetric(), 2).unwrap();
    let s = evolve_ordered(&s, CoinParams::hadamard(), 2).unwrap();
    let want = [
        (0, -2, Complex64::new(k, k)),
        (1, 0, Complex64::new(k, k)),
        (0, 0, Complex64::new(k, -k)),
        (1, 2, Complex64::new(-k, k)),
    ];
    for (c, x, a) in want {
        assert!((s.amplitude(c, x) - a).norm() < 1e-15, "coin {c} x {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arbitrary_schedules_match_dense_operator(
        coins in proptest::collection::vec((-PI..PI, -PI..PI, -PI..PI), 0..=8),
        delta in 0.0..PI,
        phi in 0.0..(2.0 * PI),
        extra in 0usize..3,
    ) {
        let t_max = coins.len() + extra;
        let schedule = CoinSchedule {
            entries: coins.iter().map(|&(a, b, c)| CoinParams::new(a, b, c)).collect(),
            master_seed: 0,
            realization_index: 0,
        };
        let init = InitialStateParams::new(delta, phi);
        let engine = evolve_disordered(&build_initial_state(init, t_max).unwrap(), &schedule).unwrap();
        let oracle = dense::evolve(&dense::initial_vector(delta, phi, t_max), &coins, t_max);
        prop_assert!(max_diff(&engine.to_vector(), &oracle) < 1e-12);
    }
}

#[test]
fn swap_coin_dense_check_odd_steps() {
    for t in [1usize, 3, 5] {
        let v0 = dense::initial_vector(FRAC_PI_2, FRAC_PI_2, t);
        let p = dense::probabilities(&dense::evolve(&v0, &vec![(0.0, FRAC_PI_2, 0.0); t], t), t);
        assert!((p[t - 1] - 0.5).abs() < 1e-15 && (p[t + 1] - 0.5).abs() < 1e-15);
    }
}
