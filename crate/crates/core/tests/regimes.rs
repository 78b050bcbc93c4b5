//! Ensemble behaviour of the canonical disorder regimes.

use std::f64::consts::FRAC_PI_4;

use qwalk_core::{
    build_initial_state, distribution_from_state, evolve_ordered, localization_length,
    run_ensemble, CoinParams, InitialStateParams, Preset,
};

const SEED: u64 = 2011;

fn mean_variance(preset: Preset, steps: usize, realizations: usize) -> f64 {
    run_ensemble(
        &preset.spec(),
        InitialStateParams::symmetric(),
        steps,
        realizations,
        SEED,
    )
    .unwrap()
    .mean_variance
}

#[test]
fn regimes_are_ordered_by_spread() {
    let high = mean_variance(Preset::ThetaHigh, 200, 100);
    let full = mean_variance(Preset::FullRange, 200, 100);
    let hadamard = mean_variance(Preset::HadamardOrdered, 200, 1);
    assert!(
        high < full && full < hadamard,
        "{high} < {full} < {hadamard}"
    );
}

#[test]
fn full_range_is_near_classical() {
    let t = 100.0;
    let v = mean_variance(Preset::FullRange, 100, 200);
    assert!((0.5 * t..=3.0 * t).contains(&v), "mean variance {v}");
}

#[test]
fn theta_high_is_much_narrower_than_hadamard() {
    let stats = run_ensemble(
        &Preset::ThetaHigh.spec(),
        InitialStateParams::symmetric(),
        200,
        100,
        SEED,
    )
    .unwrap();
    let s = build_initial_state(InitialStateParams::symmetric(), 200).unwrap();
    let reference =
        distribution_from_state(&evolve_ordered(&s, CoinParams::unbiased(FRAC_PI_4), 200).unwrap())
            .unwrap();
    let ratio = localization_length(stats.mean_std_dev, reference.std_dev()).unwrap();
    assert!(ratio < 0.2, "L_loc = {ratio}");
}

#[test]
fn same_seed_same_ensemble() {
    let run = || {
        run_ensemble(
            &Preset::ThetaLow.spec(),
            InitialStateParams::symmetric(),
            50,
            12,
            8,
        )
        .unwrap()
    };
    assert_eq!(run(), run());
}
