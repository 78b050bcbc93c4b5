//! Pilot run for the regime-separation and localization-length checks.
//!
//! `cargo run --release -p qwalk-core --example pilot [seed] [realizations]`

use std::f64::consts::FRAC_PI_4;

use qwalk_core::{
    build_initial_state, distribution_from_state, evolve_ordered, localization_length,
    run_ensemble, spreading_exponent, CoinParams, InitialStateParams, Preset,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2011);
    let realizations: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let initial = InitialStateParams::symmetric();
    let fit_points = [25usize, 50, 100, 200];

    println!("seed={seed} realizations={realizations}");
    println!("preset,exponent,var25,var50,var100,var200,var400,std200,std400");
    let mut theta_high = None;
    for preset in Preset::ALL {
        let stats = run_ensemble(&preset.spec(), initial, 400, realizations, seed)?;
        let series: Vec<_> = fit_points
            .iter()
            .map(|&t| (t as f64, stats.variance_at(t).unwrap()))
            .collect();
        let exponent = spreading_exponent(&series)?;
        println!(
            "{preset},{exponent:.4},{:.3},{:.3},{:.3},{:.3},{:.3},{:.4},{:.4}",
            series[0].1,
            series[1].1,
            series[2].1,
            series[3].1,
            stats.variance_at(400).unwrap(),
            stats.std_dev_at(200).unwrap(),
            stats.std_dev_at(400).unwrap(),
        );
        if preset == Preset::ThetaHigh {
            theta_high = Some(stats);
        }
    }
    let theta_high = theta_high.unwrap();
    for t in [100usize, 200, 400] {
        let s = build_initial_state(initial, t)?;
        let reference =
            distribution_from_state(&evolve_ordered(&s, CoinParams::unbiased(FRAC_PI_4), t)?)?;
        let l = localization_length(theta_high.std_dev_at(t).unwrap(), reference.std_dev())?;
        println!("L_loc(theta-high vs hadamard, t={t}) = {l:.5}");
    }
    Ok(())
}
