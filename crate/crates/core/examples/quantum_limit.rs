// Switching gravity off (G = 0) recovers the standard prediction exactly.

use std::f64::consts::TAU;

use selfgrav::{
    prob_difference, prob_x_plus, prob_x_plus_qm, ExperimentParams, PhysConstants, PrepAngle,
};

pub fn run_example() -> selfgrav::Result<f64> {
    let with_gravity = PhysConstants::codata();
    let without = with_gravity.without_gravity();
    let params = ExperimentParams::yb_microcrystal(50.0)?;

    let mut worst_gap = 0.0_f64;
    let mut largest_signal = 0.0_f64;
    for k in 0..360 {
        let theta = PrepAngle::new(k as f64 * TAU / 360.0)?;
        worst_gap =
            worst_gap.max((prob_x_plus(theta, &params, &without) - prob_x_plus_qm(theta)).abs());
        largest_signal = largest_signal.max(prob_difference(theta, &params, &with_gravity).abs());
    }
    println!("G = 0:     max |P_x+ − P_qm| = {worst_gap:e}");
    println!("CODATA G:  max |D|           = {largest_signal:.4}");
    Ok(worst_gap)
}

fn main() -> selfgrav::Result<()> {
    run_example().map(|_| ())
}
