// Local extrema of D(θ) on (0, π/2) multiply as the phase T grows.

use std::f64::consts::FRAC_PI_2;

use selfgrav::experiment::d_extrema;
use selfgrav::{dimensionless_phase, ExperimentParams, PhysConstants};

pub fn run_example() -> selfgrav::Result<Vec<(f64, usize)>> {
    let constants = PhysConstants::codata();
    let mut counts = Vec::new();
    for t in [5.0, 20.0, 50.0, 100.0] {
        let phase = dimensionless_phase(&ExperimentParams::yb_microcrystal(t)?, &constants);
        let extrema = d_extrema(phase, 0.0, FRAC_PI_2, 4000);
        let listing: Vec<String> = extrema
            .iter()
            .map(|e| {
                format!(
                    "{}{:.1}°",
                    if e.is_maximum { "max@" } else { "min@" },
                    e.theta.to_degrees()
                )
            })
            .collect();
        println!(
            "t = {t:>5} s  T = {phase:>7.3}  {} extrema: {}",
            extrema.len(),
            listing.join(" ")
        );
        counts.push((phase, extrema.len()));
    }
    Ok(counts)
}

fn main() -> selfgrav::Result<()> {
    run_example().map(|_| ())
}
