// Step through one interferometer run: prepare, split, evolve, recombine
// and measure along x.

use std::f64::consts::PI;

use selfgrav::stern_gerlach::{prob_x_plus_projected, SpinorAmplitudes};
use selfgrav::{
    delta_omega, evolve_split, phase_frequencies, prepare, prob_difference, prob_x_plus,
    prob_x_plus_qm, ExperimentParams, PhysConstants, PrepAngle,
};

pub fn run_example() -> selfgrav::Result<Vec<SpinorAmplitudes>> {
    let constants = PhysConstants::codata();
    let params = ExperimentParams::yb_microcrystal(50.0)?;
    let mut finals = Vec::new();

    for deg in [0.0, 30.0, 45.0, 60.0, 90.0, 120.0, 180.0] {
        let theta = PrepAngle::new(deg * PI / 180.0)?;
        let start = prepare(theta);
        let w = phase_frequencies(theta, &params, &constants);
        let end = evolve_split(theta, &params, &constants);
        println!(
            "θ = {deg:>5}°  |α(0)⟩ = ({:.3}, {:.3})  ω₁ = {:.4} ω₂ = {:.4} Δω = {:+.4} rad/s",
            start.up.re,
            start.down.re,
            w.omega1,
            w.omega2,
            delta_omega(theta, &params, &constants)
        );
        println!(
            "          P_x+ = {:.6} (projected {:.6})  P_qm = {:.6}  D = {:+.6}  norm = {:.15}",
            prob_x_plus(theta, &params, &constants),
            prob_x_plus_projected(theta, &params, &constants),
            prob_x_plus_qm(theta),
            prob_difference(theta, &params, &constants),
            end.norm_sqr()
        );
        finals.push(end);
    }
    Ok(finals)
}

fn main() -> selfgrav::Result<()> {
    run_example().map(|_| ())
}
