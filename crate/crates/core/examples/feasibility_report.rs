// How large is the effect for a Yb microcrystal, and is dropping the
// kinetic term justified? Also shows the Planck-mass scale of the phase.

use selfgrav::cli::{write_report, Format};
use selfgrav::{feasibility, planck_mass, ExperimentParams, FeasibilityReport, PhysConstants};

pub fn run_example() -> selfgrav::Result<Vec<FeasibilityReport>> {
    let constants = PhysConstants::codata();
    let mut reports = Vec::new();
    for t in [1.0, 5.0, 50.0] {
        let r = feasibility(&ExperimentParams::yb_microcrystal(t)?, &constants);
        println!(
            "t = {t:>4} s  T = {:>8.4}  K/U = {:.3e}  max|D| = {:.4} at θ = {:.2}°",
            r.phase,
            r.kinetic_ratio,
            r.max_abs_d,
            r.argmax_theta.to_degrees()
        );
        reports.push(r);
    }

    // m = m_P, d = 1 μm, t = 1 s: T = c·t/d
    let heavy = ExperimentParams::new(planck_mass(&constants), 1e-6, 1.0, 0.0)?;
    let r = feasibility(&heavy, &constants);
    println!(
        "\nPlanck mass {:.6e} kg, d = 1 μm, t = 1 s:",
        planck_mass(&constants)
    );
    write_report(&r, Format::Text, &mut std::io::stdout())?;
    reports.push(r);
    Ok(reports)
}

fn main() -> selfgrav::Result<()> {
    run_example().map(|_| ())
}
