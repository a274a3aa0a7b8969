// Four sites on a regular tetrahedron: the self-potential, the closed-form
// phase evolution, and an RK4 integration of the nonlinear equation that
// recomputes the potential from the evolving amplitudes.

use num_complex::Complex64;
use selfgrav::{
    exact_potential_solution, integrate, self_potential, site_probabilities, DiscreteState,
    ExternalPotential, PhysConstants, StepControl,
};

const MASS: f64 = 1e-14;

pub fn run_example() -> selfgrav::Result<f64> {
    let constants = PhysConstants::codata();
    let a = 10e-6;
    let positions = vec![[a, a, a], [a, -a, -a], [-a, a, -a], [-a, -a, a]];
    let amplitudes = vec![
        Complex64::new(0.6, 0.1),
        Complex64::new(0.2, -0.4),
        Complex64::new(0.3, 0.3),
        Complex64::new(-0.1, 0.5),
    ];
    let state = DiscreteState::normalized(positions, amplitudes, 0.0)?;

    let u = self_potential(&state, MASS, &constants)?;
    println!("P = {:.4?}", site_probabilities(&state));
    let shown: Vec<String> = u.iter().map(|x| format!("{x:.4e}")).collect();
    println!("U = [{}] J", shown.join(", "));

    // ten radians on the fastest site
    let u_max = u.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let t = 10.0 * constants.hbar / u_max;
    let traj = integrate(
        &state,
        &ExternalPotential::Null,
        MASS,
        &constants,
        t,
        &StepControl::default().record_every(2500),
    )?;
    let mut worst = 0.0_f64;
    for s in traj.samples() {
        let exact = exact_potential_solution(&state, MASS, &constants, s.time)?;
        let err = s
            .amplitudes
            .iter()
            .zip(exact.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        println!("t = {:>9.3} s  max |ψ_rk4 − ψ_exact| = {err:.2e}", s.time);
    }
    let meta = traj.meta();
    println!(
        "{} steps of {:.4} s, norm drift {:.1e}, population drift {:.1e}",
        meta.steps, meta.step, meta.max_norm_drift, meta.max_population_drift
    );
    Ok(worst)
}

fn main() -> selfgrav::Result<()> {
    run_example().map(|_| ())
}
