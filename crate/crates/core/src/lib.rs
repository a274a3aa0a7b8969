//! Gravitational self-decoherence in a Stern-Gerlach interferometer.
//!
//! A spin-1/2 particle is split into two spatially separated arms that
//! attract each other through the Schrödinger–Newton self-interaction. The
//! resulting arm-dependent phases show up as a deviation `D` of the
//! x-spin-up probability from the standard quantum-mechanical value.
//!
//! * [`units`]: constants, experiment parameters, dimensionless phase `T`.
//! * [`sn_dynamics`]: N-site self-potential, closed-form propagator, RK4 integrator.
//! * [`stern_gerlach`]: two-arm interferometer in closed form.
//! * [`experiment`]: θ-sweeps, feasibility reports, consistency runs.
//! * [`cli`]: command-line surface and CSV/JSON/text serialization.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod sn_dynamics;
pub mod stern_gerlach;
pub mod units;

pub use error::{Error, Result};
pub use experiment::{
    consistency_run, feasibility, run_sweep, run_sweep_with_workers, ConsistencyReport, Engine,
    FeasibilityReport, SweepResult, SweepRow, SweepSpec, ThetaGrid,
};
pub use sn_dynamics::{
    exact_potential_solution, integrate, self_potential, site_probabilities, DiscreteState,
    ExternalPotential, StepControl, StepSize, Trajectory,
};
pub use stern_gerlach::{
    delta_omega, evolve_split, phase_frequencies, prepare, prob_difference, prob_x_plus,
    prob_x_plus_qm, PhasePair, SpinorAmplitudes,
};
pub use units::{
    dimensionless_phase, kinetic_potential_ratio, planck_mass, ExperimentParams, PhysConstants,
    PrepAngle,
};
