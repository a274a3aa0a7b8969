use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use selfgrav::cli::{format_number, read_sweep_csv, read_sweep_json, sweep_bytes, Format};
use selfgrav::experiment::{run_sweep, SweepSpec, ThetaGrid};
use selfgrav::sn_dynamics::{
    integrate, self_potential, site_probabilities, ExternalPotential, StepControl,
};
use selfgrav::stern_gerlach::{
    delta_omega, evolve_split, prob_difference, prob_x_plus, prob_x_plus_projected,
};
use selfgrav::units::{dimensionless_phase, gravitational_frequency};
use selfgrav::{DiscreteState, ExperimentParams, PhysConstants, PrepAngle};

const MASS: f64 = 1e-14;

fn state_strategy(max_sites: usize) -> impl Strategy<Value = DiscreteState> {
    (1..=max_sites)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(prop::array::uniform3(-1e-5..1e-5f64), n),
                prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n),
            )
        })
        .prop_filter_map("degenerate state", |(pos, amps)| {
            let amps = amps
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            DiscreteState::normalized(pos, amps, 0.0).ok()
        })
}

fn params_strategy() -> impl Strategy<Value = ExperimentParams> {
    (1e-16..1e-12f64, 1e-6..1e-3f64, 0.0..100.0f64)
        .prop_map(|(m, d, t)| ExperimentParams::new(m, d, t, 0.0).unwrap())
}

fn theta_strategy() -> impl Strategy<Value = PrepAngle> {
    (0.0..TAU).prop_map(|x| PrepAngle::new(x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn self_potential_is_nonpositive(state in state_strategy(8)) {
        let c = PhysConstants::codata();
        let u = self_potential(&state, MASS, &c).unwrap();
        let occupied = site_probabilities(&state).iter().filter(|&&p| p > 0.0).count();
        for x in &u {
            prop_assert!(*x <= 0.0);
            if occupied >= 2 {
                prop_assert!(*x < 0.0);
            }
        }
    }

    #[test]
    fn self_potential_scales_inversely_with_distance(state in state_strategy(6), lambda in 0.1..10.0f64) {
        let c = PhysConstants::codata();
        let u = self_potential(&state, MASS, &c).unwrap();
        let v = self_potential(&state.scaled(lambda).unwrap(), MASS, &c).unwrap();
        for (a, b) in u.iter().zip(&v) {
            prop_assert!((b * lambda - a).abs() <= 1e-13 * a.abs());
        }
    }

    #[test]
    fn integration_conserves_norm_and_populations(state in state_strategy(5), phase in 0.0..5.0f64) {
        let c = PhysConstants::codata();
        let u = self_potential(&state, MASS, &c).unwrap();
        let u_max = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assume!(u_max > 0.0);
        let t = phase * c.hbar / u_max;
        let traj = integrate(&state, &ExternalPotential::Null, MASS, &c, t, &StepControl::default()).unwrap();
        let p0 = site_probabilities(&state);
        for s in traj.samples() {
            let norm: f64 = s.amplitudes.iter().map(|a| a.norm_sqr()).sum();
            prop_assert!((1.0 - norm).abs() < 1e-10);
            for (a, p) in s.amplitudes.iter().zip(&p0) {
                prop_assert!((a.norm_sqr() - p).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn phase_scaling(params in params_strategy()) {
        let c = PhysConstants::codata();
        let t = dimensionless_phase(&params, &c);
        let heavier = ExperimentParams { mass: 2.0 * params.mass, ..params };
        let longer = ExperimentParams { duration: 2.0 * params.duration, ..params };
        prop_assert_eq!(dimensionless_phase(&heavier, &c), 4.0 * t);
        prop_assert_eq!(dimensionless_phase(&longer, &c), 2.0 * t);
    }

    #[test]
    fn interferometer_invariants(params in params_strategy(), theta in theta_strategy()) {
        let c = PhysConstants::codata();
        let a = evolve_split(theta, &params, &c);
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        let p = prob_x_plus(theta, &params, &c);
        prop_assert!((0.0..=1.0).contains(&p));
        // argument roundoff grows with the phase
        let tol = 1e-12 * (1.0 + dimensionless_phase(&params, &c));
        prop_assert!((p - prob_x_plus_projected(theta, &params, &c)).abs() < tol);
        let d = prob_difference(theta, &params, &c);
        prop_assert!(d.abs() <= theta.radians().sin().abs());
        let scale = gravitational_frequency(&params, &c);
        prop_assert!(delta_omega(theta, &params, &c).abs() <= scale);
    }

    #[test]
    fn sweep_serialization_round_trips(mass in 1e-15..1e-13f64, t in 0.0..60.0f64, points in 2usize..40) {
        let c = PhysConstants::codata();
        let mut spec = SweepSpec::figures(ExperimentParams::new(mass, 250e-6, 0.0, 0.0).unwrap());
        spec.grid = ThetaGrid::new(0.0, TAU, points).unwrap();
        spec.durations = vec![t];
        let result = run_sweep(&spec, &c).unwrap();

        let csv = sweep_bytes(&result, Format::Csv).unwrap();
        let rows = read_sweep_csv(csv.as_slice()).unwrap();
        prop_assert_eq!(&rows, &result.rows);

        let json = sweep_bytes(&result, Format::Json).unwrap();
        let back = read_sweep_json(json.as_slice()).unwrap();
        prop_assert_eq!(back, result);
    }

    #[test]
    fn number_format_is_exact(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_number(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }
}
