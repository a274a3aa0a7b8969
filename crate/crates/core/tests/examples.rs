//! Every example under `examples/` runs and produces sensible output.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }
    };
}

example!(figure_sweep);
example!(feasibility_report);
example!(interferometer);
example!(nsite_dynamics);
example!(quantum_limit);
example!(oscillations);

#[test]
fn figure_sweep_runs() {
    let result = figure_sweep::run_example().unwrap();
    assert_eq!(result.rows.len(), 1442);
}

#[test]
fn feasibility_report_runs() {
    let reports = feasibility_report::run_example().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports[..3].iter().all(|r| r.kinetic_negligible));
    assert!(!reports[3].kinetic_negligible);
}

#[test]
fn interferometer_runs() {
    for s in interferometer::run_example().unwrap() {
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn nsite_dynamics_runs() {
    assert!(nsite_dynamics::run_example().unwrap() < 1e-9);
}

#[test]
fn quantum_limit_runs() {
    assert_eq!(quantum_limit::run_example().unwrap(), 0.0);
}

#[test]
fn oscillations_run() {
    let counts = oscillations::run_example().unwrap();
    assert!(counts.windows(2).all(|w| w[0].1 <= w[1].1));
}
