// Regenerates the data behind the two figure curves: P_x+ and D over θ for
// the Yb microcrystal at t = 5 s and t = 50 s.
//
//     cargo run --example figure_sweep -- [OUTPUT.csv]

use selfgrav::cli::{write_sweep, write_sweep_to_path, Format};
use selfgrav::{run_sweep, ExperimentParams, PhysConstants, SweepResult, SweepSpec};

pub fn run_example() -> selfgrav::Result<SweepResult> {
    let spec = SweepSpec::figures(ExperimentParams::yb_microcrystal(0.0)?);
    let result = run_sweep(&spec, &PhysConstants::codata())?;

    for t in &spec.durations {
        let rows: Vec<_> = result.rows_for(*t).collect();
        let deepest = rows.iter().min_by(|a, b| a.d.total_cmp(&b.d)).unwrap();
        println!(
            "t = {t:>4} s  T = {:.4}  min D = {:+.4} at θ = {:.1}°",
            rows[0].phase,
            deepest.d,
            deepest.theta_rad.to_degrees()
        );
    }
    Ok(result)
}

fn main() -> selfgrav::Result<()> {
    let result = run_example()?;
    match std::env::args().nth(1) {
        Some(path) => {
            let n = write_sweep_to_path(&result, Format::Csv, path.as_ref())?;
            println!("wrote {n} bytes to {path}");
        }
        None => {
            write_sweep(&result, Format::Csv, &mut std::io::sink())?;
            println!("{} rows (pass a path to save the CSV)", result.rows.len());
        }
    }
    Ok(())
}
