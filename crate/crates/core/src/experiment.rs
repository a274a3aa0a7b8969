//! θ-sweeps of the interferometer statistics, feasibility reports for a
//! given setup, and analytic-vs-numeric consistency runs.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sn_dynamics::{integrate, DiscreteState, ExternalPotential, StepControl};
use crate::stern_gerlach::{
    evolve_split_at, prob_difference_at, prob_difference_slope_at, prob_x_plus_at, prob_x_plus_qm,
    SpinorAmplitudes,
};
use crate::units::{
    dimensionless_phase, gravitational_frequency, kinetic_potential_ratio, ExperimentParams,
    PhysConstants, PrepAngle,
};

/// Kinetic-to-potential ratios below this make the kinetic term negligible.
pub const KINETIC_NEGLIGIBLE_BELOW: f64 = 1e-6;

/// Largest allowed |P_analytic − P_numeric| when both engines run.
pub const ENGINE_AGREEMENT: f64 = 1e-9;

/// Points of the coarse θ grid scanned before refining `max |D|`.
pub const FEASIBILITY_GRID_POINTS: usize = 10_000;

/// θ tolerance of the golden-section refinement.
pub const ARGMAX_TOLERANCE: f64 = 1e-10;

pub const FIGURE_DURATIONS: [f64; 2] = [5.0, 50.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Analytic,
    Numeric,
    Both,
}

/// Evenly spaced θ values, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Default for ThetaGrid {
    /// `[0, 2π]` at 0.5° resolution.
    fn default() -> Self {
        Self {
            start: 0.0,
            end: TAU,
            points: 721,
        }
    }
}

impl ThetaGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        let grid = Self { start, end, points };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        PrepAngle::new(self.start)?;
        PrepAngle::new(self.end)?;
        if self.points < 2 {
            return Err(Error::config(format!(
                "theta grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.start >= self.end {
            return Err(Error::config(format!(
                "theta grid start {} must be below end {}",
                self.start, self.end
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    pub fn theta(&self, k: usize) -> PrepAngle {
        let x = if k + 1 == self.points {
            self.end
        } else {
            self.start + k as f64 * self.step()
        };
        PrepAngle::new(x.min(self.end)).expect("grid points lie between validated endpoints")
    }

    pub fn thetas(&self) -> impl Iterator<Item = PrepAngle> + '_ {
        (0..self.points).map(|k| self.theta(k))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// `theta` is ignored; `duration` is replaced by each of `durations`.
    pub params: ExperimentParams,
    pub grid: ThetaGrid,
    pub durations: Vec<f64>,
    pub engine: Engine,
    pub step: StepControl,
}

impl SweepSpec {
    /// Both figure curves (t = 5 s and t = 50 s) on the default grid.
    pub fn figures(params: ExperimentParams) -> Self {
        Self {
            params,
            grid: ThetaGrid::default(),
            durations: FIGURE_DURATIONS.to_vec(),
            engine: Engine::Analytic,
            step: StepControl::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.grid.validate()?;
        if self.durations.is_empty() {
            return Err(Error::config("sweep needs at least one duration"));
        }
        for &t in &self.durations {
            self.params.with_duration(t)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta_rad: f64,
    pub duration_s: f64,
    #[serde(rename = "T")]
    pub phase: f64,
    #[serde(rename = "P_x_plus")]
    pub p_x_plus: f64,
    #[serde(rename = "P_qm")]
    pub p_qm: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub constants: PhysConstants,
    pub mass: f64,
    pub separation: f64,
    pub grid: ThetaGrid,
    pub engine: Engine,
    /// Step policy of the numeric engine; absent for analytic sweeps.
    pub step: Option<StepControl>,
    /// Largest analytic/numeric probability gap, when both engines ran.
    pub max_engine_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub provenance: Provenance,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn rows_for(&self, duration: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.duration_s == duration)
    }
}

struct RowOutcome {
    row: SweepRow,
    engine_gap: f64,
}

fn numeric_prob_x_plus(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
    control: &StepControl,
) -> Result<f64> {
    let initial = DiscreteState::two_site(params.separation, theta)?;
    let control = StepControl {
        record_every: usize::MAX,
        ..*control
    };
    let traj = integrate(
        &initial,
        &ExternalPotential::Null,
        params.mass,
        constants,
        params.duration,
        &control,
    )?;
    let amps = &traj.last().amplitudes;
    Ok(SpinorAmplitudes {
        up: amps[0],
        down: amps[1],
    }
    .prob_x_plus())
}

fn sweep_row(
    spec: &SweepSpec,
    constants: &PhysConstants,
    duration: f64,
    theta: PrepAngle,
) -> Result<RowOutcome> {
    let params = spec.params.with_duration(duration)?.with_theta(theta);
    let phase = dimensionless_phase(&params, constants);
    let p_qm = prob_x_plus_qm(theta);
    let analytic = || {
        (
            prob_x_plus_at(theta, phase),
            prob_difference_at(theta, phase),
        )
    };
    let (p_x_plus, d, engine_gap) = match spec.engine {
        Engine::Analytic => {
            let (p, d) = analytic();
            (p, d, 0.0)
        }
        Engine::Numeric => {
            let p = numeric_prob_x_plus(theta, &params, constants, &spec.step)?;
            (p, p - p_qm + 0.0, 0.0)
        }
        Engine::Both => {
            let (p, d) = analytic();
            let numeric = numeric_prob_x_plus(theta, &params, constants, &spec.step)?;
            let gap = (p - numeric).abs();
            if gap.is_nan() || gap > ENGINE_AGREEMENT {
                return Err(Error::EngineMismatch {
                    theta: theta.radians(),
                    duration,
                    difference: gap,
                });
            }
            (p, d, gap)
        }
    };
    Ok(RowOutcome {
        row: SweepRow {
            theta_rad: theta.radians(),
            duration_s: duration,
            phase,
            p_x_plus,
            p_qm,
            d,
        },
        engine_gap,
    })
}

/// Tabulates `P_x+`, `P_x+^QM` and `D` over the θ grid for every duration.
///
/// Rows are ordered by ascending duration, then θ, independent of how the
/// work is scheduled.
pub fn run_sweep(spec: &SweepSpec, constants: &PhysConstants) -> Result<SweepResult> {
    spec.validate()?;
    constants.validate()?;
    let mut durations = spec.durations.clone();
    durations.sort_by(f64::total_cmp);
    durations.dedup();

    let points = spec.grid.points;
    let outcomes = (0..durations.len() * points)
        .into_par_iter()
        .map(|i| {
            sweep_row(
                spec,
                constants,
                durations[i / points],
                spec.grid.theta(i % points),
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let max_engine_gap = (spec.engine == Engine::Both)
        .then(|| outcomes.iter().map(|o| o.engine_gap).fold(0.0, f64::max));
    Ok(SweepResult {
        provenance: Provenance {
            constants: *constants,
            mass: spec.params.mass,
            separation: spec.params.separation,
            grid: spec.grid,
            engine: spec.engine,
            step: (spec.engine != Engine::Analytic).then_some(spec.step),
            max_engine_gap,
        },
        rows: outcomes.into_iter().map(|o| o.row).collect(),
    })
}

/// [`run_sweep`] on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(
    spec: &SweepSpec,
    constants: &PhysConstants,
    workers: usize,
) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| run_sweep(spec, constants))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub theta: f64,
    pub d: f64,
    pub is_maximum: bool,
}

/// Local extrema of `D(θ)` strictly inside `(lo, hi)`, located from sign
/// changes of `∂D/∂θ` on a grid of `points` and refined by bisection.
pub fn d_extrema(phase: f64, lo: f64, hi: f64, points: usize) -> Vec<Extremum> {
    assert!(
        points >= 2 && lo < hi,
        "need at least two grid points on a non-empty interval"
    );
    let step = (hi - lo) / (points - 1) as f64;
    let at = |k: usize| {
        if k + 1 == points {
            hi
        } else {
            lo + k as f64 * step
        }
    };
    let slope = |x: f64| prob_difference_slope_at(x, phase);
    let d = |x: f64| {
        let s = (0.5 * phase * x.cos()).sin();
        -x.sin() * s * s
    };

    // Exact zeros of the slope are skipped; a sign flip is bracketed between
    // the last nonzero-slope point and the current one.
    let mut out = Vec::new();
    let mut prev_x = at(0);
    let mut prev_s = slope(prev_x);
    for k in 1..points {
        let x = at(k);
        let s = slope(x);
        if s == 0.0 {
            continue;
        }
        if prev_s != 0.0 && (prev_s > 0.0) != (s > 0.0) {
            let rising_left = prev_s > 0.0;
            let (mut a, mut b) = (prev_x, x);
            loop {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let sm = slope(m);
                if sm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (sm > 0.0) == rising_left {
                    a = m;
                } else {
                    b = m;
                }
            }
            let theta = 0.5 * (a + b);
            out.push(Extremum {
                theta,
                d: d(theta),
                is_maximum: rising_left,
            });
        }
        prev_x = x;
        prev_s = s;
    }
    out
}

/// Interior local extrema of `D` on `(lo, hi)`.
pub fn count_d_extrema(phase: f64, lo: f64, hi: f64, points: usize) -> usize {
    d_extrema(phase, lo, hi, points).len()
}

/// Operating conditions of the Yb setup. Carried as context; not modeled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetupContext {
    pub internal_temperature_k: f64,
    pub environment_temperature_k: f64,
    pub pressure_pa: f64,
}

impl Default for SetupContext {
    fn default() -> Self {
        Self {
            internal_temperature_k: 0.15,
            environment_temperature_k: 0.5,
            pressure_pa: 1e-15,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub params: ExperimentParams,
    pub constants: PhysConstants,
    #[serde(rename = "T")]
    pub phase: f64,
    pub kinetic_ratio: f64,
    pub max_abs_d: f64,
    pub argmax_theta: f64,
    pub kinetic_negligible: bool,
    pub context: SetupContext,
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Setup summary: dimensionless phase, kinetic-term size and the largest
/// deviation `|D|` over θ with its location.
pub fn feasibility(params: &ExperimentParams, constants: &PhysConstants) -> FeasibilityReport {
    let phase = dimensionless_phase(params, constants);
    let kinetic_ratio = kinetic_potential_ratio(params, constants);
    let abs_d =
        |x: f64| prob_difference_at(PrepAngle::new(x.clamp(0.0, TAU)).unwrap(), phase).abs();

    let grid = ThetaGrid {
        start: 0.0,
        end: TAU,
        points: FEASIBILITY_GRID_POINTS,
    };
    let (mut best_k, mut best) = (0, abs_d(0.0));
    for k in 1..grid.points {
        let v = abs_d(grid.theta(k).radians());
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let (mut argmax, mut max_abs_d) = (grid.theta(best_k).radians(), best);
    if best > 0.0 {
        let lo = grid.theta(best_k.saturating_sub(1)).radians();
        let hi = grid.theta((best_k + 1).min(grid.points - 1)).radians();
        let x = golden_section_max(abs_d, lo, hi, ARGMAX_TOLERANCE);
        let v = abs_d(x);
        if v >= best {
            argmax = x;
            max_abs_d = v;
        }
    }

    FeasibilityReport {
        params: *params,
        constants: *constants,
        phase,
        kinetic_ratio,
        max_abs_d,
        argmax_theta: argmax,
        kinetic_negligible: kinetic_ratio < KINETIC_NEGLIGIBLE_BELOW,
        context: SetupContext::default(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub theta: f64,
    #[serde(rename = "T")]
    pub phase: f64,
    /// Max over samples and both arms of |analytic − numeric| amplitude.
    pub max_discrepancy: f64,
    pub steps: u64,
    pub max_norm_drift: f64,
    pub max_population_drift: f64,
}

/// Integrates the split two-site state numerically and compares every
/// sample with the closed-form arm amplitudes.
pub fn consistency_run(
    params: &ExperimentParams,
    constants: &PhysConstants,
    theta: PrepAngle,
) -> Result<ConsistencyReport> {
    consistency_run_with(params, constants, theta, &StepControl::default())
}

pub fn consistency_run_with(
    params: &ExperimentParams,
    constants: &PhysConstants,
    theta: PrepAngle,
    control: &StepControl,
) -> Result<ConsistencyReport> {
    params.validate()?;
    constants.validate()?;
    let initial = DiscreteState::two_site(params.separation, theta)?;
    let traj = integrate(
        &initial,
        &ExternalPotential::Null,
        params.mass,
        constants,
        params.duration,
        control,
    )?;
    let frequency = gravitational_frequency(params, constants);
    let max_discrepancy = traj
        .samples()
        .iter()
        .map(|s| {
            let exact = evolve_split_at(theta, frequency * s.time);
            (s.amplitudes[0] - exact.up)
                .norm()
                .max((s.amplitudes[1] - exact.down).norm())
        })
        .fold(0.0, f64::max);
    Ok(ConsistencyReport {
        theta: theta.radians(),
        phase: dimensionless_phase(params, constants),
        max_discrepancy,
        steps: traj.meta().steps,
        max_norm_drift: traj.meta().max_norm_drift,
        max_population_drift: traj.meta().max_population_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn yb(duration: f64) -> ExperimentParams {
        ExperimentParams::yb_microcrystal(duration).unwrap()
    }

    fn th(x: f64) -> PrepAngle {
        PrepAngle::new(x).unwrap()
    }

    #[test]
    fn default_grid_is_half_degree() {
        let g = ThetaGrid::default();
        assert_relative_eq!(g.step().to_degrees(), 0.5, max_relative = 1e-14);
        assert_eq!(g.theta(0).radians(), 0.0);
        assert_eq!(g.theta(720).radians(), TAU);
        assert!(g.thetas().all(|x| x.radians() <= TAU));
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(ThetaGrid::new(0.0, 1.0, 1).is_err());
        assert!(ThetaGrid::new(1.0, 1.0, 5).is_err());
        assert!(ThetaGrid::new(2.0, 1.0, 5).is_err());
        assert!(ThetaGrid::new(0.0, 7.0, 5).is_err());
        let mut spec = SweepSpec::figures(yb(0.0));
        spec.durations.clear();
        assert!(run_sweep(&spec, &PhysConstants::codata()).is_err());
        spec.durations = vec![-1.0];
        assert!(run_sweep(&spec, &PhysConstants::codata()).is_err());
    }

    #[test]
    fn paper_sweep_zeros_and_bounds() {
        let c = PhysConstants::codata();
        let res = run_sweep(&SweepSpec::figures(yb(0.0)), &c).unwrap();
        assert_eq!(res.rows.len(), 2 * 721);
        assert_eq!(res.rows[0].duration_s, 5.0);
        assert_eq!(res.rows[721].duration_s, 50.0);
        for row in &res.rows {
            assert!((0.0..=1.0).contains(&row.p_x_plus));
            assert!(row.d.abs() <= row.theta_rad.sin().abs());
            assert!((row.d - (row.p_x_plus - row.p_qm)).abs() < 1e-12);
        }
        for t in FIGURE_DURATIONS {
            let rows: Vec<_> = res.rows_for(t).collect();
            for k in [0, 180, 360] {
                assert!(rows[k].d.abs() < 1e-12, "D at θ = {}", rows[k].theta_rad);
            }
        }
    }

    #[test]
    fn zero_duration_sweep_has_no_deviation() {
        let mut spec = SweepSpec::figures(yb(0.0));
        spec.durations = vec![0.0];
        let res = run_sweep(&spec, &PhysConstants::codata()).unwrap();
        assert!(res.rows.iter().all(|r| r.d == 0.0 && r.phase == 0.0));
    }

    #[test]
    fn single_row_known_deviation() {
        let c = PhysConstants::codata();
        let p = yb(1.0);
        // T = π/√2 makes T·cos(π/4)/2 = π/4
        let t = PI / SQRT_2 / gravitational_frequency(&p, &c);
        let spec = SweepSpec {
            params: p,
            grid: ThetaGrid::new(FRAC_PI_4, FRAC_PI_2, 2).unwrap(),
            durations: vec![t],
            engine: Engine::Both,
            step: StepControl::default(),
        };
        let res = run_sweep(&spec, &c).unwrap();
        assert_relative_eq!(res.rows[0].d, -SQRT_2 / 4.0, max_relative = 1e-12);
        assert!(res.provenance.max_engine_gap.unwrap() < ENGINE_AGREEMENT);
    }

    #[test]
    fn numeric_engine_tracks_analytic() {
        let c = PhysConstants::codata();
        let mut spec = SweepSpec::figures(yb(0.0));
        spec.grid = ThetaGrid::new(0.0, PI, 7).unwrap();
        spec.durations = vec![5.0];
        let analytic = run_sweep(&spec, &c).unwrap();
        spec.engine = Engine::Numeric;
        let numeric = run_sweep(&spec, &c).unwrap();
        for (a, n) in analytic.rows.iter().zip(&numeric.rows) {
            assert!((a.p_x_plus - n.p_x_plus).abs() < 1e-9);
            assert!((a.d - n.d).abs() < 1e-9);
        }
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let c = PhysConstants::codata();
        let spec = SweepSpec::figures(yb(0.0));
        let one = run_sweep_with_workers(&spec, &c, 1).unwrap();
        let four = run_sweep_with_workers(&spec, &c, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn extrema_match_dense_sampling() {
        let c = PhysConstants::codata();
        let phase = dimensionless_phase(&yb(50.0), &c);
        let found = d_extrema(phase, 0.0, FRAC_PI_2, 2000);
        // independent count of discrete local extrema of D on 10⁵ points
        let n = 100_000;
        let vals: Vec<f64> = (1..n)
            .map(|k| {
                let x = k as f64 * FRAC_PI_2 / n as f64;
                -x.sin() * (0.5 * phase * x.cos()).sin().powi(2)
            })
            .collect();
        let brute = vals
            .windows(3)
            .filter(|w| (w[1] > w[0] && w[1] > w[2]) || (w[1] < w[0] && w[1] < w[2]))
            .count();
        assert_eq!(found.len(), brute);
        assert!(found.len() >= (phase / TAU).floor() as usize);
        for e in &found {
            assert!(prob_difference_slope_at(e.theta, phase).abs() < 1e-8);
        }
    }

    #[test]
    fn extrema_count_grows_with_phase() {
        let counts: Vec<usize> = [1.0, 5.0, 12.0, 40.0]
            .iter()
            .map(|&p| count_d_extrema(p, 0.0, FRAC_PI_2, 4000))
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
        assert!(counts[3] > counts[0]);
    }

    #[test]
    fn feasibility_for_yb_setup() {
        let c = PhysConstants::codata();
        let r = feasibility(&yb(1.0), &c);
        assert_relative_eq!(r.kinetic_ratio, 2.135_776e-14, max_relative = 1e-12);
        assert!(r.kinetic_negligible);
        assert_relative_eq!(r.phase, 0.253_156_774_812_615_7, max_relative = 1e-13);
        assert!(r.max_abs_d > 0.0 && r.max_abs_d <= 1.0);
        assert_relative_eq!(
            r.max_abs_d,
            prob_difference_at(th(r.argmax_theta), r.phase).abs(),
            max_relative = 1e-15
        );
        assert!(prob_difference_slope_at(r.argmax_theta, r.phase).abs() < 1e-8);
    }

    #[test]
    fn feasibility_at_zero_duration() {
        let r = feasibility(&yb(0.0), &PhysConstants::codata());
        assert_eq!((r.phase, r.kinetic_ratio, r.max_abs_d), (0.0, 0.0, 0.0));
    }

    #[test]
    fn feasibility_at_planck_mass() {
        let c = PhysConstants::codata();
        let p = ExperimentParams::new(crate::units::planck_mass(&c), 1e-6, 1.0, 0.0).unwrap();
        let r = feasibility(&p, &c);
        assert!((r.phase - 3e14).abs() / 3e14 < 0.01);
        assert!(!r.kinetic_negligible);
    }

    #[test]
    fn feasibility_agrees_with_sweep_maximum() {
        let c = PhysConstants::codata();
        for t in FIGURE_DURATIONS {
            let r = feasibility(&yb(t), &c);
            let mut spec = SweepSpec::figures(yb(0.0));
            spec.durations = vec![t];
            let sweep_max = run_sweep(&spec, &c)
                .unwrap()
                .rows
                .iter()
                .map(|row| row.d.abs())
                .fold(0.0, f64::max);
            assert!(r.max_abs_d >= sweep_max);
            // |D| changes by at most (1 + T/2)·Δθ per grid step
            let slack = (1.0 + r.phase / 2.0) * ThetaGrid::default().step();
            assert!(r.max_abs_d - sweep_max <= slack);
        }
    }

    #[test]
    fn consistency_cases() {
        let c = PhysConstants::codata();
        let r = consistency_run(&yb(5.0), &c, th(0.0)).unwrap();
        assert!(r.max_discrepancy < 1e-12);
        let r = consistency_run(&yb(5.0), &c, th(FRAC_PI_4)).unwrap();
        assert!(r.max_discrepancy < 1e-9);
        let r = consistency_run(&yb(5.0), &c.without_gravity(), th(FRAC_PI_4)).unwrap();
        assert_eq!(r.max_discrepancy, 0.0);
    }
}
