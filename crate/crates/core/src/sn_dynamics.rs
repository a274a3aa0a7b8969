//! Discrete N-site Schrödinger–Newton dynamics.
//!
//! A particle confined to `N` sites `r_j` carries amplitudes `ψ_j`. Each
//! site feels the gravitational pull of the probability mass sitting on the
//! *other* sites,
//!
//! ```text
//! U_j = −G m² Σ_{j' ≠ j} |ψ_j'|² / |r_j − r_j'|
//! ```
//!
//! and evolves as `iħ ∂ψ_j/∂t = (V_j(t) + U_j) ψ_j`. There is no hopping
//! between sites, so the evolution is diagonal: populations never change and
//! `U_j` is constant in time. That makes a closed-form propagator available
//! ([`exact_potential_solution`]) which the RK4 integrator ([`integrate`])
//! is checked against.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{PhysConstants, PrepAngle};

pub type Position = [f64; 3];

/// Sites closer than this (m) are treated as coincident.
pub const MIN_SITE_DISTANCE: f64 = 1e-12;

/// Allowed deviation of `Σ|ψ_j|²` from one for a valid state.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Default bound on the phase any site may accumulate in one RK4 step, rad.
pub const DEFAULT_MAX_PHASE_STEP: f64 = 1e-3;

/// Positions and amplitudes of a particle spread over discrete sites.
///
/// The particle mass is not part of the state; it is passed to whatever
/// evaluates the gravitational potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteState {
    positions: Vec<Position>,
    amplitudes: Vec<Complex64>,
    time: f64,
}

impl DiscreteState {
    pub fn new(positions: Vec<Position>, amplitudes: Vec<Complex64>, time: f64) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::config("a discrete state needs at least one site"));
        }
        if positions.len() != amplitudes.len() {
            return Err(Error::config(format!(
                "{} positions but {} amplitudes",
                positions.len(),
                amplitudes.len()
            )));
        }
        if !time.is_finite() {
            return Err(Error::invariant("time", time, "must be finite"));
        }
        if positions.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::config("site positions must be finite"));
        }
        inverse_distances(&positions)?;
        let norm = norm_sqr(&amplitudes);
        if !norm.is_finite() || (1.0 - norm).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            positions,
            amplitudes,
            time,
        })
    }

    /// Like [`DiscreteState::new`] but rescales the amplitudes to unit norm first.
    pub fn normalized(
        positions: Vec<Position>,
        mut amplitudes: Vec<Complex64>,
        time: f64,
    ) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm: norm * norm });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(positions, amplitudes, time)
    }

    /// The split interferometer state `cos(θ/2)|r₁⟩ + sin(θ/2)|r₂⟩` with the
    /// arms placed on the x axis, `separation` apart, at `t = 0`.
    pub fn two_site(separation: f64, theta: PrepAngle) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::invariant(
                "separation",
                separation,
                "must be finite and > 0",
            ));
        }
        let (c, s) = theta.half_angle_cos_sin();
        Self::new(
            vec![[0.0; 3], [separation, 0.0, 0.0]],
            vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
            0.0,
        )
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Positions scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let positions = self
            .positions
            .iter()
            .map(|p| p.map(|x| x * factor))
            .collect();
        Self::new(positions, self.amplitudes.clone(), self.time)
    }

    // Evolved states keep the geometry of a validated state; their norm
    // drift is reported by the integrator rather than rejected here.
    fn evolved(&self, amplitudes: Vec<Complex64>, time: f64) -> Self {
        Self {
            positions: self.positions.clone(),
            amplitudes,
            time,
        }
    }
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(Complex64::norm_sqr).sum()
}

fn distance(a: &Position, b: &Position) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Row-major `N×N` table of `1/|r_j − r_j'|` with a zero diagonal.
fn inverse_distances(positions: &[Position]) -> Result<Vec<f64>> {
    let n = positions.len();
    let mut inv = vec![0.0; n * n];
    for j in 0..n {
        for k in (j + 1)..n {
            let r = distance(&positions[j], &positions[k]);
            if r.is_nan() || r < MIN_SITE_DISTANCE {
                return Err(Error::DegenerateGeometry {
                    first: j,
                    second: k,
                    distance: r,
                    min: MIN_SITE_DISTANCE,
                });
            }
            inv[j * n + k] = 1.0 / r;
            inv[k * n + j] = 1.0 / r;
        }
    }
    Ok(inv)
}

/// `Σ_{j'≠j} P_j' / |r_j − r_j'|` for every site, in 1/m.
fn weighted_inverse_distance(inv: &[f64], probs: &[f64], out: &mut [f64]) {
    let n = probs.len();
    for (j, o) in out.iter_mut().enumerate() {
        *o = inv[j * n..(j + 1) * n]
            .iter()
            .zip(probs)
            .map(|(w, p)| w * p)
            .sum();
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::invariant("mass", mass, "must be finite and > 0"))
    }
}

/// `P_j = |ψ_j|²`.
pub fn site_probabilities(state: &DiscreteState) -> Vec<f64> {
    state.amplitudes.iter().map(Complex64::norm_sqr).collect()
}

/// Gravitational self-interaction energy of every site, in J.
///
/// Each component is `≤ 0`; a site does not interact with itself.
pub fn self_potential(
    state: &DiscreteState,
    mass: f64,
    constants: &PhysConstants,
) -> Result<Vec<f64>> {
    check_mass(mass)?;
    let inv = inverse_distances(&state.positions)?;
    let probs = site_probabilities(state);
    let mut u = vec![0.0; state.len()];
    weighted_inverse_distance(&inv, &probs, &mut u);
    let coupling = constants.g * mass * mass;
    for x in &mut u {
        *x *= -coupling;
    }
    Ok(u)
}

/// Closed-form potential-only evolution to absolute time `t`:
/// `ψ_j(t) = ψ_j(t₀)·exp(−i U_j (t − t₀)/ħ)`.
///
/// Valid without an external potential; populations are untouched.
pub fn exact_potential_solution(
    initial: &DiscreteState,
    mass: f64,
    constants: &PhysConstants,
    t: f64,
) -> Result<DiscreteState> {
    if !t.is_finite() {
        return Err(Error::invariant("t", t, "must be finite"));
    }
    let u = self_potential(initial, mass, constants)?;
    let elapsed = t - initial.time;
    if elapsed == 0.0 {
        return Ok(initial.evolved(initial.amplitudes.clone(), t));
    }
    let amplitudes = initial
        .amplitudes
        .iter()
        .zip(&u)
        .map(|(a, &uj)| a * Complex64::from_polar(1.0, -(uj / constants.hbar) * elapsed))
        .collect();
    Ok(initial.evolved(amplitudes, t))
}

/// Real, diagonal external potential `V_j(t)` in J.
#[derive(Clone, Default)]
pub enum ExternalPotential {
    #[default]
    Null,
    /// Time-independent per-site values.
    Static(Vec<f64>),
    /// Per-site values as a function of SI time.
    Dynamic(Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>),
}

impl fmt::Debug for ExternalPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Null => f.write_str("Null"),
            Self::Static(v) => f.debug_tuple("Static").field(v).finish(),
            Self::Dynamic(_) => f.write_str("Dynamic(..)"),
        }
    }
}

impl ExternalPotential {
    pub fn dynamic(f: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        Self::Dynamic(Arc::new(f))
    }

    fn eval_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        match self {
            Self::Null => out.fill(0.0),
            Self::Static(v) => out.copy_from_slice(v),
            Self::Dynamic(f) => {
                let v = f(t);
                if v.len() != out.len() {
                    return Err(Error::config(format!(
                        "external potential returned {} values for {} sites",
                        v.len(),
                        out.len()
                    )));
                }
                out.copy_from_slice(&v);
            }
        }
        if out.iter().any(|x| !x.is_finite()) {
            return Err(Error::config(format!(
                "external potential is not finite at t = {t}"
            )));
        }
        Ok(())
    }

    fn check_sites(&self, n: usize) -> Result<()> {
        match self {
            Self::Static(v) if v.len() != n => Err(Error::config(format!(
                "external potential has {} values for {n} sites",
                v.len()
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum StepSize {
    /// Largest phase (rad) any site may gain per step, judged from the
    /// energies at the initial time.
    MaxPhase(f64),
    /// Fixed step in seconds.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepControl {
    pub size: StepSize,
    /// Keep every n-th step in the trajectory; the final state is always kept.
    pub record_every: usize,
    pub max_steps: u64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            size: StepSize::MaxPhase(DEFAULT_MAX_PHASE_STEP),
            record_every: 1,
            max_steps: 100_000_000,
        }
    }
}

impl StepControl {
    pub fn record_every(self, record_every: usize) -> Self {
        Self {
            record_every,
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        let (name, value) = match self.size {
            StepSize::MaxPhase(p) => ("max phase step", p),
            StepSize::Fixed(dt) => ("step", dt),
        };
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::config(format!(
                "{name} must be positive and finite, got {value}"
            )));
        }
        if self.record_every == 0 {
            return Err(Error::config("record_every must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub time: f64,
    pub amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrationMeta {
    pub integrator: &'static str,
    /// Step length in seconds.
    pub step: f64,
    pub steps: u64,
    /// Largest `|1 − Σ|ψ_j|²|` seen over all steps.
    pub max_norm_drift: f64,
    /// Largest `| |ψ_j(t)|² − |ψ_j(t₀)|² |` over all steps and sites.
    pub max_population_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    positions: Vec<Position>,
    samples: Vec<Sample>,
    meta: IntegrationMeta,
}

impl Trajectory {
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn meta(&self) -> &IntegrationMeta {
        &self.meta
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory holds at least the initial sample")
    }

    pub fn final_state(&self) -> DiscreteState {
        let last = self.last();
        DiscreteState {
            positions: self.positions.clone(),
            amplitudes: last.amplitudes.clone(),
            time: last.time,
        }
    }
}

/// Integrates `iħ ∂ψ_j/∂t = (V_j(t) + U_j[ψ]) ψ_j` with classic RK4 from
/// `initial.time` to `t_final`.
///
/// The self-potential is re-evaluated from the current amplitudes at every
/// stage, so this route does not rely on population freezing. Time is
/// rescaled internally by `ħ/E` with `E` the largest initial site energy.
/// No renormalization is applied; drift is reported in the metadata.
pub fn integrate(
    initial: &DiscreteState,
    external: &ExternalPotential,
    mass: f64,
    constants: &PhysConstants,
    t_final: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    check_mass(mass)?;
    control.validate()?;
    let n = initial.len();
    external.check_sites(n)?;
    if !(t_final.is_finite() && t_final >= initial.time) {
        return Err(Error::config(format!(
            "t_final = {t_final} must be finite and not before the initial time {}",
            initial.time
        )));
    }
    let inv = inverse_distances(&initial.positions)?;
    let t0 = initial.time;
    let duration = t_final - t0;
    let coupling = constants.g * mass * mass;
    let hbar = constants.hbar;

    let p0 = site_probabilities(initial);
    let mut u0 = vec![0.0; n];
    weighted_inverse_distance(&inv, &p0, &mut u0);
    let mut v0 = vec![0.0; n];
    external.eval_into(t0, &mut v0)?;
    let energy_scale = u0
        .iter()
        .zip(&v0)
        .map(|(&w, &v)| {
            let u = -coupling * w;
            u.abs().max((u + v).abs())
        })
        .fold(0.0, f64::max);

    let mut meta = IntegrationMeta {
        integrator: "rk4",
        step: 0.0,
        steps: 0,
        max_norm_drift: (1.0 - norm_sqr(&initial.amplitudes)).abs(),
        max_population_drift: 0.0,
    };
    let mut samples = vec![Sample {
        time: t0,
        amplitudes: initial.amplitudes.clone(),
    }];
    if duration == 0.0 {
        return Ok(Trajectory {
            positions: initial.positions.clone(),
            samples,
            meta,
        });
    }

    let steps_f = match control.size {
        StepSize::Fixed(dt) => (duration / dt).ceil(),
        StepSize::MaxPhase(phi) if energy_scale > 0.0 => (duration * energy_scale / hbar / phi).ceil(),
        StepSize::MaxPhase(_) => match external {
            ExternalPotential::Dynamic(_) => {
                return Err(Error::config(
                    "zero initial energy with a time-dependent potential: a phase-based step is undefined, use a fixed step",
                ))
            }
            // Nothing evolves: one step covers the whole interval.
            _ => 1.0,
        },
    }
    .max(1.0);
    if steps_f.is_nan() || steps_f > control.max_steps as f64 {
        return Err(Error::config(format!(
            "integration would need {steps_f:e} steps (limit {})",
            control.max_steps
        )));
    }
    let steps = steps_f as u64;

    // Dimensionless time τ = (t − t₀)·E/ħ.
    let energy_ref = if energy_scale > 0.0 {
        energy_scale
    } else {
        hbar / duration
    };
    let time_unit = hbar / energy_ref;
    let tau_total = duration / time_unit;
    let h = tau_total / steps as f64;
    let dt = duration / steps as f64;
    let scaled_coupling = coupling / energy_ref;
    meta.step = dt;

    let mut rhs = Rhs {
        inv: &inv,
        external,
        scaled_coupling,
        energy_ref,
        probs: vec![0.0; n],
        weights: vec![0.0; n],
        v: vec![0.0; n],
    };

    let mut psi = initial.amplitudes.clone();
    let mut k1 = vec![Complex64::default(); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();

    for step in 1..=steps {
        let t_start = t0 + (step - 1) as f64 * dt;
        let t_mid = t_start + 0.5 * dt;
        let t_end = if step == steps {
            t_final
        } else {
            t0 + step as f64 * dt
        };

        rhs.eval(t_start, &psi, &mut k1)?;
        axpy(&psi, 0.5 * h, &k1, &mut tmp);
        rhs.eval(t_mid, &tmp, &mut k2)?;
        axpy(&psi, 0.5 * h, &k2, &mut tmp);
        rhs.eval(t_mid, &tmp, &mut k3)?;
        axpy(&psi, h, &k3, &mut tmp);
        rhs.eval(t_end, &tmp, &mut k4)?;
        for j in 0..n {
            psi[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0);
        }

        meta.max_norm_drift = meta.max_norm_drift.max((1.0 - norm_sqr(&psi)).abs());
        let pop = psi
            .iter()
            .zip(&p0)
            .map(|(a, p)| (a.norm_sqr() - p).abs())
            .fold(0.0, f64::max);
        meta.max_population_drift = meta.max_population_drift.max(pop);

        if step == steps || step % control.record_every as u64 == 0 {
            samples.push(Sample {
                time: t_end,
                amplitudes: psi.clone(),
            });
        }
    }
    meta.steps = steps;

    Ok(Trajectory {
        positions: initial.positions.clone(),
        samples,
        meta,
    })
}

fn axpy(x: &[Complex64], a: f64, y: &[Complex64], out: &mut [Complex64]) {
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + yi * a;
    }
}

/// `dψ_j/dτ = −i (U_j[ψ] + V_j(t)) ψ_j / E`
struct Rhs<'a> {
    inv: &'a [f64],
    external: &'a ExternalPotential,
    scaled_coupling: f64,
    energy_ref: f64,
    probs: Vec<f64>,
    weights: Vec<f64>,
    v: Vec<f64>,
}

impl Rhs<'_> {
    fn eval(&mut self, t: f64, psi: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        for (p, a) in self.probs.iter_mut().zip(psi) {
            *p = a.norm_sqr();
        }
        weighted_inverse_distance(self.inv, &self.probs, &mut self.weights);
        self.external.eval_into(t, &mut self.v)?;
        for j in 0..psi.len() {
            let energy = -self.scaled_coupling * self.weights[j] + self.v[j] / self.energy_ref;
            // −i·E·ψ
            out[j] = Complex64::new(energy * psi[j].im, -energy * psi[j].re);
        }
        Ok(())
    }
}
