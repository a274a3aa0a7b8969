//! Closed-form treatment of the two-arm spin-1/2 interferometer.
//!
//! The spin is rotated to `cos(θ/2)|↑⟩ + sin(θ/2)|↓⟩`, split into
//! `|r₁↑⟩`/`|r₂↓⟩`, left to accumulate gravitational self-interaction phases
//! for a time `t`, recombined, and finally measured along x. Split and
//! recombination are instantaneous ideal maps.
//!
//! Observables depend on mass, separation and duration only through the
//! dimensionless phase `T = G m² t/(ħ d)`, so everything here is evaluated in
//! terms of `T`. The `*_at` functions take `T` directly.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::units::{
    dimensionless_phase, gravitational_frequency, ExperimentParams, PhysConstants, PrepAngle,
};

/// Spin state `up|↑⟩ + down|↓⟩`. While split, `up` multiplies `|r₁↑⟩` and
/// `down` multiplies `|r₂↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorAmplitudes {
    pub up: Complex64,
    pub down: Complex64,
}

impl SpinorAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// Amplitudes on `|→⟩ = (|↑⟩ + |↓⟩)/√2` and `|←⟩ = (|↑⟩ − |↓⟩)/√2`.
    pub fn x_basis(&self) -> (Complex64, Complex64) {
        (
            (self.up + self.down) * FRAC_1_SQRT_2,
            (self.up - self.down) * FRAC_1_SQRT_2,
        )
    }

    /// `|⟨→|α⟩|²`
    pub fn prob_x_plus(&self) -> f64 {
        self.x_basis().0.norm_sqr()
    }
}

/// Phase frequencies of the two arms, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    /// Frequency picked up by the `|r₂↓⟩` arm, driven by the weight on `r₁`.
    pub omega1: f64,
    /// Frequency picked up by the `|r₁↑⟩` arm, driven by the weight on `r₂`.
    pub omega2: f64,
}

/// Spin rotation from `|↑⟩`.
pub fn prepare(theta: PrepAngle) -> SpinorAmplitudes {
    let (c, s) = theta.half_angle_cos_sin();
    SpinorAmplitudes {
        up: Complex64::new(c, 0.0),
        down: Complex64::new(s, 0.0),
    }
}

pub fn phase_frequencies(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
) -> PhasePair {
    let scale = gravitational_frequency(params, constants);
    let (c, s) = theta.half_angle_cos_sin();
    PhasePair {
        omega1: scale * c * c,
        omega2: scale * s * s,
    }
}

/// `Δω = ω₁ − ω₂ = (G m²/ħd)·cos θ`
pub fn delta_omega(theta: PrepAngle, params: &ExperimentParams, constants: &PhysConstants) -> f64 {
    gravitational_frequency(params, constants) * theta.radians().cos()
}

/// Recombined state after accumulating dimensionless phase `phase`:
/// `up = cos(θ/2)·e^{iT sin²(θ/2)}`, `down = sin(θ/2)·e^{iT cos²(θ/2)}`.
pub fn evolve_split_at(theta: PrepAngle, phase: f64) -> SpinorAmplitudes {
    let (c, s) = theta.half_angle_cos_sin();
    SpinorAmplitudes {
        up: Complex64::from_polar(c, phase * s * s),
        down: Complex64::from_polar(s, phase * c * c),
    }
}

/// Recombined state after `params.duration` seconds split.
pub fn evolve_split(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
) -> SpinorAmplitudes {
    evolve_split_at(theta, dimensionless_phase(params, constants))
}

/// `P_x+ = 1/2 + (1/2)·sin θ·cos(T cos θ)`
pub fn prob_x_plus_at(theta: PrepAngle, phase: f64) -> f64 {
    let th = theta.radians();
    0.5 + 0.5 * th.sin() * (phase * th.cos()).cos()
}

pub fn prob_x_plus(theta: PrepAngle, params: &ExperimentParams, constants: &PhysConstants) -> f64 {
    prob_x_plus_at(theta, dimensionless_phase(params, constants))
}

/// Same probability obtained by projecting the evolved spinor on `|→⟩`.
pub fn prob_x_plus_projected(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
) -> f64 {
    evolve_split(theta, params, constants).prob_x_plus()
}

/// Standard quantum-mechanics prediction (`G → 0`): `1/2 + (1/2)·sin θ`.
pub fn prob_x_plus_qm(theta: PrepAngle) -> f64 {
    0.5 + 0.5 * theta.radians().sin()
}

/// `D = P_x+ − P_x+^QM = −sin θ·sin²(T cos θ / 2)`
pub fn prob_difference_at(theta: PrepAngle, phase: f64) -> f64 {
    let th = theta.radians();
    let s = (0.5 * phase * th.cos()).sin();
    // + 0.0 folds −0 into +0
    -th.sin() * s * s + 0.0
}

pub fn prob_difference(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
) -> f64 {
    prob_difference_at(theta, dimensionless_phase(params, constants))
}

/// `D` evaluated as the difference of the two probabilities.
pub fn prob_difference_subtractive(
    theta: PrepAngle,
    params: &ExperimentParams,
    constants: &PhysConstants,
) -> f64 {
    prob_x_plus(theta, params, constants) - prob_x_plus_qm(theta)
}

/// `∂D/∂θ = −cos θ·sin²(T cos θ/2) + (T/2)·sin²θ·sin(T cos θ)`
pub fn prob_difference_slope_at(theta: f64, phase: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let a = (0.5 * phase * c).sin();
    -c * a * a + 0.5 * phase * s * s * (phase * c).sin()
}
