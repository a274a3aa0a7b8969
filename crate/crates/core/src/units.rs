//! Physical constants, experiment parameters and the derived scales that
//! control the interferometer dynamics.
//!
//! All quantities are SI at the API boundary. Constants are plain values
//! handed to every computation, so callers can switch gravity off (`G = 0`)
//! to recover standard quantum mechanics.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 Newtonian constant of gravitation, m³·kg⁻¹·s⁻².
pub const CODATA_G: f64 = 6.674_30e-11;
/// CODATA 2018 reduced Planck constant, J·s.
pub const CODATA_HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (exact), m·s⁻¹.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Yb microcrystal mass, kg.
pub const YB_MASS: f64 = 1e-14;
/// Spatial separation of the two interferometer arms for the Yb setup, m.
pub const YB_SEPARATION: f64 = 250e-6;

/// Fundamental constants used by every computation.
///
/// `g` may be zero (the standard quantum-mechanics limit); `hbar` and `c`
/// must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysConstants {
    #[serde(rename = "G")]
    pub g: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::codata()
    }
}

impl PhysConstants {
    pub const fn codata() -> Self {
        Self {
            g: CODATA_G,
            hbar: CODATA_HBAR,
            c: SPEED_OF_LIGHT,
        }
    }

    pub fn new(g: f64, hbar: f64, c: f64) -> Result<Self> {
        let constants = Self { g, hbar, c };
        constants.validate()?;
        Ok(constants)
    }

    /// Same constants with gravity switched off.
    pub fn without_gravity(self) -> Self {
        Self { g: 0.0, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::invariant("G", self.g, "must be finite and >= 0"));
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::invariant(
                "hbar",
                self.hbar,
                "must be finite and > 0",
            ));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::invariant("c", self.c, "must be finite and > 0"));
        }
        Ok(())
    }
}

/// Reduced Planck mass `sqrt(ħc/G)` in kg. Infinite when `G = 0`.
pub fn planck_mass(constants: &PhysConstants) -> f64 {
    (constants.hbar * constants.c / constants.g).sqrt()
}

/// Preparation angle of the spin rotation, validated to lie in `[0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct PrepAngle(f64);

impl PrepAngle {
    pub const ZERO: PrepAngle = PrepAngle(0.0);

    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=TAU).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::invariant("theta", theta, "must lie in [0, 2π]"))
        }
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// `(cos(θ/2), sin(θ/2))`
    #[inline]
    pub fn half_angle_cos_sin(self) -> (f64, f64) {
        let (s, c) = (0.5 * self.0).sin_cos();
        (c, s)
    }
}

impl<'de> Deserialize<'de> for PrepAngle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let theta = f64::deserialize(d)?;
        PrepAngle::new(theta).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<f64> for PrepAngle {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        Self::new(theta)
    }
}

/// Mass, arm separation, duration and preparation angle of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    /// kg
    pub mass: f64,
    /// Distance `d = |r₁ − r₂|` between the split arms, m.
    pub separation: f64,
    /// Time spent split, s.
    pub duration: f64,
    pub theta: PrepAngle,
}

impl ExperimentParams {
    pub fn new(mass: f64, separation: f64, duration: f64, theta: f64) -> Result<Self> {
        let params = Self {
            mass,
            separation,
            duration,
            theta: PrepAngle::new(theta)?,
        };
        params.validate()?;
        Ok(params)
    }

    /// The Yb microcrystal setup: `m = 1e-14 kg`, `d = 250 μm`.
    pub fn yb_microcrystal(duration: f64) -> Result<Self> {
        Self::new(YB_MASS, YB_SEPARATION, duration, 0.0)
    }

    pub fn with_duration(self, duration: f64) -> Result<Self> {
        let params = Self { duration, ..self };
        params.validate()?;
        Ok(params)
    }

    pub fn with_theta(self, theta: PrepAngle) -> Self {
        Self { theta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::invariant(
                "mass",
                self.mass,
                "must be finite and > 0",
            ));
        }
        if !(self.separation.is_finite() && self.separation > 0.0) {
            return Err(Error::invariant(
                "separation",
                self.separation,
                "must be finite and > 0",
            ));
        }
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return Err(Error::invariant(
                "duration",
                self.duration,
                "must be finite and >= 0",
            ));
        }
        PrepAngle::new(self.theta.radians()).map(|_| ())
    }
}

/// Gravitational phase frequency scale `G·m²/(ħ·d)` in rad/s.
pub fn gravitational_frequency(params: &ExperimentParams, constants: &PhysConstants) -> f64 {
    // Grouped so that no intermediate leaves the normal f64 range.
    (constants.g * params.mass / constants.hbar) * (params.mass / params.separation)
}

/// Dimensionless phase `T = G·m²·t/(ħ·d)`.
///
/// Every interferometer observable depends on mass, separation and duration
/// only through this number.
pub fn dimensionless_phase(params: &ExperimentParams, constants: &PhysConstants) -> f64 {
    gravitational_frequency(params, constants) * params.duration
}

/// Ratio of the kinetic energy gained by the mutual attraction of the two
/// arms to their gravitational potential energy, `G·m·t²/(2·d³)`.
pub fn kinetic_potential_ratio(params: &ExperimentParams, constants: &PhysConstants) -> f64 {
    let d = params.separation;
    constants.g * params.mass * params.duration * params.duration / (2.0 * d * d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn yb(duration: f64) -> ExperimentParams {
        ExperimentParams::yb_microcrystal(duration).unwrap()
    }

    #[test]
    fn planck_mass_codata() {
        let mp = planck_mass(&PhysConstants::codata());
        // sqrt(ħc/G) evaluated at 40 digits: 2.176434342051e-8
        assert_relative_eq!(mp, 2.176_434_342_051_127e-8, max_relative = 1e-13);
        assert!((mp - 2.2e-8).abs() / 2.2e-8 < 0.02);
    }

    #[test]
    fn planck_mass_halves_with_four_g() {
        let c = PhysConstants::codata();
        let quad = PhysConstants { g: 4.0 * c.g, ..c };
        assert_relative_eq!(
            planck_mass(&quad),
            0.5 * planck_mass(&c),
            max_relative = 1e-15
        );
    }

    #[test]
    fn planck_mass_without_gravity_is_infinite() {
        assert!(planck_mass(&PhysConstants::codata().without_gravity()).is_infinite());
    }

    #[test]
    fn phase_at_planck_mass_is_light_travel_ratio() {
        let c = PhysConstants::codata();
        let p = ExperimentParams::new(planck_mass(&c), 1e-6, 1.0, 0.0).unwrap();
        let t = dimensionless_phase(&p, &c);
        assert_relative_eq!(t, 2.997_924_58e14, max_relative = 1e-12);
        assert!((t - 3e14).abs() / 3e14 < 0.01);
    }

    #[test]
    fn phase_for_yb_setup() {
        let c = PhysConstants::codata();
        assert_eq!(dimensionless_phase(&yb(0.0), &c), 0.0);
        // 40-digit evaluation: 1.265783874063078...
        assert_relative_eq!(
            dimensionless_phase(&yb(5.0), &c),
            1.265_783_874_063_079,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            dimensionless_phase(&yb(50.0), &c),
            12.657_838_740_630_79,
            max_relative = 1e-13
        );
    }

    #[test]
    fn phase_scaling_is_exact() {
        let c = PhysConstants::codata();
        let p = yb(3.0);
        let t = dimensionless_phase(&p, &c);
        let two_m = ExperimentParams {
            mass: 2.0 * p.mass,
            ..p
        };
        let two_t = p.with_duration(6.0).unwrap();
        assert_eq!(dimensionless_phase(&two_m, &c), 4.0 * t);
        assert_eq!(dimensionless_phase(&two_t, &c), 2.0 * t);
    }

    #[test]
    fn kinetic_ratio_for_yb_setup() {
        let c = PhysConstants::codata();
        assert_eq!(kinetic_potential_ratio(&yb(0.0), &c), 0.0);
        let r = kinetic_potential_ratio(&yb(1.0), &c);
        assert_relative_eq!(r, 2.135_776e-14, max_relative = 1e-12);
        assert!(r > 1e-14 / 5.0 && r < 5.0 * 1e-14);
    }

    #[test]
    fn kinetic_ratio_scales_as_inverse_cube() {
        let c = PhysConstants::codata();
        let p = yb(2.0);
        let half = ExperimentParams {
            separation: p.separation / 2.0,
            ..p
        };
        assert_relative_eq!(
            kinetic_potential_ratio(&half, &c),
            8.0 * kinetic_potential_ratio(&p, &c),
            max_relative = 1e-15
        );
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ExperimentParams::new(-1.0, 1e-6, 1.0, 0.0).is_err());
        assert!(ExperimentParams::new(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(ExperimentParams::new(1.0, 1e-6, -1.0, 0.0).is_err());
        assert!(ExperimentParams::new(1.0, 1e-6, 1.0, -0.1).is_err());
        assert!(ExperimentParams::new(1.0, 1e-6, 1.0, 7.0).is_err());
        assert!(ExperimentParams::new(f64::NAN, 1e-6, 1.0, 0.0).is_err());
        assert!(PrepAngle::new(f64::NAN).is_err());
        assert!(PhysConstants::new(-1.0, 1.0, 1.0).is_err());
        assert!(PhysConstants::new(0.0, 0.0, 1.0).is_err());
        assert!(PhysConstants::new(0.0, 1.0, 1.0).is_ok());
    }
}
