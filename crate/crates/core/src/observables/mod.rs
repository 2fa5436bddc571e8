//! Decay rates, Casimir-Polder potentials and forces for a two-level atom.

mod casimir;
mod decay;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};
use crate::tensor::{Mat3, Vec3, C64};

pub use casimir::{cp_force, cp_potential, CpResult, ForceResult};
pub use decay::{decay_rate, decay_rate_deposition, decay_rate_halfspace, DecayRateResult};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarization {
    X,
    Y,
    Z,
    /// Orientation-averaged dipole.
    Isotropic,
    /// Dipole along an arbitrary direction; normalised on use.
    Direction(Vec3),
}

impl Polarization {
    pub fn unit_vector(&self) -> Result<Option<Vec3>> {
        match *self {
            Polarization::X => Ok(Some([1.0, 0.0, 0.0])),
            Polarization::Y => Ok(Some([0.0, 1.0, 0.0])),
            Polarization::Z => Ok(Some([0.0, 0.0, 1.0])),
            Polarization::Isotropic => Ok(None),
            Polarization::Direction(d) => {
                let n = crate::tensor::norm(&d);
                if !(n > 0.0 && n.is_finite()) {
                    return Err(LithoError::InvalidParameter("dipole direction must be a non-zero finite vector".into()));
                }
                Ok(Some([d[0] / n, d[1] / n, d[2] / n]))
            }
        }
    }
}

/// Two-level atom with transition frequency `omega` and dipole moment magnitude `dipole`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomModel {
    pub omega: f64,
    #[serde(default = "unit_dipole")]
    pub dipole: f64,
    pub polarization: Polarization,
}

fn unit_dipole() -> f64 {
    1.0
}

impl AtomModel {
    pub fn new(omega: f64, dipole: f64, polarization: Polarization) -> Result<Self> {
        let a = Self { omega, dipole, polarization };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(LithoError::InvalidParameter(format!("transition frequency must be positive, got {}", self.omega)));
        }
        if !(self.dipole >= 0.0 && self.dipole.is_finite()) {
            return Err(LithoError::InvalidParameter(format!("dipole magnitude must be non-negative, got {}", self.dipole)));
        }
        self.polarization.unit_vector().map(|_| ())
    }

    /// Isotropic ground-state polarisability on the imaginary axis, (2/3) ω |d|² / (ω² + ξ²).
    pub fn polarisability(&self, xi: f64) -> f64 {
        2.0 * self.omega * self.dipole * self.dipole / (3.0 * (self.omega * self.omega + xi * xi))
    }

    /// n·M·n for an oriented dipole, Tr M / 3 for the isotropic atom.
    pub fn project(&self, m: &Mat3) -> C64 {
        match self.polarization.unit_vector().expect("validated atom") {
            Some(n) => m.contract(&n),
            None => m.trace() / 3.0,
        }
    }

    /// Free-space rate Γ₀ = ω³|d|²/3π.
    pub fn gamma0(&self) -> f64 {
        self.omega.powi(3) * self.dipole * self.dipole / (3.0 * PI)
    }

    /// Non-retarded potential near a perfect mirror, U₀ = −|d|²/48πz³.
    pub fn u0(&self, z: f64) -> f64 {
        -self.dipole * self.dipole / (48.0 * PI * z.powi(3))
    }

    /// Non-retarded force near a perfect mirror, F₀ = −|d|²/16πz⁴.
    pub fn f0(&self, z: f64) -> f64 {
        -self.dipole * self.dipole / (16.0 * PI * z.powi(4))
    }
}
