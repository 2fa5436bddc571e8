use serde::{Deserialize, Serialize};

use crate::born::{born_correction, BornSettings};
use crate::error::{LithoError, Result};
use crate::geometry::DepositionGeometry;
use crate::green::{GreenPart, GreenTensor, HalfSpace};
use crate::kinematics::Frequency;
use crate::quadrature::QuadratureConfig;
use crate::tensor::{Mat3, Vec3};

use super::AtomModel;

/// Decay rate split into free-space, substrate and deposition parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRateResult {
    pub gamma_total: f64,
    pub gamma_0: f64,
    pub delta_gamma_surface: f64,
    pub delta_gamma_deposition: f64,
    pub position: Vec3,
    pub error: f64,
    pub converged: bool,
}

impl DecayRateResult {
    /// Γ relative to the rate at the same point without the deposition.
    pub fn relative_to_halfspace(&self) -> f64 {
        self.gamma_total / (self.gamma_0 + self.delta_gamma_surface)
    }
}

fn rate(atom: &AtomModel, m: &Mat3) -> f64 {
    2.0 * atom.omega * atom.omega * atom.dipole * atom.dipole * atom.project(m).im
}

/// Γ from a tensor evaluated at the atom position and transition frequency. A
/// scattering tensor gives the surface-induced change, to which Γ₀ is added when
/// `include_gamma0` is set; a whole tensor already contains it.
pub fn decay_rate(atom: &AtomModel, green: &GreenTensor, include_gamma0: bool) -> Result<DecayRateResult> {
    atom.validate()?;
    if !green.frequency.is_real() || green.frequency.value != atom.omega {
        return Err(LithoError::FrequencyMismatch(format!(
            "tensor at {:?} {} but atom transition at {}",
            green.frequency.axis, green.frequency.value, atom.omega
        )));
    }
    let g0 = atom.gamma0();
    let value = rate(atom, &green.entries);
    let (total, surface) = match green.part {
        GreenPart::Whole => (value, value - g0),
        GreenPart::Homogeneous => (value, 0.0),
        GreenPart::Scattering => (if include_gamma0 { g0 + value } else { value }, value),
    };
    let scale = rate_scale(atom);
    Ok(DecayRateResult {
        gamma_total: total,
        gamma_0: g0,
        delta_gamma_surface: surface,
        delta_gamma_deposition: 0.0,
        position: green.r,
        error: scale * green.error,
        converged: green.converged,
    })
}

fn rate_scale(atom: &AtomModel) -> f64 {
    2.0 * atom.omega * atom.omega * atom.dipole * atom.dipole
}

/// Γ above the bare substrate.
pub fn decay_rate_halfspace(
    atom: &AtomModel,
    env: &HalfSpace,
    position: &Vec3,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<DecayRateResult> {
    let freq = Frequency::real(atom.omega)?;
    let g = env.scattering(position, position, &freq, cfg, settings.closed_form_substrate)?;
    decay_rate(atom, &g, true)
}

/// Γ above the substrate carrying the deposition, with the first Born correction.
pub fn decay_rate_deposition(
    atom: &AtomModel,
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    position: &Vec3,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<DecayRateResult> {
    geometry.check_outside(position)?;
    let mut res = decay_rate_halfspace(atom, env, position, settings, cfg)?;
    let freq = Frequency::real(atom.omega)?;
    let dw = born_correction(env, geometry, position, position, &freq, settings, cfg)?;
    res.delta_gamma_deposition = rate(atom, &dw.value);
    res.gamma_total = res.gamma_0 + res.delta_gamma_surface + res.delta_gamma_deposition;
    res.error += rate_scale(atom) * dw.error;
    res.converged &= dw.converged;
    Ok(res)
}
