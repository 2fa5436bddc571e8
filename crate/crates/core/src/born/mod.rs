//! First Born correction ΔW to the half-space Green tensor from deposited boxes.

pub mod integrand;
pub mod kernels;
pub mod kspace;
pub mod spatial;
pub mod vertex;

use serde::{Deserialize, Serialize};

pub use integrand::{born_integrand, prefactor, BornPlan};
pub use kernels::{free_entry, kernel_entry, kernel_halves, kernel_matrix, KernelHalves, Tau};
pub use kspace::born_correction_kspace;
pub use spatial::born_correction_spatial;
pub use vertex::{Contraction, Ordering};

use crate::error::Result;
use crate::geometry::DepositionGeometry;
use crate::green::HalfSpace;
use crate::kinematics::Frequency;
use crate::quadrature::{IntegralResult, QuadratureConfig};
use crate::tensor::{Mat3, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BornMethod {
    /// Four-dimensional plane-wave integral with analytic volume integration.
    KSpace,
    /// Volume quadrature of W(r, s)·W(s, r′) in real space.
    Spatial,
}

/// Which Born terms enter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BornTerms {
    /// All terms, including the product of the two free-space factors.
    Complete,
    /// Drops the free-space × free-space term.
    ReflectedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BornSettings {
    pub method: BornMethod,
    pub contraction: Contraction,
    pub terms: BornTerms,
    /// Use image-method tensors for vacuum and mirror substrates.
    pub closed_form_substrate: bool,
}

impl Default for BornSettings {
    fn default() -> Self {
        Self {
            method: BornMethod::Spatial,
            contraction: Contraction::Matrix,
            terms: BornTerms::ReflectedOnly,
            closed_form_substrate: true,
        }
    }
}

/// ΔW(r, r′) = ω² δε ∫_V W(r, s)·W(s, r′) d³s by the configured method.
pub fn born_correction(
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    r: &Vec3,
    rp: &Vec3,
    freq: &Frequency,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<Mat3>> {
    match settings.method {
        BornMethod::KSpace => born_correction_kspace(env, geometry, r, rp, freq, settings, cfg),
        BornMethod::Spatial => born_correction_spatial(env, geometry, r, rp, freq, settings, cfg),
    }
}
