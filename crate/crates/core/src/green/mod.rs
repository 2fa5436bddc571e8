//! Vacuum and half-space dyadic Green tensors.

mod closed;
mod sommerfeld;
mod vacuum;

use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};
use crate::kinematics::Frequency;
use crate::material::MaterialModel;
use crate::quadrature::QuadratureConfig;
use crate::tensor::{Mat3, Vec3};

pub use closed::{halfspace_decay_closed_forms, mirror_scattering};
pub(crate) use sommerfeld::radial_segments;
pub use sommerfeld::{angular_moments, sommerfeld_direct, sommerfeld_scattering, AngularMoments};
pub use vacuum::{vacuum_gf, vacuum_im_coincidence, vacuum_im_coincidence_numeric, vacuum_tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreenPart {
    Whole,
    Scattering,
    Homogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenTensor {
    pub entries: Mat3,
    pub r: Vec3,
    pub r_prime: Vec3,
    pub frequency: Frequency,
    pub part: GreenPart,
    pub error: f64,
    pub converged: bool,
}

/// The planar substrate occupying z < 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub substrate: MaterialModel,
}

impl HalfSpace {
    pub fn new(substrate: MaterialModel) -> Result<Self> {
        substrate.validate()?;
        Ok(Self { substrate })
    }

    /// Image-method scattering tensor where one exists (vacuum and perfect mirror).
    pub fn scattering_closed_form(&self, r: &Vec3, rp: &Vec3, freq: &Frequency) -> Option<Mat3> {
        match self.substrate {
            MaterialModel::Vacuum => Some(Mat3::ZERO),
            MaterialModel::PerfectMirror => Some(mirror_scattering(r, rp, freq.omega())),
            _ => None,
        }
    }

    /// Scattering tensor, from the image construction when `prefer_closed` allows it
    /// and from Sommerfeld quadrature otherwise.
    pub fn scattering(
        &self,
        r: &Vec3,
        rp: &Vec3,
        freq: &Frequency,
        cfg: &QuadratureConfig,
        prefer_closed: bool,
    ) -> Result<GreenTensor> {
        check_above(r)?;
        check_above(rp)?;
        if prefer_closed {
            if let Some(m) = self.scattering_closed_form(r, rp, freq) {
                return Ok(tensor(m, r, rp, freq, GreenPart::Scattering, 0.0, true));
            }
        }
        halfspace_gf(self, r, rp, freq, GreenPart::Scattering, cfg)
    }

    /// Whole tensor W = W_vac + scattering part.
    pub fn whole(&self, r: &Vec3, rp: &Vec3, freq: &Frequency, cfg: &QuadratureConfig, prefer_closed: bool) -> Result<GreenTensor> {
        let vac = vacuum_gf(r, rp, freq)?;
        let mut s = self.scattering(r, rp, freq, cfg, prefer_closed)?;
        s.entries += vac.entries;
        s.part = GreenPart::Whole;
        Ok(s)
    }
}

fn check_above(p: &Vec3) -> Result<()> {
    if p[2] > 0.0 && p.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(LithoError::BelowInterface(*p))
    }
}

pub(crate) fn tensor(entries: Mat3, r: &Vec3, rp: &Vec3, freq: &Frequency, part: GreenPart, error: f64, converged: bool) -> GreenTensor {
    GreenTensor { entries, r: *r, r_prime: *rp, frequency: *freq, part, error, converged }
}

/// Half-space Green tensor. The scattering part is integrated numerically over k∥
/// with the azimuth done analytically; the homogeneous part uses the closed form.
pub fn halfspace_gf(
    env: &HalfSpace,
    r: &Vec3,
    rp: &Vec3,
    freq: &Frequency,
    part: GreenPart,
    cfg: &QuadratureConfig,
) -> Result<GreenTensor> {
    check_above(r)?;
    check_above(rp)?;
    match part {
        GreenPart::Homogeneous => vacuum_gf(r, rp, freq),
        GreenPart::Scattering => {
            let res = sommerfeld_scattering(&env.substrate, r, rp, freq, cfg)?;
            Ok(tensor(res.value, r, rp, freq, part, res.error, res.converged))
        }
        GreenPart::Whole => {
            let vac = vacuum_gf(r, rp, freq)?;
            let res = sommerfeld_scattering(&env.substrate, r, rp, freq, cfg)?;
            Ok(tensor(res.value + vac.entries, r, rp, freq, part, res.error, res.converged))
        }
    }
}
