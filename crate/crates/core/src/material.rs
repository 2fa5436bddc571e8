use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};
use crate::kinematics::{branch_sqrt, Axis, Frequency};
use crate::tensor::C64;

/// One Lorentz resonance, `strength · ω_j² / (ω_j² − ω² − iγ_j ω)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Oscillator {
    pub strength: f64,
    pub resonance: f64,
    #[serde(default)]
    pub damping: f64,
}

fn default_eps_inf() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MaterialModel {
    Vacuum,
    Constant {
        epsilon: f64,
    },
    DrudeLorentz {
        #[serde(default = "default_eps_inf")]
        eps_inf: f64,
        #[serde(default)]
        plasma: f64,
        #[serde(default)]
        damping: f64,
        #[serde(default)]
        oscillators: Vec<Oscillator>,
    },
    PerfectMirror,
}

impl MaterialModel {
    /// Relative permittivity. The perfect mirror returns an infinite sentinel.
    pub fn permittivity(&self, freq: &Frequency) -> Result<C64> {
        match (self, freq.axis) {
            (MaterialModel::DrudeLorentz { eps_inf, plasma, damping, oscillators }, Axis::Imaginary) => {
                let xi = freq.value;
                let mut eps = *eps_inf;
                if *plasma != 0.0 {
                    eps += plasma * plasma / (xi * xi + damping * xi);
                }
                for o in oscillators {
                    let w2 = o.resonance * o.resonance;
                    eps += o.strength * w2 / (w2 + xi * xi + o.damping * xi);
                }
                Ok(C64::new(eps, 0.0))
            }
            _ => permittivity_complex(self, freq.omega()),
        }
    }

    pub fn delta_epsilon(&self, freq: &Frequency) -> Result<C64> {
        Ok(self.permittivity(freq)? - 1.0)
    }

    pub fn fresnel(&self, freq: &Frequency, k_par: f64) -> Result<(C64, C64)> {
        fresnel_complex(self, freq.omega(), k_par)
    }

    pub fn is_mirror(&self) -> bool {
        matches!(self, MaterialModel::PerfectMirror)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(LithoError::InvalidParameter(m.to_string()));
        match self {
            MaterialModel::Constant { epsilon } if !epsilon.is_finite() => bad("constant permittivity must be finite"),
            MaterialModel::DrudeLorentz { eps_inf, plasma, damping, oscillators } => {
                if !(eps_inf.is_finite() && plasma.is_finite() && *damping >= 0.0) {
                    return bad("Drude-Lorentz parameters must be finite with non-negative damping");
                }
                if oscillators.iter().any(|o| !(o.resonance > 0.0 && o.damping >= 0.0 && o.strength.is_finite())) {
                    return bad("Lorentz oscillators need a positive resonance and non-negative damping");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

pub(crate) fn permittivity_complex(model: &MaterialModel, w: C64) -> Result<C64> {
    match model {
        MaterialModel::Vacuum => Ok(C64::new(1.0, 0.0)),
        MaterialModel::Constant { epsilon } => Ok(C64::new(*epsilon, 0.0)),
        MaterialModel::PerfectMirror => Ok(C64::new(f64::INFINITY, 0.0)),
        MaterialModel::DrudeLorentz { eps_inf, plasma, damping, oscillators } => {
            let i = C64::new(0.0, 1.0);
            let mut eps = C64::new(*eps_inf, 0.0);
            if *plasma != 0.0 {
                let den = w * w + i * damping * w;
                if den.norm() == 0.0 {
                    return Err(LithoError::RealAxisPole(0.0));
                }
                eps -= plasma * plasma / den;
            }
            for o in oscillators {
                let w2 = o.resonance * o.resonance;
                let den = w2 - w * w - i * o.damping * w;
                if den.norm() == 0.0 {
                    return Err(LithoError::RealAxisPole(o.resonance));
                }
                eps += o.strength * w2 / den;
            }
            Ok(eps)
        }
    }
}

/// TE and TM reflection coefficients of the substrate at a (possibly complex) frequency.
pub(crate) fn fresnel_complex(model: &MaterialModel, w: C64, k_par: f64) -> Result<(C64, C64)> {
    match model {
        MaterialModel::Vacuum => Ok((C64::new(0.0, 0.0), C64::new(0.0, 0.0))),
        MaterialModel::PerfectMirror => Ok((C64::new(-1.0, 0.0), C64::new(1.0, 0.0))),
        _ => {
            let eps = permittivity_complex(model, w)?;
            let w2 = w * w;
            let kz = branch_sqrt(w2 - k_par * k_par);
            let kzd = branch_sqrt(eps * w2 - k_par * k_par);
            Ok(((kz - kzd) / (kz + kzd), (eps * kz - kzd) / (eps * kz + kzd)))
        }
    }
}
