use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};
use crate::material::{fresnel_complex, MaterialModel};
use crate::tensor::{C64, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Real,
    Imaginary,
}

/// A positive frequency on either the real axis (ω) or the imaginary axis (ξ, with ω = iξ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frequency {
    pub value: f64,
    pub axis: Axis,
}

impl Frequency {
    pub fn new(value: f64, axis: Axis) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(LithoError::InvalidParameter(format!(
                "frequency must be finite and positive, got {value}"
            )));
        }
        Ok(Self { value, axis })
    }

    pub fn real(value: f64) -> Result<Self> {
        Self::new(value, Axis::Real)
    }

    pub fn imaginary(value: f64) -> Result<Self> {
        Self::new(value, Axis::Imaginary)
    }

    pub fn omega(&self) -> C64 {
        match self.axis {
            Axis::Real => C64::new(self.value, 0.0),
            Axis::Imaginary => C64::new(0.0, self.value),
        }
    }

    pub fn omega_sq(&self) -> C64 {
        match self.axis {
            Axis::Real => C64::new(self.value * self.value, 0.0),
            Axis::Imaginary => C64::new(-self.value * self.value, 0.0),
        }
    }

    pub fn is_real(&self) -> bool {
        self.axis == Axis::Real
    }
}

/// Normal wave-vector component k_z = sqrt(ω² − k∥²) on the branch Im ≥ 0,
/// with Re ≥ 0 where the imaginary part vanishes.
pub fn kz(omega: C64, k_par: f64) -> C64 {
    branch_sqrt(omega * omega - k_par * k_par)
}

/// Same as [`kz`] for a real frequency, with the propagating and evanescent
/// cases evaluated without complex square roots.
pub fn kz_for(freq: &Frequency, k_par: f64) -> C64 {
    let w = freq.value;
    match freq.axis {
        Axis::Imaginary => I * (w * w + k_par * k_par).sqrt(),
        Axis::Real => {
            let d = w * w - k_par * k_par;
            if d >= 0.0 {
                C64::new(d.sqrt(), 0.0)
            } else {
                C64::new(0.0, (-d).sqrt())
            }
        }
    }
}

pub fn branch_sqrt(z: C64) -> C64 {
    let s = z.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// In-plane wave vector with its normal component and substrate reflection
/// coefficients. The polar map is k_x = k∥ sin φ, k_y = k∥ cos φ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveContext {
    pub omega: C64,
    pub k_par: f64,
    pub phi: f64,
    pub kx: f64,
    pub ky: f64,
    pub kz: C64,
    pub r_te: C64,
    pub r_tm: C64,
}

impl WaveContext {
    pub fn new(freq: &Frequency, k_par: f64, phi: f64, substrate: &MaterialModel) -> Result<Self> {
        let mut ctx = Self::bare(freq.omega(), k_par, phi)?;
        ctx.kz = kz_for(freq, k_par);
        let (r_te, r_tm) = substrate.fresnel(freq, k_par)?;
        ctx.r_te = r_te;
        ctx.r_tm = r_tm;
        Ok(ctx)
    }

    /// Context at an arbitrary complex frequency; used by the finite-difference oracle.
    pub fn complex(omega: C64, k_par: f64, phi: f64, substrate: &MaterialModel) -> Result<Self> {
        let mut ctx = Self::bare(omega, k_par, phi)?;
        let (r_te, r_tm) = fresnel_complex(substrate, omega, k_par)?;
        ctx.r_te = r_te;
        ctx.r_tm = r_tm;
        Ok(ctx)
    }

    fn bare(omega: C64, k_par: f64, phi: f64) -> Result<Self> {
        if !(k_par.is_finite() && k_par >= 0.0) {
            return Err(LithoError::InvalidParameter(format!(
                "in-plane wave number must be finite and non-negative, got {k_par}"
            )));
        }
        let (s, c) = phi.sin_cos();
        Ok(Self {
            omega,
            k_par,
            phi,
            kx: k_par * s,
            ky: k_par * c,
            kz: kz(omega, k_par),
            r_te: C64::new(0.0, 0.0),
            r_tm: C64::new(0.0, 0.0),
        })
    }

    pub fn with_reflection(mut self, r_te: C64, r_tm: C64) -> Self {
        self.r_te = r_te;
        self.r_tm = r_tm;
        self
    }

    pub fn omega_sq(&self) -> C64 {
        self.omega * self.omega
    }
}
