use std::f64::consts::PI;

use super::{tensor, GreenPart, GreenTensor};
use crate::error::{LithoError, Result};
use crate::kinematics::Frequency;
use crate::quadrature::{integrate, AdaptiveOptions};
use crate::tensor::{norm, sub, Mat3, Vec3, C64, I};

/// Closed-form free-space tensor at separation `d` and complex wave number `k`,
/// without the contact term.
pub fn vacuum_tensor(d: &Vec3, k: C64) -> Mat3 {
    let r = norm(d);
    let x = k * r;
    let inv = 1.0 / x;
    let a = 1.0 + I * inv - inv * inv;
    let b = -1.0 - 3.0 * I * inv + 3.0 * inv * inv;
    let pref = (I * x).exp() / (4.0 * PI * r);
    let n = [d[0] / r, d[1] / r, d[2] / r];
    Mat3::from_fn(|i, j| pref * (if i == j { a } else { C64::new(0.0, 0.0) } + b * (n[i] * n[j])))
}

pub fn vacuum_gf(r: &Vec3, rp: &Vec3, freq: &Frequency) -> Result<GreenTensor> {
    let d = sub(r, rp);
    if norm(&d) == 0.0 {
        return Err(LithoError::CoincidentPoints(*r));
    }
    Ok(tensor(vacuum_tensor(&d, freq.omega()), r, rp, freq, GreenPart::Homogeneous, 0.0, true))
}

/// Im W_vac at coincidence, ω/6π times the identity, on the real axis.
pub fn vacuum_im_coincidence(freq: &Frequency) -> Result<f64> {
    if !freq.is_real() {
        return Err(LithoError::FrequencyMismatch("coincidence imaginary part needs a real frequency".into()));
    }
    Ok(freq.value / (6.0 * PI))
}

/// Diagonal of Im W_vac(r, r) from the k∥ integral of the plane-wave expansion.
///
/// Only propagating waves contribute to the imaginary part. With k∥ = ω sin θ,
/// the zz entry is (1/4π) ∫ k∥³ / ω² dθ and xx = yy = (1/8π) ∫ k∥ (ω² + k_z²)/ω² dθ.
pub fn vacuum_im_coincidence_numeric(freq: &Frequency, opts: &AdaptiveOptions) -> Result<[f64; 3]> {
    let w = vacuum_im_coincidence(freq)? * 6.0 * PI;
    let zz = integrate(|t: f64| (w * t.sin()).powi(3) / (w * w), &[0.0, 0.5 * PI], opts).value / (4.0 * PI);
    let xx = integrate(
        |t: f64| {
            let (s, c) = t.sin_cos();
            w * s * (1.0 + c * c)
        },
        &[0.0, 0.5 * PI],
        opts,
    )
    .value
        / (8.0 * PI);
    Ok([xx, xx, zz])
}
