use std::f64::consts::PI;

use super::vacuum::vacuum_tensor;
use crate::tensor::{Mat3, Vec3, C64};

/// Scattering tensor of a perfectly conducting plane: the free-space tensor from the
/// mirror image of the source, times diag(−1, −1, 1) on the source index.
pub fn mirror_scattering(r: &Vec3, rp: &Vec3, omega: C64) -> Mat3 {
    let d = [r[0] - rp[0], r[1] - rp[1], r[2] + rp[2]];
    let mut w = vacuum_tensor(&d, omega);
    for row in w.0.iter_mut() {
        row[0] = -row[0];
        row[1] = -row[1];
    }
    w
}

/// Surface-induced decay-rate changes (parallel, perpendicular) for a unit dipole
/// at height z above a perfect mirror.
pub fn halfspace_decay_closed_forms(z: f64, omega: f64) -> (f64, f64) {
    let x = 2.0 * omega * z;
    let (s, c) = x.sin_cos();
    let par = ((1.0 - x * x) * s - x * c) / (16.0 * PI * z.powi(3));
    let perp = (s - x * c) / (8.0 * PI * z.powi(3));
    (par, perp)
}
