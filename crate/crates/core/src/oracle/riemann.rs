use crate::error::Result;
use crate::geometry::DepositionGeometry;
use crate::green::{halfspace_gf, GreenPart, HalfSpace};
use crate::kinematics::Frequency;
use crate::quadrature::{IntegralResult, QuadratureConfig};
use crate::tensor::{Mat3, Vec3};

use super::OracleConfig;

/// ω² δε Σ_cells W(r, s)·W(s, r′) Δv on a uniform midpoint grid with
/// `cells_per_axis` cells along each edge of every box. Both tensors come from the
/// numerical half-space Green function; r and r′ must lie outside the boxes.
pub fn born_correction_riemann(
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    r: &Vec3,
    rp: &Vec3,
    freq: &Frequency,
    oracle: &OracleConfig,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<Mat3>> {
    oracle.validate()?;
    geometry.check_outside(r)?;
    geometry.check_outside(rp)?;
    let n = oracle.cells_per_axis;
    let mut sum = Mat3::ZERO;
    let mut error = 0.0;
    let mut converged = true;
    let mut evaluations = 0;
    for bx in &geometry.boxes {
        let h = [bx.x.len() / n as f64, bx.y.len() / n as f64, bx.z.len() / n as f64];
        let dv = h[0] * h[1] * h[2];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s = [
                        bx.x.lo + (a as f64 + 0.5) * h[0],
                        bx.y.lo + (b as f64 + 0.5) * h[1],
                        bx.z.lo + (c as f64 + 0.5) * h[2],
                    ];
                    let wa = halfspace_gf(env, r, &s, freq, GreenPart::Whole, cfg)?;
                    let wb = halfspace_gf(env, &s, rp, freq, GreenPart::Whole, cfg)?;
                    sum += wa.entries.matmul(&wb.entries) * dv;
                    error += dv * (wa.error * wb.entries.max_abs() + wb.error * wa.entries.max_abs());
                    converged &= wa.converged && wb.converged;
                    evaluations += 2;
                }
            }
        }
    }
    let scale = freq.omega_sq() * geometry.delta_epsilon(freq)?;
    Ok(IntegralResult { value: sum * scale, error: error * scale.norm(), evaluations, converged })
}
