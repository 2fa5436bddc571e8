//! ΔW from the four-dimensional plane-wave integral over (k∥, φ, k∥′, φ′).

use std::f64::consts::PI;

use crate::error::{LithoError, Result};
use crate::geometry::DepositionGeometry;
use crate::green::{radial_segments, HalfSpace};
use crate::kinematics::{Frequency, WaveContext};
use crate::quadrature::{integrate_k4, IntegralResult, K4Domain, QuadratureConfig};
use crate::tensor::{Mat3, Vec3, C64};

use super::integrand::{born_integrand, BornPlan};
use super::BornSettings;

// Smallest vertical gap between a field point and the boxes. The plane-wave integral
// needs it positive for its exponential decay.
fn vertical_gap(geometry: &DepositionGeometry, p: &Vec3) -> Result<f64> {
    let mut gap = f64::INFINITY;
    for b in &geometry.boxes {
        let g = (b.z.lo - p[2]).max(p[2] - b.z.hi);
        if g <= 0.0 {
            return Err(LithoError::InvalidParameter(format!(
                "the k-space method needs every box entirely above or below the point {:?}; use the spatial method",
                p
            )));
        }
        gap = gap.min(g);
    }
    Ok(gap)
}

pub fn born_correction_kspace(
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    r: &Vec3,
    rp: &Vec3,
    freq: &Frequency,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<Mat3>> {
    cfg.validate()?;
    geometry.check_outside(r)?;
    geometry.check_outside(rp)?;
    let de = geometry.delta_epsilon(freq)?;
    if geometry.is_empty() || de == C64::new(0.0, 0.0) {
        return Ok(IntegralResult { value: Mat3::ZERO, error: 0.0, evaluations: 0, converged: true });
    }
    // Surfaces a pole of the substrate model before entering the integrand.
    WaveContext::new(freq, 0.0, 0.0, &env.substrate)?;
    let domain = K4Domain {
        outer: radial_segments(freq, vertical_gap(geometry, r)?, cfg)?,
        inner: radial_segments(freq, vertical_gap(geometry, rp)?, cfg)?,
    };
    let plan = BornPlan::new(geometry, r, rp);
    let pref = -freq.omega_sq() / (64.0 * PI.powi(4));
    let context = |k: f64, phi: f64| WaveContext::new(freq, k, phi, &env.substrate).expect("substrate checked above");
    let res = integrate_k4(
        |p, phi| (context(p.k, phi), pref * p.k * p.dk_over_kz),
        |(ctx, w), q, phip| {
            let ctxp = context(q.k, phip);
            born_integrand(&plan, ctx, &ctxp, settings.contraction, settings.terms) * (w * q.k * q.dk_over_kz)
        },
        &domain,
        &cfg.adaptive(),
    );
    log::debug!("k-space Born integral: {} evaluations, error {:.3e}", res.evaluations, res.error);
    Ok(IntegralResult { value: res.value * de, error: res.error * de.norm(), evaluations: res.evaluations, converged: res.converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DepositionBox;
    use crate::material::MaterialModel;

    #[test]
    fn rejects_points_level_with_a_box() {
        let geo = DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: 1.5 }).unwrap();
        let env = HalfSpace::new(MaterialModel::PerfectMirror).unwrap();
        let f = Frequency::real(1.0).unwrap();
        let err = born_correction_kspace(&env, &geo, &[2.0, 0.0, 0.5], &[2.0, 0.0, 0.5], &f, &BornSettings::default(), &QuadratureConfig::default());
        assert!(matches!(err, Err(LithoError::InvalidParameter(_))));
    }

    #[test]
    fn zero_contrast_gives_zero() {
        let geo = DepositionGeometry::new(vec![DepositionBox::new([0.0, 1.0], [0.0, 1.0], [0.0, 1.0]).unwrap()], MaterialModel::Vacuum).unwrap();
        let env = HalfSpace::new(MaterialModel::PerfectMirror).unwrap();
        let f = Frequency::real(1.0).unwrap();
        let r = born_correction_kspace(&env, &geo, &[0.5, 0.5, 2.0], &[0.5, 0.5, 2.0], &f, &BornSettings::default(), &QuadratureConfig::default()).unwrap();
        assert_eq!(r.value, Mat3::ZERO);
    }
}
