//! ΔW by direct volume quadrature of W(r, s)·W(s, r′).

use crate::error::Result;
use crate::geometry::DepositionGeometry;
use crate::green::{vacuum_tensor, HalfSpace};
use crate::kinematics::Frequency;
use crate::quadrature::{gauss_legendre, BoxRule, IntegralResult, QuadValue, QuadratureConfig};
use crate::tensor::{norm, sub, Mat3, Vec3, C64};

use super::vertex::Contraction;
use super::{BornSettings, BornTerms};

/// Vacuum and whole tensors W(r, s) at one source point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PointTensors {
    pub vacuum: Mat3,
    pub whole: Mat3,
}

pub(crate) fn point_tensors(
    env: &HalfSpace,
    r: &Vec3,
    s: &Vec3,
    freq: &Frequency,
    cfg: &QuadratureConfig,
    closed: bool,
) -> Result<PointTensors> {
    let vacuum = vacuum_tensor(&sub(r, s), freq.omega());
    let scattering = env.scattering(r, s, freq, cfg, closed)?.entries;
    Ok(PointTensors { vacuum, whole: vacuum + scattering })
}

fn combine(a: &Mat3, b: &Mat3, c: Contraction) -> Mat3 {
    match c {
        Contraction::Matrix => a.matmul(b),
        Contraction::Elementwise => a.hadamard(b),
    }
}

/// W(r, s)·W(s, r′) for the selected terms, given tensors from r and from r′ to s.
pub(crate) fn born_product(a: &PointTensors, b: &PointTensors, settings: &BornSettings) -> Mat3 {
    let (wa, wb) = (a.whole, b.whole.transpose());
    let full = combine(&wa, &wb, settings.contraction);
    match settings.terms {
        BornTerms::Complete => full,
        BornTerms::ReflectedOnly => full - combine(&a.vacuum, &b.vacuum.transpose(), settings.contraction),
    }
}

/// Σ w f(s) over all boxes with n and n − 4 Gauss-Legendre nodes per axis, graded
/// towards `centre`. The error estimate is the difference of the two rules.
pub(crate) fn volume_sum<V: QuadValue>(
    geometry: &DepositionGeometry,
    centre: &Vec3,
    n: usize,
    mut f: impl FnMut(&Vec3) -> Result<V>,
) -> Result<IntegralResult<V>> {
    let mut totals = [V::zero(), V::zero()];
    let mut evaluations = 0;
    for (slot, nodes) in [n, n - 4].into_iter().enumerate() {
        let gl = gauss_legendre(nodes);
        for bx in &geometry.boxes {
            let delta = bx.distance(centre).max(1e-3 * bx.volume().cbrt());
            let rule = BoxRule::around(&bx.bounds(), centre, delta, &gl);
            for (s, w) in &rule.points {
                totals[slot] = totals[slot].add(&f(s)?.scale(*w));
            }
            evaluations += rule.len();
        }
    }
    let error = totals[0].dist(&totals[1]);
    Ok(IntegralResult { value: totals[0], error, evaluations, converged: true })
}

/// The point towards which volume rules are graded: the nearer of r and r′.
pub(crate) fn grading_centre(geometry: &DepositionGeometry, r: &Vec3, rp: &Vec3) -> Vec3 {
    if geometry.distance(rp) < geometry.distance(r) {
        *rp
    } else {
        *r
    }
}

pub fn born_correction_spatial(
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
    let same = norm(&sub(r, rp)) == 0.0;
    let centre = grading_centre(geometry, r, rp);
    let closed = settings.closed_form_substrate;
    let mut res = volume_sum(geometry, &centre, cfg.spatial_nodes, |s| {
        let a = point_tensors(env, r, s, freq, cfg, closed)?;
        let b = if same { a } else { point_tensors(env, rp, s, freq, cfg, closed)? };
        Ok(born_product(&a, &b, settings))
    })?;
    let scale = freq.omega_sq() * de;
    res.value = res.value * scale;
    res.error *= scale.norm();
    res.converged = res.error <= cfg.abs_tol.max(cfg.rel_tol * res.value.max_abs());
    Ok(res)
}
