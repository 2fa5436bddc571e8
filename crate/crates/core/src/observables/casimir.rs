use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::born::spatial::{born_product, point_tensors, volume_sum};
use crate::born::{BornSettings, BornTerms, Contraction};
use crate::error::{LithoError, Result};
use crate::geometry::DepositionGeometry;
use crate::green::HalfSpace;
use crate::kinematics::Frequency;
use crate::material::MaterialModel;
use crate::quadrature::{QuadratureConfig, XiRule};
use crate::tensor::{norm, Vec3};

use super::AtomModel;

/// Casimir-Polder potential split into substrate and deposition parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpResult {
    pub u_total: f64,
    pub u_halfspace: f64,
    pub delta_u_deposition: f64,
    pub u0_reference: f64,
    pub position: Vec3,
    pub error: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForceResult {
    /// −∂U/∂n along the unit vector `direction`.
    pub force: f64,
    pub f0_reference: f64,
    pub direction: Vec3,
    pub position: Vec3,
    pub error: f64,
    pub converged: bool,
}

type Real3 = [[f64; 3]; 3];

// Free-space tensor at imaginary frequency iξ, where it is real.
fn vacuum_imaginary(d: &Vec3, xi: f64) -> Real3 {
    let r = norm(d);
    let x = xi * r;
    let (ix, ix2) = (1.0 / x, 1.0 / (x * x));
    let pref = (-x).exp() / (4.0 * PI * r);
    let a = pref * (1.0 + ix + ix2);
    let b = -pref * (1.0 + 3.0 * ix + 3.0 * ix2);
    let n = [d[0] / r, d[1] / r, d[2] / r];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = b * n[i] * n[j];
        }
        m[i][i] += a;
    }
    m
}

// (W, H) from r to s at iξ for the image-method substrates.
fn closed_pair(mirror: bool, r: &Vec3, s: &Vec3, xi: f64) -> (Real3, Real3) {
    let h = vacuum_imaginary(&[r[0] - s[0], r[1] - s[1], r[2] - s[2]], xi);
    if !mirror {
        return (h, h);
    }
    let mut w = vacuum_imaginary(&[r[0] - s[0], r[1] - s[1], r[2] + s[2]], xi);
    for (wr, hr) in w.iter_mut().zip(&h) {
        wr[0] = hr[0] - wr[0];
        wr[1] = hr[1] - wr[1];
        wr[2] += hr[2];
    }
    (w, h)
}

// n·(A Aᵀ)·n, or Tr(A Aᵀ)/3 without a direction.
fn gram_projection(a: &Real3, n: Option<&Vec3>) -> f64 {
    match n {
        Some(n) => (0..3)
            .map(|j| {
                let v = a[0][j] * n[0] + a[1][j] * n[1] + a[2][j] * n[2];
                v * v
            })
            .sum(),
        None => a.iter().flatten().map(|x| x * x).sum::<f64>() / 3.0,
    }
}

/// U = (1/2π) ∫ dξ ξ² α(iξ) Tr G(r, r, iξ) for the substrate plus the first Born
/// correction of the deposition. The ξ integral uses a fixed rule so that the
/// potential is smooth in the atom position.
pub fn cp_potential(
    atom: &AtomModel,
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    position: &Vec3,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<CpResult> {
    atom.validate()?;
    cfg.validate()?;
    geometry.check_outside(position)?;
    let r = position;
    let rule = XiRule::graded(atom.omega, cfg.xi_nodes);
    let n = atom.polarization.unit_vector()?;
    // ξ² α(iξ) · 3 / 2π times the quadrature weight.
    let weights: Vec<f64> =
        rule.nodes.iter().zip(&rule.weights).map(|(&xi, &w)| w * xi * xi * atom.polarisability(xi) * 3.0 / (2.0 * PI)).collect();

    let mut u_hs = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    for (&xi, &w) in rule.nodes.iter().zip(&weights) {
        let f = Frequency::imaginary(xi)?;
        let g = env.scattering(r, r, &f, cfg, settings.closed_form_substrate)?;
        u_hs += w * atom.project(&g.entries).re;
        error += w.abs() * g.error;
        converged &= g.converged;
    }

    let mut delta_u = 0.0;
    if !geometry.is_empty() && geometry.material != MaterialModel::Vacuum {
        // ΔG(iξ) = (iξ)² δε(iξ) ∫ W W.
        let coeff = rule
            .nodes
            .iter()
            .zip(&weights)
            .map(|(&xi, &w)| Ok(-w * xi * xi * geometry.material.delta_epsilon(&Frequency::imaginary(xi)?)?.re))
            .collect::<Result<Vec<f64>>>()?;
        let fast = settings.contraction == Contraction::Matrix
            && settings.closed_form_substrate
            && matches!(env.substrate, MaterialModel::Vacuum | MaterialModel::PerfectMirror);
        let mirror = env.substrate.is_mirror();
        let reflected_only = settings.terms == BornTerms::ReflectedOnly;
        let res = volume_sum(geometry, r, cfg.spatial_nodes, |s| {
            let mut acc = 0.0;
            for (&xi, &c) in rule.nodes.iter().zip(&coeff) {
                let p = if fast {
                    let (w, h) = closed_pair(mirror, r, s, xi);
                    let mut p = gram_projection(&w, n.as_ref());
                    if reflected_only {
                        p -= gram_projection(&h, n.as_ref());
                    }
                    p
                } else {
                    let t = point_tensors(env, r, s, &Frequency::imaginary(xi)?, cfg, settings.closed_form_substrate)?;
                    atom.project(&born_product(&t, &t, settings)).re
                };
                acc += c * p;
            }
            Ok(acc)
        })?;
        delta_u = res.value;
        error += res.error;
        converged &= res.error <= cfg.abs_tol.max(cfg.rel_tol * (u_hs + delta_u).abs());
    }
    Ok(CpResult {
        u_total: u_hs + delta_u,
        u_halfspace: u_hs,
        delta_u_deposition: delta_u,
        u0_reference: atom.u0(r[2]),
        position: *r,
        error,
        converged,
    })
}

/// F = −∂U/∂n by central differences at steps h and h/2 with Richardson
/// extrapolation; h is `fd_rel_step` times the distance to the nearest surface.
pub fn cp_force(
    atom: &AtomModel,
    env: &HalfSpace,
    geometry: &DepositionGeometry,
    position: &Vec3,
    direction: &Vec3,
    settings: &BornSettings,
    cfg: &QuadratureConfig,
) -> Result<ForceResult> {
    cfg.validate()?;
    geometry.check_outside(position)?;
    let len = norm(direction);
    if !(len > 0.0 && len.is_finite()) {
        return Err(LithoError::InvalidParameter("force direction must be a non-zero vector".into()));
    }
    let e = [direction[0] / len, direction[1] / len, direction[2] / len];
    let h = cfg.fd_rel_step * position[2].min(geometry.distance(position));
    let at = |t: f64| -> Result<crate::observables::CpResult> {
        let p = [position[0] + t * e[0], position[1] + t * e[1], position[2] + t * e[2]];
        if geometry.check_outside(&p).is_err() {
            return Err(LithoError::StencilOutside(*position));
        }
        cp_potential(atom, env, geometry, &p, settings, cfg)
    };
    let (m1, p1, m2, p2) = (at(-h)?, at(h)?, at(-0.5 * h)?, at(0.5 * h)?);
    let d1 = (m1.u_total - p1.u_total) / (2.0 * h);
    let d2 = (m2.u_total - p2.u_total) / h;
    let force = (4.0 * d2 - d1) / 3.0;
    let propagated = (4.0 * (m2.error + p2.error) / h + (m1.error + p1.error) / (2.0 * h)) / 3.0;
    Ok(ForceResult {
        force,
        f0_reference: atom.f0(position[2]),
        direction: e,
        position: *position,
        error: propagated + (d2 - d1).abs() / 15.0,
        converged: m1.converged && p1.converged && m2.converged && p2.converged,
    })
}
