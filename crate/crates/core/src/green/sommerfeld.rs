use std::f64::consts::PI;

use crate::error::{LithoError, Result};
use crate::kinematics::{Axis, Frequency};
use crate::material::MaterialModel;
use crate::quadrature::{integrate, IntegralResult, QuadratureConfig, RadialMap, RadialSegment, Truncation};
use crate::special::bessel_j012;
use crate::tensor::{Mat3, Vec3, C64, I};

/// Azimuthal integrals ∫_0^{2π} f(φ) e^{i k ρ cos(φ − ψ)} dφ for the monomials in
/// c = cos φ and s = sin φ that occur in the vertex tensors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularMoments {
    pub one: f64,
    pub c: C64,
    pub s: C64,
    pub cc: f64,
    pub ss: f64,
    pub cs: f64,
}

pub fn angular_moments(x: f64, psi: f64) -> AngularMoments {
    let (j0, j1, j2) = bessel_j012(x);
    let (sp, cp) = psi.sin_cos();
    let (s2, c2) = (2.0 * psi).sin_cos();
    AngularMoments {
        one: 2.0 * PI * j0,
        c: I * (2.0 * PI * j1 * cp),
        s: I * (2.0 * PI * j1 * sp),
        cc: PI * (j0 - j2 * c2),
        ss: PI * (j0 + j2 * c2),
        cs: -PI * j2 * s2,
    }
}

/// Which TM vertex pair a piece carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TmVertex {
    /// p ⊗ p̃, reflected waves.
    Reflected,
    /// p ⊗ p, direct waves with the field point above the source.
    DirectAbove,
    /// p̃ ⊗ p̃, direct waves with the field point below the source.
    DirectBelow,
}

fn te_tensor(m: &AngularMoments) -> Mat3 {
    let z = C64::new(0.0, 0.0);
    let re = |v: f64| C64::new(v, 0.0);
    Mat3([[re(m.ss), re(-m.cs), z], [re(-m.cs), re(m.cc), z], [z, z, z]])
}

fn tm_tensor(m: &AngularMoments, k: f64, kz: C64, v: TmVertex) -> Mat3 {
    let kz2 = kz * kz;
    let kzk = kz * k;
    let (lat, xz, zx) = match v {
        TmVertex::Reflected => (-1.0, -1.0, 1.0),
        TmVertex::DirectAbove => (1.0, -1.0, -1.0),
        TmVertex::DirectBelow => (1.0, 1.0, 1.0),
    };
    Mat3([
        [kz2 * (lat * m.cc), kz2 * (lat * m.cs), kzk * m.c * xz],
        [kz2 * (lat * m.cs), kz2 * (lat * m.ss), kzk * m.s * xz],
        [kzk * m.c * zx, kzk * m.s * zx, C64::new(k * k * m.one, 0.0)],
    ])
}

/// Decay length scale and k∥ segments for a Sommerfeld integral whose plane waves
/// fall off as e^{−κ Z}.
pub(crate) fn radial_segments(freq: &Frequency, z: f64, cfg: &QuadratureConfig) -> Result<Vec<RadialSegment>> {
    let w = freq.value;
    let k_max = match cfg.k_truncation {
        Truncation::Fixed(l) => l,
        Truncation::Auto => {
            if !(z > 0.0) {
                return Err(LithoError::Truncation("the decay height z + z′ must be positive".into()));
            }
            let target = (100.0 / cfg.rel_tol).ln();
            let mut t = target;
            for _ in 0..8 {
                t = target + 3.0 * t.ln();
            }
            let kappa = t / z;
            match freq.axis {
                Axis::Real => (w * w + kappa * kappa).sqrt(),
                Axis::Imaginary => (kappa * kappa - w * w).max(0.01 * w * w).sqrt(),
            }
        }
    };
    let mut segs = RadialSegment::covering(w, freq.axis == Axis::Imaginary, k_max, cfg.split_at_branch_point);
    // Oscillation from the Bessel factors is resolved by bisection; start from a few
    // pieces on the long evanescent tail.
    if let Some(last) = segs.last().copied() {
        if matches!(last.map, RadialMap::Evanescent { .. } | RadialMap::Imaginary { .. }) && last.hi > 2.0 {
            segs.pop();
            let n = 4;
            let h = (last.hi - last.lo) / n as f64;
            for i in 0..n {
                segs.push(RadialSegment { map: last.map, lo: last.lo + i as f64 * h, hi: last.lo + (i + 1) as f64 * h });
            }
        }
    }
    Ok(segs)
}

fn integrate_radial(
    segs: &[RadialSegment],
    cfg: &QuadratureConfig,
    mut f: impl FnMut(f64, C64, C64) -> Mat3,
) -> IntegralResult<Mat3> {
    let bp: Vec<f64> = (0..=segs.len()).map(|i| i as f64).collect();
    integrate(
        |t| {
            let i = (t.floor() as usize).min(segs.len() - 1);
            let s = &segs[i];
            let jac = s.hi - s.lo;
            let p = s.map.at(s.lo + (t - i as f64) * jac);
            f(p.k, p.kz, p.dk_over_kz * jac)
        },
        &bp,
        &cfg.adaptive(),
    )
}

fn lateral(r: &Vec3, rp: &Vec3) -> (f64, f64) {
    let (dx, dy) = (r[0] - rp[0], r[1] - rp[1]);
    ((dx * dx + dy * dy).sqrt(), dy.atan2(dx))
}

/// Reflected part of the half-space tensor,
/// (i/8π²) ∫ d²k e^{ik∥·ρ} e^{ik_z(z+z′)} [R_TE t⊗t + R_TM p⊗p̃/ω²] / (k∥² k_z).
pub fn sommerfeld_scattering(
    substrate: &MaterialModel,
    r: &Vec3,
    rp: &Vec3,
    freq: &Frequency,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<Mat3>> {
    if matches!(substrate, MaterialModel::Vacuum) {
        return Ok(IntegralResult { value: Mat3::ZERO, error: 0.0, evaluations: 0, converged: true });
    }
    let zsum = r[2] + rp[2];
    let (rho, psi) = lateral(r, rp);
    let segs = radial_segments(freq, zsum, cfg)?;
    let w2 = freq.omega_sq();
    let pref = I / (8.0 * PI * PI);
    let mut failure = None;
    let res = integrate_radial(&segs, cfg, |k, kz, dk_over_kz| {
        let (rte, rtm) = match substrate.fresnel(freq, k) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return Mat3::ZERO;
            }
        };
        let m = angular_moments(k * rho, psi);
        let body = te_tensor(&m) * rte + tm_tensor(&m, k, kz, TmVertex::Reflected) * (rtm / w2);
        body * (pref * k * dk_over_kz * (I * kz * zsum).exp())
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(res),
    }
}

/// Direct (R-independent) part of the plane-wave expansion for z ≠ z′. It reproduces
/// the closed-form vacuum tensor and is used to check the expansion itself.
pub fn sommerfeld_direct(r: &Vec3, rp: &Vec3, freq: &Frequency, cfg: &QuadratureConfig) -> Result<IntegralResult<Mat3>> {
    let dz = r[2] - rp[2];
    if dz == 0.0 {
        return Err(LithoError::Truncation("the direct expansion needs z ≠ z′".into()));
    }
    let v = if dz > 0.0 { TmVertex::DirectAbove } else { TmVertex::DirectBelow };
    let (rho, psi) = lateral(r, rp);
    let segs = radial_segments(freq, dz.abs(), cfg)?;
    let w2 = freq.omega_sq();
    let pref = I / (8.0 * PI * PI);
    Ok(integrate_radial(&segs, cfg, |k, kz, dk_over_kz| {
        let m = angular_moments(k * rho, psi);
        let body = te_tensor(&m) + tm_tensor(&m, k, kz, v) * (1.0 / w2);
        body * (pref * k * dk_over_kz * (I * kz * dz.abs()).exp())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{mirror_scattering, vacuum_tensor};
    use crate::tensor::sub;

    fn tight() -> QuadratureConfig {
        QuadratureConfig { rel_tol: 1e-10, abs_tol: 1e-15, max_subdivisions: 2000, ..Default::default() }
    }

    // Trapezoid over φ of e^{ikρ cos(φ−ψ)} times a monomial.
    fn moment_by_quadrature(x: f64, psi: f64, f: impl Fn(f64, f64) -> f64) -> C64 {
        let n = 512;
        (0..n)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / n as f64;
                let (s, c) = phi.sin_cos();
                (I * x * (phi - psi).cos()).exp() * f(c, s)
            })
            .sum::<C64>()
            * (2.0 * PI / n as f64)
    }

    #[test]
    fn moments_match_direct_azimuthal_quadrature() {
        for &(x, psi) in &[(0.0, 0.3), (0.7, -1.2), (5.3, 2.4), (31.0, 0.9)] {
            let m = angular_moments(x, psi);
            let checks: [(C64, &dyn Fn(f64, f64) -> f64); 6] = [
                (C64::new(m.one, 0.0), &|_, _| 1.0),
                (m.c, &|c, _| c),
                (m.s, &|_, s| s),
                (C64::new(m.cc, 0.0), &|c, _| c * c),
                (C64::new(m.ss, 0.0), &|_, s| s * s),
                (C64::new(m.cs, 0.0), &|c, s| c * s),
            ];
            for (v, f) in checks {
                assert!((v - moment_by_quadrature(x, psi, f)).norm() < 1e-12, "x={x}");
            }
        }
    }

    #[test]
    fn direct_expansion_reproduces_vacuum_closed_form() {
        let cfg = tight();
        for freq in [Frequency::real(1.0).unwrap(), Frequency::imaginary(0.7).unwrap()] {
            for (r, rp) in [([0.1, 0.2, 1.3], [0.0, 0.0, 0.5]), ([0.4, -0.3, 0.6], [0.1, 0.2, 1.1])] {
                let num = sommerfeld_direct(&r, &rp, &freq, &cfg).unwrap();
                let exact = vacuum_tensor(&sub(&r, &rp), freq.omega());
                assert!(num.value.rel_dev(&exact) < 1e-8, "{:?} {}", freq, num.value.rel_dev(&exact));
            }
        }
    }

    #[test]
    fn mirror_expansion_matches_image_construction() {
        let cfg = tight();
        for freq in [Frequency::real(1.0).unwrap(), Frequency::imaginary(0.4).unwrap()] {
            for (r, rp) in [([0.0, 0.0, 0.3], [0.0, 0.0, 0.3]), ([0.3, -0.2, 0.7], [-0.1, 0.4, 0.2])] {
                let num = sommerfeld_scattering(&MaterialModel::PerfectMirror, &r, &rp, &freq, &cfg).unwrap();
                let exact = mirror_scattering(&r, &rp, freq.omega());
                assert!(num.value.rel_dev(&exact) < 1e-8, "{}", num.value.rel_dev(&exact));
            }
        }
    }

    #[test]
    fn vacuum_substrate_has_no_scattering() {
        let f = Frequency::real(1.0).unwrap();
        let r = sommerfeld_scattering(&MaterialModel::Vacuum, &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0], &f, &tight()).unwrap();
        assert_eq!(r.value, Mat3::ZERO);
    }

    #[test]
    fn dielectric_tensor_is_reciprocal() {
        let f = Frequency::real(1.0).unwrap();
        let m = MaterialModel::Constant { epsilon: 1.8 };
        let (a, b) = ([0.3, -0.2, 0.7], [-0.1, 0.4, 0.2]);
        let ab = sommerfeld_scattering(&m, &a, &b, &f, &tight()).unwrap().value;
        let ba = sommerfeld_scattering(&m, &b, &a, &f, &tight()).unwrap().value;
        assert!(ab.rel_dev(&ba.transpose()) < 1e-12);
    }
}
