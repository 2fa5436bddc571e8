//! Plane-wave integrand of ΔW with the volume integral done in closed form.

use std::f64::consts::PI;

use crate::geometry::{lateral_factor, segment_factor, DepositionGeometry, Interval};
use crate::kinematics::WaveContext;
use crate::tensor::{Mat3, Vec3, C64};

use super::vertex::{groups, sides, Contraction, Ordering};
use super::BornTerms;

/// Boxes sharing one z-range, with fixed orderings of r_z and r′_z against s_z.
#[derive(Clone, Debug, PartialEq)]
struct Slab {
    z: Interval,
    oa: Ordering,
    ob: Ordering,
    lateral: Vec<(Interval, Interval)>,
}

/// Volume decomposition of a geometry for a fixed pair of points.
#[derive(Clone, Debug, PartialEq)]
pub struct BornPlan {
    r: Vec3,
    rp: Vec3,
    slabs: Vec<Slab>,
}

fn ordering(field_z: f64, s_mid: f64) -> Ordering {
    if field_z > s_mid {
        Ordering::Greater
    } else {
        Ordering::Lesser
    }
}

impl BornPlan {
    pub fn new(geometry: &DepositionGeometry, r: &Vec3, rp: &Vec3) -> Self {
        let mut slabs: Vec<Slab> = Vec::new();
        for bx in &geometry.boxes {
            for z in bx.z_segments(&[r[2], rp[2]]) {
                let lat = (bx.x, bx.y);
                match slabs.iter_mut().find(|s| s.z == z) {
                    Some(s) => s.lateral.push(lat),
                    None => slabs.push(Slab {
                        z,
                        oa: ordering(r[2], z.mid()),
                        ob: ordering(rp[2], z.mid()),
                        lateral: vec![lat],
                    }),
                }
            }
        }
        Self { r: *r, rp: *rp, slabs }
    }

    pub fn is_empty(&self) -> bool {
        self.slabs.is_empty()
    }
}

/// −ω²/(64π⁴ k_z k_z′): with δε and the contracted vertices it gives the integrand
/// per d²k∥ d²k∥′.
pub fn prefactor(ctx: &WaveContext, ctxp: &WaveContext) -> C64 {
    -ctx.omega_sq() / (64.0 * PI.powi(4) * ctx.kz * ctxp.kz)
}

// (γ, β) of the phase γ + β s_z of one factor, with c the coordinate other than s_z.
fn phase(reflected: bool, c_above: bool, kz: C64, c: f64) -> (C64, C64) {
    if reflected || !c_above {
        (if reflected { kz * c } else { -kz * c }, kz)
    } else {
        (kz * c, -kz)
    }
}

/// Σ over slabs and reflection orders of vertex tensors times the exact volume
/// integral of the plane-wave phases, excluding the prefactor and δε.
pub fn born_integrand(plan: &BornPlan, ctx: &WaveContext, ctxp: &WaveContext, contraction: Contraction, terms: BornTerms) -> Mat3 {
    let i = C64::new(0.0, 1.0);
    let (r, rp) = (&plan.r, &plan.rp);
    let outer = (i * (ctx.kx * r[0] + ctx.ky * r[1] - ctxp.kx * rp[0] - ctxp.ky * rp[1])).exp();
    let q = [ctxp.kx - ctx.kx, ctxp.ky - ctx.ky];
    let mut acc = Mat3::ZERO;
    for slab in &plan.slabs {
        let lat: C64 = slab.lateral.iter().map(|(x, y)| lateral_factor(x, q[0]) * lateral_factor(y, q[1])).sum();
        let (sa, sb) = sides(slab.oa, slab.ob, ctx, ctxp);
        let g = groups(&sa, &sb, contraction);
        let a_above = slab.oa == Ordering::Greater;
        let b_above = slab.ob == Ordering::Greater;
        for (t, ra, rb) in [(&g.dd, false, false), (&g.dr, false, true), (&g.rd, true, false), (&g.rr, true, true)] {
            if terms == BornTerms::ReflectedOnly && !ra && !rb {
                continue;
            }
            let (ga, ba) = phase(ra, a_above, ctx.kz, r[2]);
            let (gb, bb) = phase(rb, b_above, ctxp.kz, rp[2]);
            let w = lat * segment_factor(ga + gb, ba + bb, slab.z.lo, slab.z.hi);
            acc += *t * w;
        }
    }
    acc * outer
}

#[cfg(test)]
mod tests {
    use super::super::kernels::{free_entry, kernel_entry, Tau};
    use super::*;
    use crate::material::MaterialModel;
    use crate::quadrature::gauss_legendre;

    fn ctx(w: C64, k: f64, phi: f64, sub: &MaterialModel) -> WaveContext {
        WaveContext::complex(w, k, phi, sub).unwrap()
    }

    // P × [K0 + Σ R-weighted catalogue entries], integrated over the box by Gauss-Legendre.
    fn catalogue_volume_integral(
        geo: &DepositionGeometry,
        r: &Vec3,
        rp: &Vec3,
        a: &WaveContext,
        b: &WaveContext,
        with_free: bool,
    ) -> Mat3 {
        let gl = gauss_legendre(30);
        let i = C64::new(0.0, 1.0);
        let w2 = a.omega_sq();
        let p0 = -1.0 / (64.0 * PI.powi(4) * w2 * a.k_par.powi(2) * b.k_par.powi(2) * a.kz * b.kz);
        let mut acc = Mat3::ZERO;
        for bx in &geo.boxes {
            for zs in bx.z_segments(&[r[2], rp[2]]) {
                let o = ordering(r[2], zs.mid());
                assert_eq!(o, ordering(rp[2], zs.mid()), "test geometry must keep one ordering per segment");
                for (sx, wx) in gl.on(bx.x.lo, bx.x.hi) {
                    for (sy, wy) in gl.on(bx.y.lo, bx.y.hi) {
                        for (sz, wz) in gl.on(zs.lo, zs.hi) {
                            let ph = i * (a.kx * (r[0] - sx) + a.ky * (r[1] - sy) + b.kx * (sx - rp[0]) + b.ky * (sy - rp[1]))
                                + i * (a.kz * (r[2] + sz) + b.kz * (rp[2] + sz));
                            let pw = p0 * ph.exp() * (wx * wy * wz);
                            let m = Mat3::from_fn(|ii, jj| {
                                let k = |t| kernel_entry(t, ii, jj, o, a, b, r[2], rp[2], sz);
                                let mut v = k(Tau::Te) * (a.r_te + b.r_te) * 0.5
                                    + k(Tau::Tm) * (a.r_tm + b.r_tm) * 0.5
                                    + k(Tau::TeTe) * (a.r_te * b.r_te)
                                    + k(Tau::TmTm) * (a.r_tm * b.r_tm)
                                    + k(Tau::TeTm) * (a.r_te * b.r_tm);
                                if with_free {
                                    v += free_entry(ii, jj, o, a, b, r[2], rp[2], sz);
                                }
                                v
                            });
                            acc += m * pw;
                        }
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn closed_volume_integral_matches_catalogue_quadrature() {
        // Mirror reflection coefficients are k-independent, so the linear terms factor cleanly.
        let sub = MaterialModel::PerfectMirror;
        let w = C64::new(1.0, 0.0);
        let geo = DepositionGeometry::new(
            vec![crate::geometry::DepositionBox::new([-0.5, 0.5], [-0.4, 0.6], [0.2, 1.0]).unwrap()],
            MaterialModel::Constant { epsilon: 1.8 },
        )
        .unwrap();
        for (r, rp) in [([0.3, -0.2, 1.4], [0.1, 0.25, 1.2]), ([1.1, 0.1, 0.6], [-0.9, 0.3, 0.6])] {
            let plan = BornPlan::new(&geo, &r, &rp);
            for (k, phi, kp, php) in [(0.4, 0.3, 1.7, 2.2), (1.3, 4.0, 0.7, 5.5)] {
                let a = ctx(w, k, phi, &sub);
                let b = ctx(w, kp, php, &sub);
                for (terms, free) in [(BornTerms::Complete, true), (BornTerms::ReflectedOnly, false)] {
                    let closed = born_integrand(&plan, &a, &b, Contraction::Elementwise, terms) * prefactor(&a, &b);
                    let quad = catalogue_volume_integral(&geo, &r, &rp, &a, &b, free);
                    assert!(closed.rel_dev(&quad) < 1e-9, "{:?} {}", terms, closed.rel_dev(&quad));
                }
            }
        }
    }

    #[test]
    fn vanishes_without_reflection_in_reflected_variant() {
        let w = C64::new(0.7, 0.0);
        let geo = DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: 1.5 }).unwrap();
        let plan = BornPlan::new(&geo, &[0.2, 0.1, 1.5], &[0.2, 0.1, 1.5]);
        let a = ctx(w, 0.5, 0.2, &MaterialModel::Vacuum);
        let b = ctx(w, 2.5, 1.2, &MaterialModel::Vacuum);
        for c in [Contraction::Matrix, Contraction::Elementwise] {
            assert_eq!(born_integrand(&plan, &a, &b, c, BornTerms::ReflectedOnly).max_abs(), 0.0);
            assert!(born_integrand(&plan, &a, &b, c, BornTerms::Complete).max_abs() > 0.0);
        }
    }

    #[test]
    fn plan_groups_equal_slabs() {
        let spec = crate::geometry::GratingSpec { strips: 5, width: 1.0, height: 1.0, length: 5.0, x0: None };
        let geo = DepositionGeometry::grating(&spec, MaterialModel::Constant { epsilon: 1.8 }).unwrap();
        let plan = BornPlan::new(&geo, &[0.0, 0.0, 1.25], &[0.0, 0.0, 1.25]);
        assert_eq!(plan.slabs.len(), 1);
        assert_eq!(plan.slabs[0].lateral.len(), 5);
        let beside = BornPlan::new(&geo, &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.5]);
        assert_eq!(beside.slabs.len(), 2);
    }
}
