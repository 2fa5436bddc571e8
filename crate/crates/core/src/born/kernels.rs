//! Plane-wave kernel catalogue for the Born correction: element-wise products of the
//! operator-applied expansions of W(r, s) and W(s, r′), split by reflection order.

use serde::{Deserialize, Serialize};

use crate::kinematics::WaveContext;
use crate::tensor::{Mat3, C64};

use super::vertex::{free_kernel, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tau {
    Te,
    Tm,
    TeTe,
    TmTm,
    TeTm,
}

impl Tau {
    pub const ALL: [Tau; 5] = [Tau::Te, Tau::Tm, Tau::TeTe, Tau::TmTm, Tau::TeTm];

    pub fn is_linear(&self) -> bool {
        matches!(self, Tau::Te | Tau::Tm)
    }
}

/// A catalogue entry split into the part multiplying e^{−2ik_z z_A} ("unprimed") and
/// the part multiplying e^{−2ik_z′ z_B} ("primed"). Quadratic and mixed entries carry
/// no exponential and use `unprimed` only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelHalves {
    pub unprimed: C64,
    pub primed: C64,
}

#[derive(Clone, Copy)]
struct Comp {
    kx: f64,
    ky: f64,
    kz: C64,
    k2: f64,
}

fn comp(ctx: &WaveContext, swap: bool) -> Comp {
    let (kx, ky) = if swap { (ctx.ky, ctx.kx) } else { (ctx.kx, ctx.ky) };
    Comp { kx, ky, kz: ctx.kz, k2: ctx.k_par * ctx.k_par }
}

fn sign(o: Ordering) -> f64 {
    match o {
        Ordering::Greater => 1.0,
        Ordering::Lesser => -1.0,
    }
}

// Entries for (i, j) ∈ {xx, xy, xz, zx, zz}; the y-rows follow by exchanging k_x and k_y.
fn base(tau: Tau, ij: (usize, usize), a: Comp, b: Comp, w2: C64, oa: Ordering, ob: Ordering) -> KernelHalves {
    let zero = C64::new(0.0, 0.0);
    let w4 = w2 * w2;
    let (kz2, kzp2) = (a.kz * a.kz, b.kz * b.kz);
    let x = a.kx * b.kx * a.k2 * b.k2 * a.kz * b.kz;
    let halves = |u: C64, p: C64| KernelHalves { unprimed: u, primed: p };
    match (tau, ij) {
        (Tau::Te, (0, 0)) => halves(
            w2 * (b.ky * b.ky) * (a.kx * a.kx * kz2 + a.ky * a.ky * w2),
            w2 * (a.ky * a.ky) * (b.kx * b.kx * kzp2 + b.ky * b.ky * w2),
        ),
        (Tau::Te, (0, 1)) => {
            let v = w2 * (a.kx * b.kx * a.ky * b.ky);
            halves(v * a.k2, v * b.k2)
        }
        (Tau::Tm, (0, 0)) => halves(
            -(b.kx * b.kx) * kzp2 * (a.kx * a.kx * kz2 + a.ky * a.ky * w2),
            -(a.kx * a.kx) * kz2 * (b.kx * b.kx * kzp2 + b.ky * b.ky * w2),
        ),
        (Tau::Tm, (0, 1)) => {
            let v = a.kx * a.ky * b.kx * b.ky;
            halves(v * a.k2 * kzp2, v * b.k2 * kz2)
        }
        (Tau::Tm, (0, 2)) => halves(x * sign(oa), -x * sign(ob)),
        (Tau::Tm, (2, 0)) => halves(-x * sign(oa), x * sign(ob)),
        (Tau::Tm, (2, 2)) => {
            let v = C64::new(a.k2 * a.k2 * b.k2 * b.k2, 0.0);
            halves(v, v)
        }
        (Tau::TeTe, (0, 0)) => halves(w4 * (a.ky * a.ky * b.ky * b.ky), zero),
        (Tau::TeTe, (0, 1)) => halves(w4 * (a.kx * b.kx * a.ky * b.ky), zero),
        (Tau::TmTm, (0, 0)) => halves((a.kx * a.kx * b.kx * b.kx) * kz2 * kzp2, zero),
        (Tau::TmTm, (0, 1)) => halves((a.kx * b.kx * a.ky * b.ky) * kz2 * kzp2, zero),
        (Tau::TmTm, (0, 2)) | (Tau::TmTm, (2, 0)) => halves(x, zero),
        (Tau::TmTm, (2, 2)) => halves(C64::new(a.k2 * a.k2 * b.k2 * b.k2, 0.0), zero),
        (Tau::TeTm, (0, 0)) => halves(-w2 * (a.kx * a.kx * (b.ky * b.ky) * kz2 + b.kx * b.kx * (a.ky * a.ky) * kzp2), zero),
        (Tau::TeTm, (0, 1)) => halves(w2 * (a.kx * b.kx * a.ky * b.ky) * (kz2 + kzp2), zero),
        _ => halves(zero, zero),
    }
}

/// Catalogue entry with independent orderings for the two factors: `oa` compares r_z
/// with s_z and `ob` compares r′_z with s_z.
pub fn kernel_halves(tau: Tau, i: usize, j: usize, oa: Ordering, ob: Ordering, ctx: &WaveContext, ctxp: &WaveContext) -> KernelHalves {
    assert!(i < 3 && j < 3, "tensor index out of range");
    let w2 = ctx.omega_sq();
    let swap = matches!((i, j), (1, 1) | (1, 2) | (2, 1));
    let (a, b) = (comp(ctx, swap), comp(ctxp, swap));
    let (bi, bj) = match (i, j) {
        (1, 0) => (0, 1),
        (1, 1) => (0, 0),
        (1, 2) => (0, 2),
        (2, 1) => (2, 0),
        other => other,
    };
    base(tau, (bi, bj), a, b, w2, oa, ob)
}

fn exponents(oa: Ordering, ob: Ordering, ctx: &WaveContext, ctxp: &WaveContext, r_z: f64, rp_z: f64, s_z: f64) -> (C64, C64) {
    let i = C64::new(0.0, 1.0);
    let za = if oa == Ordering::Greater { s_z } else { r_z };
    let zb = if ob == Ordering::Greater { s_z } else { rp_z };
    ((-2.0 * i * ctx.kz * za).exp(), (-2.0 * i * ctxp.kz * zb).exp())
}

/// K^τ_ij for the given ordering (applied to both factors), including its exponentials.
#[allow(clippy::too_many_arguments)]
pub fn kernel_entry(
    tau: Tau,
    i: usize,
    j: usize,
    ordering: Ordering,
    ctx: &WaveContext,
    ctxp: &WaveContext,
    r_z: f64,
    rp_z: f64,
    s_z: f64,
) -> C64 {
    let h = kernel_halves(tau, i, j, ordering, ordering, ctx, ctxp);
    if tau.is_linear() {
        let (ea, eb) = exponents(ordering, ordering, ctx, ctxp, r_z, rp_z, s_z);
        h.unprimed * ea + h.primed * eb
    } else {
        h.unprimed
    }
}

/// All nine entries of K^τ.
pub fn kernel_matrix(tau: Tau, ordering: Ordering, ctx: &WaveContext, ctxp: &WaveContext, r_z: f64, rp_z: f64, s_z: f64) -> Mat3 {
    Mat3::from_fn(|i, j| kernel_entry(tau, i, j, ordering, ctx, ctxp, r_z, rp_z, s_z))
}

/// The reflection-independent term with its exponentials; it is absent from the
/// printed list and follows from the same operator products.
pub fn free_entry(i: usize, j: usize, ordering: Ordering, ctx: &WaveContext, ctxp: &WaveContext, r_z: f64, rp_z: f64, s_z: f64) -> C64 {
    let (ea, eb) = exponents(ordering, ordering, ctx, ctxp, r_z, rp_z, s_z);
    free_kernel(ordering, ordering, ctx, ctxp)[(i, j)] * ea * eb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::MaterialModel;
    use proptest::prelude::*;

    fn ctx(w: C64, k: f64, phi: f64) -> WaveContext {
        WaveContext::complex(w, k, phi, &MaterialModel::Vacuum).unwrap()
    }

    const ZEROS: [(Tau, usize, usize); 9] = [
        (Tau::Te, 0, 2), (Tau::Te, 2, 0), (Tau::Te, 2, 2),
        (Tau::TeTe, 0, 2), (Tau::TeTe, 2, 0), (Tau::TeTe, 2, 2),
        (Tau::TeTm, 0, 2), (Tau::TeTm, 2, 0), (Tau::TeTm, 2, 2),
    ];

    #[test]
    fn printed_zz_entry_for_field_below() {
        let (a, b) = (ctx(C64::new(1.0, 0.0), 0.6, 0.4), ctx(C64::new(1.0, 0.0), 1.7, -2.0));
        let (rz, rpz) = (0.3, 0.45);
        let v = kernel_entry(Tau::Tm, 2, 2, Ordering::Lesser, &a, &b, rz, rpz, 0.9);
        let i = C64::new(0.0, 1.0);
        let expected = ((-2.0 * i * a.kz * rz).exp() + (-2.0 * i * b.kz * rpz).exp()) * (0.6f64.powi(4) * 1.7f64.powi(4));
        assert!((v - expected).norm() < 1e-13 * expected.norm());
    }

    proptest! {
        #[test]
        fn te_type_entries_with_z_vanish(k in 0.0f64..3.0, kp in 0.0f64..3.0, p in 0.0f64..6.3, pp in 0.0f64..6.3, less in any::<bool>()) {
            let o = if less { Ordering::Lesser } else { Ordering::Greater };
            let (a, b) = (ctx(C64::new(1.0, 1e-6), k, p), ctx(C64::new(1.0, 1e-6), kp, pp));
            for (tau, i, j) in ZEROS {
                prop_assert_eq!(kernel_entry(tau, i, j, o, &a, &b, 0.7, 0.7, 0.2), C64::new(0.0, 0.0));
                let (yi, yj) = (if i == 0 { 1 } else { i }, if j == 0 { 1 } else { j });
                prop_assert_eq!(kernel_entry(tau, yi, yj, o, &a, &b, 0.7, 0.7, 0.2), C64::new(0.0, 0.0));
            }
        }

        #[test]
        fn xy_symmetry(k in 0.0f64..3.0, kp in 0.0f64..3.0, p in 0.0f64..6.3, pp in 0.0f64..6.3, less in any::<bool>()) {
            let o = if less { Ordering::Lesser } else { Ordering::Greater };
            let w = C64::new(1.3, 0.0);
            let (a, b) = (ctx(w, k, p), ctx(w, kp, pp));
            // Exchanging k_x and k_y is φ → π/2 − φ.
            let (sa, sb) = (ctx(w, k, 0.5 * std::f64::consts::PI - p), ctx(w, kp, 0.5 * std::f64::consts::PI - pp));
            for tau in Tau::ALL {
                let m = kernel_matrix(tau, o, &a, &b, 0.8, 0.8, 0.3);
                let s = kernel_matrix(tau, o, &sa, &sb, 0.8, 0.8, 0.3);
                let scale = m.max_abs().max(1e-300);
                for (u, v) in [((1, 1), (0, 0)), ((1, 2), (0, 2)), ((2, 1), (2, 0))] {
                    prop_assert!((m[u] - s[v]).norm() <= 1e-12 * scale);
                }
                prop_assert!((m[(1, 0)] - m[(0, 1)]).norm() <= 1e-12 * scale);
            }
        }
    }
}
