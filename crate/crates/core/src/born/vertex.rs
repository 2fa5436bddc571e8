//! Plane-wave vertex tensors of the half-space expansion and their contractions.
//!
//! With t = (k_y, −k_x, 0), p = (−k_x k_z, −k_y k_z, k∥²) and p̃ = (k_x k_z, k_y k_z, k∥²),
//! each factor of W carries t⊗t for TE waves and one of p⊗p, p̃⊗p̃, p⊗p̃ (over ω²)
//! for TM waves. Vectors here are divided by k∥.

use serde::{Deserialize, Serialize};

use crate::kinematics::WaveContext;
use crate::tensor::{Mat3, C64};

/// Position of the field-side coordinate relative to s_z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering {
    Greater,
    Lesser,
}

/// How the two Green-tensor factors of the Born term are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Contraction {
    /// Σ_l W_il(r, s) W_lj(s, r′).
    Matrix,
    /// W_ij(r, s) W_ij(s, r′), as in the kernel catalogue.
    Elementwise,
}

#[derive(Clone, Copy, Debug)]
pub struct Piece {
    pub a: [C64; 3],
    pub b: [C64; 3],
    pub w: C64,
}

/// Direct (TE, TM) and reflected (TE, TM) pieces of one Green-tensor factor.
#[derive(Clone, Copy, Debug)]
pub struct Side {
    pub dir: [Piece; 2],
    pub refl: [Piece; 2],
}

fn unit(ctx: &WaveContext) -> (f64, f64) {
    if ctx.k_par > 0.0 {
        (ctx.kx / ctx.k_par, ctx.ky / ctx.k_par)
    } else {
        ctx.phi.sin_cos()
    }
}

/// Vertex pieces for a factor whose field point lies above (`field_above`) or below
/// its source point.
pub fn side(ctx: &WaveContext, field_above: bool) -> Side {
    let (ux, uy) = unit(ctx);
    let kz = ctx.kz;
    let k = C64::new(ctx.k_par, 0.0);
    let z = C64::new(0.0, 0.0);
    let t = [C64::new(uy, 0.0), C64::new(-ux, 0.0), z];
    let p = [-kz * ux, -kz * uy, k];
    let pt = [kz * ux, kz * uy, k];
    let inv_w2 = 1.0 / ctx.omega_sq();
    let one = C64::new(1.0, 0.0);
    let tm_dir = if field_above { p } else { pt };
    Side {
        dir: [Piece { a: t, b: t, w: one }, Piece { a: tm_dir, b: tm_dir, w: inv_w2 }],
        refl: [Piece { a: t, b: t, w: ctx.r_te }, Piece { a: p, b: pt, w: ctx.r_tm * inv_w2 }],
    }
}

fn pair(p: &Piece, q: &Piece, c: Contraction, out: &mut Mat3) {
    let w = p.w * q.w;
    if w == C64::new(0.0, 0.0) {
        return;
    }
    match c {
        Contraction::Matrix => {
            let s = w * (p.b[0] * q.a[0] + p.b[1] * q.a[1] + p.b[2] * q.a[2]);
            for i in 0..3 {
                let ai = p.a[i] * s;
                for j in 0..3 {
                    out.0[i][j] += ai * q.b[j];
                }
            }
        }
        Contraction::Elementwise => {
            for i in 0..3 {
                let ai = p.a[i] * q.a[i] * w;
                for j in 0..3 {
                    out.0[i][j] += ai * p.b[j] * q.b[j];
                }
            }
        }
    }
}

fn combine(ps: &[Piece], qs: &[Piece], c: Contraction) -> Mat3 {
    let mut out = Mat3::ZERO;
    for p in ps {
        for q in qs {
            pair(p, q, c, &mut out);
        }
    }
    out
}

/// Contracted tensors for the four direct/reflected combinations of the two factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Groups {
    pub dd: Mat3,
    pub dr: Mat3,
    pub rd: Mat3,
    pub rr: Mat3,
}

pub fn groups(a: &Side, b: &Side, c: Contraction) -> Groups {
    Groups {
        dd: combine(&a.dir, &b.dir, c),
        dr: combine(&a.dir, &b.refl, c),
        rd: combine(&a.refl, &b.dir, c),
        rr: combine(&a.refl, &b.refl, c),
    }
}

/// Sides for orderings `oa` (r_z vs s_z) and `ob` (r′_z vs s_z).
pub fn sides(oa: Ordering, ob: Ordering, ctx: &WaveContext, ctxp: &WaveContext) -> (Side, Side) {
    (side(ctx, oa == Ordering::Greater), side(ctxp, ob == Ordering::Lesser))
}

/// The reflection-free kernel in catalogue normalisation, ω⁴ k∥² k∥′² (D_A ⊙ D_B).
pub fn free_kernel(oa: Ordering, ob: Ordering, ctx: &WaveContext, ctxp: &WaveContext) -> Mat3 {
    let (a, b) = sides(oa, ob, ctx, ctxp);
    let w2 = ctx.omega_sq();
    combine(&a.dir, &b.dir, Contraction::Elementwise) * (w2 * w2 * (ctx.k_par * ctx.k_par * ctxp.k_par * ctxp.k_par))
}
