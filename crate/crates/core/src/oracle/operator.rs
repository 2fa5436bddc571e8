use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::born::{free_entry, kernel_entry, Ordering, Tau};
use crate::kinematics::WaveContext;
use crate::material::MaterialModel;
use crate::tensor::{Mat3, C64};

use super::OracleConfig;

/// Arguments of one catalogue comparison: a frequency, two in-plane wave vectors
/// and the field, source and scattering points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorSample {
    pub omega: C64,
    pub k: [f64; 2],
    pub phi: [f64; 2],
    pub r: [f64; 3],
    pub rp: [f64; 3],
    pub s: [f64; 3],
}

impl OperatorSample {
    fn contexts(&self) -> (WaveContext, WaveContext) {
        let c = |k, phi| WaveContext::complex(self.omega, k, phi, &MaterialModel::Vacuum).expect("vacuum context");
        (c(self.k[0], self.phi[0]), c(self.k[1], self.phi[1]))
    }

    /// A random sample with both r_z and r′_z on the given side of s_z, separated
    /// by at least 0.3.
    pub fn random(ordering: Ordering, rng: &mut impl Rng) -> Self {
        let omega = C64::new(rng.gen_range(0.5..2.0), 1e-6);
        let mut lateral = || [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let (a, b, c) = (lateral(), lateral(), lateral());
        let (rz, rpz, sz) = match ordering {
            Ordering::Greater => {
                let sz = rng.gen_range(0.1..1.0);
                (sz + rng.gen_range(0.3..1.5), sz + rng.gen_range(0.3..1.5), sz)
            }
            Ordering::Lesser => {
                let (rz, rpz): (f64, f64) = (rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0));
                (rz, rpz, rz.max(rpz) + rng.gen_range(0.3..1.5))
            }
        };
        let tau = std::f64::consts::TAU;
        OperatorSample {
            omega,
            k: [rng.gen_range(0.05..3.0), rng.gen_range(0.05..3.0)],
            phi: [rng.gen_range(0.0..tau), rng.gen_range(0.0..tau)],
            r: [a[0], a[1], rz],
            rp: [b[0], b[1], rpz],
            s: [c[0], c[1], sz],
        }
    }
}

type Point = [f64; 6];

// Scalar plane-wave factor e^{ik∥·(x∥ − x′∥)} F(z, z′) of one Green factor, split
// into its direct and reflected parts, as a function of (field point, source point).
fn factor(ctx: &WaveContext, reflected: bool) -> impl Fn(&Point) -> C64 + '_ {
    let i = C64::new(0.0, 1.0);
    move |p: &Point| {
        let lateral = ctx.kx * (p[0] - p[3]) + ctx.ky * (p[1] - p[4]);
        let (hi, lo) = if p[2] > p[5] { (p[2], p[5]) } else { (p[5], p[2]) };
        let z = if reflected { (i * ctx.kz * lo).exp() } else { (-i * ctx.kz * lo).exp() };
        (i * lateral).exp() * z * (i * ctx.kz * hi).exp()
    }
}

// Central fourth-order differences, nested once per listed variable, with a step
// per variable.
fn partial(f: &dyn Fn(&Point) -> C64, vars: &[usize], p: Point, h: &Point) -> C64 {
    let Some((&v, rest)) = vars.split_first() else {
        return f(&p);
    };
    let mut acc = C64::new(0.0, 0.0);
    for (m, c) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
        let mut q = p;
        q[v] += m * h[v];
        acc += partial(f, rest, q, h) * c;
    }
    acc / (12.0 * h[v])
}

fn richardson(f: &dyn Fn(&Point) -> C64, vars: &[usize], p: Point, h: &Point) -> C64 {
    let half = h.map(|x| 0.5 * x);
    (partial(f, vars, p, &half) * 16.0 - partial(f, vars, p, h)) / 15.0
}

// Steps matched to the wave number along each coordinate, so that every nested
// difference resolves its own oscillation; z steps also stay inside one ordering branch.
fn steps(ctx: &WaveContext, p: &Point, fd_step: f64) -> Point {
    let floor = 1e-3 * [ctx.k_par, ctx.omega.norm(), ctx.kz.norm()].into_iter().fold(0.0, f64::max);
    let h = |k: f64| fd_step / k.abs().max(floor);
    let hz = h(ctx.kz.norm()).min(0.2 * (p[2] - p[5]).abs());
    [h(ctx.kx), h(ctx.ky), hz, h(ctx.kx), h(ctx.ky), hz]
}

#[derive(Clone, Copy, PartialEq)]
enum Pol {
    Te,
    Tm,
}

// Components of ∇×ẑ (TE) and ∇×∇×ẑ (TM) as signed lists of derivatives in x, y, z.
fn operator_row(pol: Pol, i: usize) -> Vec<(f64, Vec<usize>)> {
    match (pol, i) {
        (Pol::Te, 0) => vec![(1.0, vec![1])],
        (Pol::Te, 1) => vec![(-1.0, vec![0])],
        (Pol::Te, _) => vec![],
        (Pol::Tm, 0) => vec![(1.0, vec![0, 2])],
        (Pol::Tm, 1) => vec![(1.0, vec![1, 2])],
        (Pol::Tm, _) => vec![(-1.0, vec![0, 0]), (-1.0, vec![1, 1])],
    }
}

// D_σ applied to one factor: field-point operator on variables 0..3, source-point
// operator on 3..6; TM carries 1/ω².
fn applied(pol: Pol, f: &dyn Fn(&Point) -> C64, p: Point, omega: C64, h: &Point) -> Mat3 {
    let scale = if pol == Pol::Tm { 1.0 / (omega * omega) } else { C64::new(1.0, 0.0) };
    Mat3::from_fn(|i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for (ca, va) in operator_row(pol, i) {
            for (cb, vb) in operator_row(pol, j) {
                let vars: Vec<usize> = va.iter().copied().chain(vb.iter().map(|v| v + 3)).collect();
                acc += richardson(f, &vars, p, h) * (ca * cb);
            }
        }
        acc * scale
    })
}

struct Factors {
    dir: Mat3,
    te: Mat3,
    tm: Mat3,
}

fn factors(ctx: &WaveContext, p: Point, fd_step: f64) -> Factors {
    let (d, r) = (factor(ctx, false), factor(ctx, true));
    let h = steps(ctx, &p, fd_step);
    Factors {
        dir: applied(Pol::Te, &d, p, ctx.omega, &h) + applied(Pol::Tm, &d, p, ctx.omega, &h),
        te: applied(Pol::Te, &r, p, ctx.omega, &h),
        tm: applied(Pol::Tm, &r, p, ctx.omega, &h),
    }
}

fn finite_difference_kernels(sample: &OperatorSample, cfg: &OracleConfig) -> (WaveContext, WaveContext, [Mat3; 6]) {
    let (ctx, ctxp) = sample.contexts();
    let (r, rp, s) = (sample.r, sample.rp, sample.s);
    let a = factors(&ctx, [r[0], r[1], r[2], s[0], s[1], s[2]], cfg.fd_step);
    let b = factors(&ctxp, [s[0], s[1], s[2], rp[0], rp[1], rp[2]], cfg.fd_step);
    let i = C64::new(0.0, 1.0);
    let phase = (i * (ctx.kx * (r[0] - s[0]) + ctx.ky * (r[1] - s[1]) + ctxp.kx * (s[0] - rp[0]) + ctxp.ky * (s[1] - rp[1]))
        + i * (ctx.kz * (r[2] + s[2]) + ctxp.kz * (rp[2] + s[2])))
        .exp();
    let w2 = ctx.omega * ctx.omega;
    let norm = w2 * w2 / phase;
    let k = |x: &Mat3, y: &Mat3| x.hadamard(y) * norm;
    let kernels = [
        k(&a.dir, &b.te) + k(&a.te, &b.dir),
        k(&a.dir, &b.tm) + k(&a.tm, &b.dir),
        k(&a.te, &b.te),
        k(&a.tm, &b.tm),
        k(&a.te, &b.tm) + k(&a.tm, &b.te),
        k(&a.dir, &b.dir),
    ];
    (ctx, ctxp, kernels)
}

fn deviation(oracle: &Mat3, analytic: &Mat3) -> f64 {
    let scale = analytic.max_abs();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let (o, a) = (oracle[(i, j)], analytic[(i, j)]);
            let d = if a == C64::new(0.0, 0.0) {
                o.norm()
            } else {
                (o - a).norm() / a.norm().max(1e-3 * scale)
            };
            worst = worst.max(d);
        }
    }
    worst
}

fn tau_index(tau: Tau) -> usize {
    match tau {
        Tau::Te => 0,
        Tau::Tm => 1,
        Tau::TeTe => 2,
        Tau::TmTm => 3,
        Tau::TeTm => 4,
    }
}

/// Worst deviation between the catalogue entries K^τ_ij (or, for `tau = None`, the
/// reflection-free term) and the finite-difference operator oracle at one sample.
/// Entries are compared relatively; where the catalogue is exactly zero the oracle
/// value itself is reported.
pub fn kernel_operator_check(tau: Option<Tau>, ordering: Ordering, sample: &OperatorSample, cfg: &OracleConfig) -> f64 {
    let (ctx, ctxp, kernels) = finite_difference_kernels(sample, cfg);
    let (rz, rpz, sz) = (sample.r[2], sample.rp[2], sample.s[2]);
    let analytic = Mat3::from_fn(|i, j| match tau {
        Some(t) => kernel_entry(t, i, j, ordering, &ctx, &ctxp, rz, rpz, sz),
        None => free_entry(i, j, ordering, &ctx, &ctxp, rz, rpz, sz),
    });
    let oracle = kernels[tau.map_or(5, tau_index)];
    let scale = analytic.max_abs().max(oracle.max_abs());
    // Zero entries are compared on the scale of the whole matrix.
    let zeros = Mat3::from_fn(|i, j| if analytic[(i, j)] == C64::new(0.0, 0.0) { oracle[(i, j)] / scale } else { C64::new(0.0, 0.0) });
    deviation(&oracle, &analytic).max(zeros.max_abs())
}

/// Worst deviation over `samples` random samples per ordering, for all τ and the
/// reflection-free term.
pub fn random_operator_check(samples: usize, cfg: &OracleConfig) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        for ordering in [Ordering::Greater, Ordering::Lesser] {
            let sample = OperatorSample::random(ordering, &mut rng);
            for tau in Tau::ALL.map(Some).into_iter().chain([None]) {
                worst = worst.max(kernel_operator_check(tau, ordering, &sample, cfg));
            }
        }
    }
    worst
}
