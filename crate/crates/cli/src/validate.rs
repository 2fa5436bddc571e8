//! Self-checks against the independent oracles and the closed-form limits.

use std::f64::consts::PI;
use std::time::Instant;

use lithoqed_core::born::{born_correction, BornMethod, BornSettings, BornTerms};
use lithoqed_core::green::{halfspace_decay_closed_forms, halfspace_gf, vacuum_im_coincidence_numeric};
use lithoqed_core::observables::{cp_force, cp_potential, decay_rate_halfspace};
use lithoqed_core::oracle::{
    born_correction_riemann, catalogue_structure_check, convergence_order, random_operator_check, OracleConfig,
};
use lithoqed_core::quadrature::AdaptiveOptions;
use lithoqed_core::{
    AtomModel, DepositionGeometry, Frequency, GreenPart, HalfSpace, MaterialModel, Polarization, QuadratureConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = (&'static str, fn(Level) -> (bool, String));

const CHECKS: &[Check] = &[
    ("kernel zeros and xy symmetry", structure),
    ("kernel catalogue vs operator oracle", operator),
    ("free-space coincidence limit", free_space),
    ("mirror decay rates vs closed forms", mirror_rates),
    ("Born correction vs Riemann oracle", riemann),
    ("half-space reciprocity", reciprocity),
    ("non-retarded Casimir-Polder limit", casimir),
];

pub fn run(level: Level, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let (passed, detail) = f(level);
            let o = Outcome { name, passed, detail, seconds: t.elapsed().as_secs_f64() };
            report(&o);
            o
        })
        .collect()
}

fn pick<T>(level: Level, quick: T, full: T) -> T {
    match level {
        Level::Quick => quick,
        Level::Full => full,
    }
}

fn mirror() -> HalfSpace {
    HalfSpace::new(MaterialModel::PerfectMirror).expect("mirror substrate")
}

fn structure(level: Level) -> (bool, String) {
    let r = catalogue_structure_check(pick(level, 20, 100), 17);
    (r.zeros_exact && r.symmetry <= 1e-12, format!("zeros exact: {}, symmetry deviation {:.1e}", r.zeros_exact, r.symmetry))
}

fn operator(level: Level) -> (bool, String) {
    let worst = random_operator_check(pick(level, 10, 100), &OracleConfig::default());
    (worst < 1e-6, format!("max rel deviation {worst:.2e}"))
}

fn free_space(_: Level) -> (bool, String) {
    let opts = AdaptiveOptions { rel_tol: 1e-10, abs_tol: 1e-16, max_subdivisions: 100 };
    let mut worst: f64 = 0.0;
    for w in [0.3, 1.0, 7.5] {
        let Ok(im) = Frequency::real(w).and_then(|f| vacuum_im_coincidence_numeric(&f, &opts)) else {
            return (false, "evaluation failed".into());
        };
        worst = im.iter().map(|v| (v * 6.0 * PI / w - 1.0).abs()).fold(worst, f64::max);
    }
    (worst < 1e-6, format!("max rel deviation {worst:.2e}"))
}

fn mirror_rates(level: Level) -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-8, abs_tol: 1e-14, ..Default::default() };
    let st = BornSettings { closed_form_substrate: false, ..Default::default() };
    let n = pick(level, 5, 41);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let z = 0.1 * 100f64.powf(i as f64 / (n - 1) as f64);
        let (par, perp) = halfspace_decay_closed_forms(z, 1.0);
        for (p, exact) in [(Polarization::X, par), (Polarization::Z, perp)] {
            let atom = AtomModel::new(1.0, 1.0, p).expect("atom");
            let Ok(r) = decay_rate_halfspace(&atom, &mirror(), &[0.0, 0.0, z], &st, &cfg) else {
                return (false, format!("evaluation failed at z = {z}"));
            };
            worst = worst.max((r.delta_gamma_surface - exact).abs() / exact.abs().max(1e-3 * atom.gamma0()));
        }
    }
    (worst < 1e-4, format!("max rel deviation of ΔΓ∥, ΔΓ⊥ over ω_A z ∈ [0.1, 10]: {worst:.2e}"))
}

fn riemann(level: Level) -> (bool, String) {
    let geo = DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: 1.8 }).expect("cube");
    let f = Frequency::real(1.0).expect("frequency");
    let r = [0.25, -0.15, 2.0];
    let method = pick(level, BornMethod::Spatial, BornMethod::KSpace);
    let st = BornSettings { method, terms: BornTerms::Complete, ..Default::default() };
    let cfg = QuadratureConfig { rel_tol: pick(level, 1e-9, 1e-6), spatial_nodes: 40, ..Default::default() };
    let Ok(reference) = born_correction(&mirror(), &geo, &r, &r, &f, &st, &cfg) else {
        return (false, "reference evaluation failed".into());
    };
    let cells: &[usize] = pick(level, &[5, 10], &[5, 10, 20, 40]);
    let inner = QuadratureConfig { rel_tol: 1e-9, abs_tol: 1e-15, ..Default::default() };
    let mut devs = Vec::new();
    for &n in cells {
        let o = OracleConfig { cells_per_axis: n, ..Default::default() };
        match born_correction_riemann(&mirror(), &geo, &r, &r, &f, &o, &inner) {
            Ok(v) => devs.push(v.value.rel_dev(&reference.value)),
            Err(e) => return (false, e.to_string()),
        }
    }
    let slope = convergence_order(cells, &devs);
    let last = *devs.last().expect("at least one resolution");
    let bound = pick(level, 1e-2, 1e-3);
    (
        last < bound && (slope - 2.0).abs() <= 0.3,
        format!("rel diff {last:.2e} at {}³ cells, observed order {slope:.2}", cells[cells.len() - 1]),
    )
}

fn reciprocity(level: Level) -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-11, abs_tol: 1e-16, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for substrate in [MaterialModel::Constant { epsilon: 1.8 }, MaterialModel::PerfectMirror] {
        let env = HalfSpace::new(substrate).expect("substrate");
        for _ in 0..pick(level, 5, 50) {
            let mut pt = || [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.1..2.0)];
            let (r, rp) = (pt(), pt());
            let Ok(f) = Frequency::real(rng.gen_range(0.3..3.0)) else { continue };
            match (
                halfspace_gf(&env, &r, &rp, &f, GreenPart::Whole, &cfg),
                halfspace_gf(&env, &rp, &r, &f, GreenPart::Whole, &cfg),
            ) {
                (Ok(a), Ok(b)) => worst = worst.max(a.entries.rel_dev(&b.entries.transpose())),
                _ => return (false, "evaluation failed".into()),
            }
        }
    }
    (worst < 1e-8, format!("max rel asymmetry {worst:.2e}"))
}

fn casimir(level: Level) -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-6, abs_tol: 1e-14, ..Default::default() };
    let st = BornSettings { closed_form_substrate: false, ..Default::default() };
    let atom = AtomModel::new(1.0, 1.0, Polarization::Isotropic).expect("atom");
    let (z, empty) = (0.01, DepositionGeometry::empty());
    let p = [0.0, 0.0, z];
    let Ok(u) = cp_potential(&atom, &mirror(), &empty, &p, &st, &cfg) else {
        return (false, "potential evaluation failed".into());
    };
    let du = (u.u_total / atom.u0(z) - 1.0).abs();
    if level == Level::Quick {
        return (du < 0.02, format!("|U/U₀ − 1| = {du:.2e}"));
    }
    let Ok(f) = cp_force(&atom, &mirror(), &empty, &p, &[0.0, 0.0, 1.0], &st, &cfg) else {
        return (false, "force evaluation failed".into());
    };
    let df = (f.force / atom.f0(z) - 1.0).abs();
    (du < 0.02 && df < 0.02, format!("|U/U₀ − 1| = {du:.2e}, |F/F₀ − 1| = {df:.2e}"))
}
