use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lithoqed_core::born::{born_correction, BornMethod, BornSettings, BornTerms};
use lithoqed_core::green::{halfspace_decay_closed_forms, halfspace_gf, vacuum_im_coincidence_numeric};
use lithoqed_core::observables::{cp_force, cp_potential, decay_rate_deposition, decay_rate_halfspace};
use lithoqed_core::oracle::{
    born_correction_riemann, catalogue_structure_check, convergence_order, random_operator_check, OracleConfig, ZERO_ENTRIES,
};
use lithoqed_core::quadrature::AdaptiveOptions;
use lithoqed_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
    budget: Duration,
    elapsed: Duration,
    known_deviation: bool,
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn run(name: &'static str, budget: Duration, known_deviation: bool, f: impl FnOnce() -> (bool, String)) -> Check {
    let t = Instant::now();
    let (passed, detail) = f();
    let elapsed = t.elapsed();
    Check { name, passed: passed && elapsed <= budget, detail, budget, elapsed, known_deviation }
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| scope.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn mirror() -> HalfSpace {
    HalfSpace::new(MaterialModel::PerfectMirror).unwrap()
}

fn atom(omega: f64, p: Polarization) -> AtomModel {
    AtomModel::new(omega, 1.0, p).unwrap()
}

fn grating() -> DepositionGeometry {
    let spec = GratingSpec { strips: 5, width: 1.0, height: 1.0, length: 5.0, x0: None };
    DepositionGeometry::grating(&spec, MaterialModel::Constant { epsilon: 1.8 }).unwrap()
}

fn grating_cfg() -> QuadratureConfig {
    QuadratureConfig { rel_tol: 1e-3, spatial_nodes: 16, ..Default::default() }
}

fn free_space_rate() -> (bool, String) {
    let opts = AdaptiveOptions { rel_tol: 1e-10, abs_tol: 1e-16, max_subdivisions: 100 };
    let mut worst: f64 = 0.0;
    for w in [0.3, 1.0, 7.5] {
        let im = vacuum_im_coincidence_numeric(&Frequency::real(w).unwrap(), &opts).unwrap();
        let exact = w / (6.0 * PI);
        worst = worst.max(im.iter().map(|v| (v / exact - 1.0).abs()).fold(0.0, f64::max));
    }
    (worst < 1e-6, format!("max rel err {worst:.2e}"))
}

fn mirror_limits() -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-8, abs_tol: 1e-14, ..Default::default() };
    let st = BornSettings { closed_form_substrate: false, ..Default::default() };
    let env = mirror();
    let (perp_atom, par_atom) = (atom(1.0, Polarization::Z), atom(1.0, Polarization::X));
    let rate = |a: &AtomModel, z: f64| decay_rate_halfspace(a, &env, &[0.0, 0.0, z], &st, &cfg).unwrap();
    let perp0 = rate(&perp_atom, 1e-3).gamma_total / perp_atom.gamma0();
    let par0 = rate(&par_atom, 1e-3).gamma_total / par_atom.gamma0();
    let limits = (perp0 - 2.0).abs() <= 0.005 && par0.abs() <= 0.005;

    let heights: Vec<f64> = (0..=60).map(|i| 0.1 * 100f64.powf(i as f64 / 60.0)).collect();
    let devs = par_map(&heights, |&z| {
        let (par, perp) = halfspace_decay_closed_forms(z, 1.0);
        let g0 = perp_atom.gamma0();
        let (cz, cx) = (1.0 + perp / g0, 1.0 + par / g0);
        let qz = rate(&perp_atom, z).gamma_total / g0;
        let qx = rate(&par_atom, z).gamma_total / g0;
        ((qz / cz - 1.0).abs()).max((qx / cx - 1.0).abs())
    });
    let worst = devs.iter().cloned().fold(0.0, f64::max);
    (limits && worst < 1e-4, format!("Γ⊥/Γ₀ = {perp0:.4}, Γ∥/Γ₀ = {par0:.4} at ωz = 1e-3; curve max rel dev {worst:.2e}"))
}

fn kernel_catalogue() -> (bool, String) {
    let worst = random_operator_check(100, &OracleConfig::default());
    let st = catalogue_structure_check(100, 17);
    (
        worst < 1e-6 && st.zeros_exact && st.symmetry <= 1e-12,
        format!(
            "operator oracle max rel dev {worst:.2e}; {} zero entries exact: {}; xy symmetry {:.1e}",
            2 * ZERO_ENTRIES.len(),
            st.zeros_exact,
            st.symmetry
        ),
    )
}

fn born_oracle() -> (bool, String) {
    let geo = DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: 1.8 }).unwrap();
    let env = mirror();
    let f = Frequency::real(1.0).unwrap();
    let r = [0.25, -0.15, 2.0];
    let st = BornSettings { method: BornMethod::KSpace, terms: BornTerms::Complete, ..Default::default() };
    let analytic = born_correction(&env, &geo, &r, &r, &f, &st, &QuadratureConfig { rel_tol: 1e-6, ..Default::default() }).unwrap().value;
    let inner = QuadratureConfig { rel_tol: 1e-9, abs_tol: 1e-15, ..Default::default() };
    let cells = [5usize, 10, 20, 40];
    let devs = par_map(&cells, |&n| {
        let o = OracleConfig { cells_per_axis: n, ..Default::default() };
        born_correction_riemann(&env, &geo, &r, &r, &f, &o, &inner).unwrap().value.rel_dev(&analytic)
    });
    let slope = convergence_order(&cells, &devs);
    let last = devs[3];
    (last < 1e-3 && (slope - 2.0).abs() <= 0.3, format!("rel dev at 40³ cells {last:.2e}; order {slope:.3} (devs {})", devs.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(" ")))
}

fn non_retarded_reference() -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-6, abs_tol: 1e-14, ..Default::default() };
    let st = BornSettings { closed_form_substrate: false, ..Default::default() };
    let a = atom(1.0, Polarization::Isotropic);
    let z = 0.01;
    let p = [0.0, 0.0, z];
    let empty = DepositionGeometry::empty();
    let u = cp_potential(&a, &mirror(), &empty, &p, &st, &cfg).unwrap();
    let f = cp_force(&a, &mirror(), &empty, &p, &[0.0, 0.0, 1.0], &st, &cfg).unwrap();
    let (du, df) = ((u.u_total / a.u0(z) - 1.0).abs(), (f.force / a.f0(z) - 1.0).abs());
    (du < 0.02 && df < 0.02, format!("U/U₀ − 1 = {du:.2e}, F/F₀ − 1 = {df:.2e}"))
}

fn gradient_consistency() -> (bool, String) {
    let geo = grating();
    let env = mirror();
    let a = atom(0.01, Polarization::Isotropic);
    let cfg = grating_cfg();
    let st = BornSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let points: Vec<Vec3> =
        (0..20).map(|_| [rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0), rng.gen_range(1.2..2.0)]).collect();
    let devs = par_map(&points, |p| {
        let u = |q: Vec3| cp_potential(&a, &env, &geo, &q, &st, &cfg).unwrap().u_total;
        // Five-point stencil at a step unrelated to the force routine's.
        let h = 0.03 * p[2].min(geo.distance(p));
        let mut grad = [0.0; 3];
        for (k, g) in grad.iter_mut().enumerate() {
            let at = |t: f64| {
                let mut q = *p;
                q[k] += t;
                u(q)
            };
            *g = -(at(-2.0 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2.0 * h)) / (12.0 * h);
        }
        let scale = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let mut worst: f64 = 0.0;
        for k in [0, 2] {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            let f = cp_force(&a, &env, &geo, p, &e, &st, &cfg).unwrap().force;
            worst = worst.max((f - grad[k]).abs() / scale);
        }
        worst
    });
    let worst = devs.iter().cloned().fold(0.0, f64::max);
    (worst < 1e-4, format!("max |F − (−∇U)|/|∇U| over 20 points, x and z components: {worst:.2e}"))
}

struct GratingScan {
    modulation: (bool, String),
    sign_pattern: (bool, String),
    edge_force: (bool, String),
}

fn grating_scan() -> GratingScan {
    let geo = grating();
    let env = mirror();
    let a = atom(0.01, Polarization::Isotropic);
    let cfg = grating_cfg();
    let st = BornSettings::default();
    // Height 0.25 above the strip tops.
    let z = geo.top() + 0.25;
    let x0 = -4.25;

    // Five full periods starting at the first strip edge.
    let xs: Vec<f64> = (0..40).map(|i| x0 + 0.25 * i as f64).collect();
    let du: Vec<f64> = par_map(&xs, |&x| {
        let r = cp_potential(&a, &env, &geo, &[x, 0.0, z], &st, &cfg).unwrap();
        r.delta_u_deposition / r.u0_reference
    });
    let n = du.len();
    let mean = du.iter().sum::<f64>() / n as f64;
    let power: Vec<f64> = (1..n / 2)
        .map(|m| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, v) in du.iter().enumerate() {
                let t = 2.0 * PI * (m * j) as f64 / n as f64;
                re += (v - mean) * t.cos();
                im += (v - mean) * t.sin();
            }
            re * re + im * im
        })
        .collect();
    let dominant = 1 + power.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    let period = 0.25 * n as f64 / dominant as f64;
    let modulation = ((period - 2.0).abs() < 1e-12, format!("dominant lateral period {period} (strip pitch 2w = 2)"));

    // Strip centres sit at x0 + 0.5 + 2k, gap centres at x0 + 1.5 + 2k.
    let at = |x: f64| du[((x - x0) / 0.25).round() as usize];
    let strips: Vec<f64> = (0..5).map(|k| at(x0 + 0.5 + 2.0 * k as f64)).collect();
    let gaps: Vec<f64> = (0..4).map(|k| at(x0 + 1.5 + 2.0 * k as f64)).collect();
    let min_strip = strips.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_gap = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sign_pattern = (
        min_strip > mean && max_gap < mean && min_strip > 0.0,
        format!("ΔU/U₀ above strips ≥ {min_strip:.4}, between strips ≤ {max_gap:.4}, lateral mean {mean:.4}"),
    );

    // Lateral force over one period past the last strip edge at x = 4.75.
    let edge = x0 + 9.0;
    let fx: Vec<(f64, f64, f64)> = par_map(&(0..=16).map(|i| edge + 0.125 * i as f64).collect::<Vec<_>>(), |&x| {
        let f = cp_force(&a, &env, &geo, &[x, 0.0, z], &[1.0, 0.0, 0.0], &st, &cfg).unwrap();
        (x, f.force / f.f0_reference.abs(), f.error / f.f0_reference.abs())
    });
    let nonzero = fx.iter().all(|(_, f, e)| f.abs() > 10.0 * e);
    let changes = fx.windows(2).filter(|w| w[0].1.signum() != w[1].1.signum()).count();
    let listing: Vec<String> = fx.iter().step_by(2).map(|(x, f, _)| format!("{x:.2}:{f:+.2e}")).collect();
    let edge_force = (
        nonzero && changes >= 2,
        format!("Fx/|F₀| sign changes over [4.75, 6.75]: {changes} (a full oscillation needs 2); nonzero: {nonzero}; {}", listing.join(" ")),
    );
    GratingScan { modulation, sign_pattern, edge_force }
}

fn linearity() -> (bool, String) {
    let env = mirror();
    let cfg = QuadratureConfig { rel_tol: 1e-4, ..Default::default() };
    let st = BornSettings::default();
    let geo = |eps: f64| DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: eps }).unwrap();
    let (full, half) = (geo(1.5), geo(1.25));
    let p = [0.2, 0.1, 1.3];
    let d = atom(1.0, Polarization::X);
    let g1 = decay_rate_deposition(&d, &env, &full, &p, &st, &cfg).unwrap().delta_gamma_deposition;
    let g2 = decay_rate_deposition(&d, &env, &half, &p, &st, &cfg).unwrap().delta_gamma_deposition;
    let c = atom(0.5, Polarization::Isotropic);
    let u1 = cp_potential(&c, &env, &full, &p, &st, &cfg).unwrap().delta_u_deposition;
    let u2 = cp_potential(&c, &env, &half, &p, &st, &cfg).unwrap().delta_u_deposition;
    let (eg, eu) = ((g1 - 2.0 * g2).abs() / g1.abs(), (u1 - 2.0 * u2).abs() / u1.abs());
    (eg <= 4.0 * f64::EPSILON && eu <= 4.0 * f64::EPSILON, format!("rel dev from exact halving: Γ {eg:.1e}, U {eu:.1e}"))
}

fn reciprocity() -> (bool, String) {
    let cfg = QuadratureConfig { rel_tol: 1e-11, abs_tol: 1e-16, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for substrate in [MaterialModel::Constant { epsilon: 1.8 }, MaterialModel::PerfectMirror] {
        let env = HalfSpace::new(substrate).unwrap();
        for _ in 0..50 {
            let mut pt = || [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.1..2.0)];
            let (r, rp) = (pt(), pt());
            let f = Frequency::real(rng.gen_range(0.3..3.0)).unwrap();
            let a = halfspace_gf(&env, &r, &rp, &f, GreenPart::Whole, &cfg).unwrap().entries;
            let b = halfspace_gf(&env, &rp, &r, &f, GreenPart::Whole, &cfg).unwrap().entries;
            worst = worst.max(a.rel_dev(&b.transpose()));
        }
    }
    (worst < 1e-8, format!("max rel asymmetry {worst:.2e} over 100 pairs"))
}

fn main() -> ExitCode {
    let mut checks = vec![
        run("1 free-space rate", Duration::from_secs(1), false, free_space_rate),
        run("2 mirror limits and curves", Duration::from_secs(10), false, mirror_limits),
        run("3 kernel catalogue", Duration::from_secs(30), false, kernel_catalogue),
        run("4 Born oracle equivalence", minutes(10), false, born_oracle),
        run("5 non-retarded reference", minutes(1), false, non_retarded_reference),
        run("6 gradient consistency", minutes(10), false, gradient_consistency),
    ];
    let t = Instant::now();
    let scan = grating_scan();
    let elapsed = t.elapsed();
    for (name, (passed, detail), known) in [
        ("7a grating lateral period", scan.modulation, false),
        ("7b grating sign pattern", scan.sign_pattern, false),
        ("7c lateral force past the edge", scan.edge_force, true),
    ] {
        let budget = minutes(30);
        checks.push(Check { name, passed: passed && elapsed <= budget, detail, budget, elapsed, known_deviation: known });
    }
    checks.push(run("8 linearity in δε", minutes(1), false, linearity));
    checks.push(run("9 reciprocity", minutes(1), false, reciprocity));

    let mut unexpected = 0;
    for c in &checks {
        let status = match (c.passed, c.known_deviation) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation, see decisions ledger)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{status} criterion {}: {} [{:.1?} of {:?}]", c.name, c.detail, c.elapsed, c.budget);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
