use lithoqed_core::born::{born_correction, BornMethod, BornSettings, BornTerms};
use lithoqed_core::green::halfspace_gf;
use lithoqed_core::observables::{cp_potential, decay_rate_deposition};
use lithoqed_core::*;
use proptest::prelude::*;

fn cube() -> DepositionGeometry {
    DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: 1.8 }).unwrap()
}

fn mirror() -> HalfSpace {
    HalfSpace::new(MaterialModel::PerfectMirror).unwrap()
}

#[test]
fn plane_wave_and_real_space_born_paths_agree() {
    let f = Frequency::real(1.0).unwrap();
    let r = [0.25, -0.15, 2.0];
    let cfg = QuadratureConfig { rel_tol: 1e-3, ..Default::default() };
    let fine = QuadratureConfig { rel_tol: 1e-9, spatial_nodes: 40, ..Default::default() };
    for terms in [BornTerms::Complete, BornTerms::ReflectedOnly] {
        let k = BornSettings { method: BornMethod::KSpace, terms, ..Default::default() };
        let s = BornSettings { method: BornMethod::Spatial, terms, ..Default::default() };
        let a = born_correction(&mirror(), &cube(), &r, &r, &f, &k, &cfg).unwrap();
        let b = born_correction(&mirror(), &cube(), &r, &r, &f, &s, &fine).unwrap();
        assert!(a.value.rel_dev(&b.value) < 1e-3, "{terms:?}: {}", a.value.rel_dev(&b.value));
    }
}

#[test]
fn isotropic_potential_is_the_mean_of_the_axes() {
    let geo = cube();
    let cfg = QuadratureConfig { spatial_nodes: 12, xi_nodes: 60, ..Default::default() };
    let st = BornSettings::default();
    let p = [0.7, 0.2, 1.3];
    let u = |pol| cp_potential(&AtomModel::new(0.5, 1.0, pol).unwrap(), &mirror(), &geo, &p, &st, &cfg).unwrap().u_total;
    let mean = (u(Polarization::X) + u(Polarization::Y) + u(Polarization::Z)) / 3.0;
    assert!((u(Polarization::Isotropic) - mean).abs() < 1e-12 * mean.abs());
}

#[test]
fn mirror_symmetric_positions_give_equal_rates() {
    let geo = cube();
    let cfg = QuadratureConfig::default();
    let st = BornSettings::default();
    let atom = AtomModel::new(1.0, 1.0, Polarization::Z).unwrap();
    let a = decay_rate_deposition(&atom, &mirror(), &geo, &[0.6, 0.3, 1.2], &st, &cfg).unwrap();
    let b = decay_rate_deposition(&atom, &mirror(), &geo, &[-0.6, -0.3, 1.2], &st, &cfg).unwrap();
    assert!((a.gamma_total - b.gamma_total).abs() < 1e-12 * a.gamma_total);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn halfspace_tensor_is_reciprocal(
        x in -1.0f64..1.0, y in -1.0f64..1.0, z in 0.1f64..2.0,
        xp in -1.0f64..1.0, yp in -1.0f64..1.0, zp in 0.1f64..2.0,
        w in 0.3f64..3.0, eps in 1.1f64..6.0,
    ) {
        let env = HalfSpace::new(MaterialModel::Constant { epsilon: eps }).unwrap();
        let cfg = QuadratureConfig { rel_tol: 1e-10, abs_tol: 1e-16, ..Default::default() };
        let f = Frequency::real(w).unwrap();
        let (r, rp) = ([x, y, z], [xp, yp, zp]);
        let a = halfspace_gf(&env, &r, &rp, &f, GreenPart::Scattering, &cfg).unwrap().entries;
        let b = halfspace_gf(&env, &rp, &r, &f, GreenPart::Scattering, &cfg).unwrap().entries;
        prop_assert!(a.rel_dev(&b.transpose()) < 1e-8);
    }

    #[test]
    fn born_correction_is_linear_in_contrast(eps in 1.05f64..1.95, x in -2.0f64..2.0, z in 1.1f64..2.0) {
        let f = Frequency::real(1.0).unwrap();
        let cfg = QuadratureConfig { spatial_nodes: 10, ..Default::default() };
        let st = BornSettings::default();
        let geo = |e: f64| DepositionGeometry::cube(1.0, MaterialModel::Constant { epsilon: e }).unwrap();
        let r = [x, 0.3, z];
        let a = born_correction(&mirror(), &geo(eps), &r, &r, &f, &st, &cfg).unwrap().value;
        let b = born_correction(&mirror(), &geo(1.8), &r, &r, &f, &st, &cfg).unwrap().value;
        let scaled = b * ((eps - 1.0) / 0.8);
        prop_assert!(a.rel_dev(&scaled) < 1e-13);
    }
}
