use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::born::{kernel_matrix, Ordering, Tau};
use crate::kinematics::WaveContext;
use crate::material::MaterialModel;
use crate::tensor::C64;

/// Catalogue entries that vanish identically for both orderings, eighteen in all.
/// Their y-row counterparts follow by symmetry and are checked as well.
pub const ZERO_ENTRIES: [(Tau, usize, usize); 9] = [
    (Tau::Te, 0, 2),
    (Tau::Te, 2, 0),
    (Tau::Te, 2, 2),
    (Tau::TeTe, 0, 2),
    (Tau::TeTe, 2, 0),
    (Tau::TeTe, 2, 2),
    (Tau::TeTm, 0, 2),
    (Tau::TeTm, 2, 0),
    (Tau::TeTm, 2, 2),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureReport {
    pub zeros_exact: bool,
    /// Largest violation of the xy identities, relative to the largest entry.
    pub symmetry: f64,
}

/// Checks the zero entries and the x ↔ y identities (K_yy from K_xx with k_x and
/// k_y exchanged, and so on; K_xy = K_yx) at random wave vectors of a lossless
/// frequency, for both orderings.
pub fn catalogue_structure_check(samples: usize, seed: u64) -> StructureReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros_exact = true;
    let mut symmetry: f64 = 0.0;
    let substrate = MaterialModel::Constant { epsilon: 2.5 };
    for _ in 0..samples {
        let w = C64::new(rng.gen_range(0.2..3.0), 0.0);
        let (k, kp) = (rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0));
        let (p, pp) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let ctx = |k: f64, phi: f64| WaveContext::complex(w, k, phi, &substrate).expect("valid context");
        let (a, b) = (ctx(k, p), ctx(kp, pp));
        // Exchanging k_x and k_y is φ → π/2 − φ.
        let (sa, sb) = (ctx(k, 0.5 * PI - p), ctx(kp, 0.5 * PI - pp));
        for o in [Ordering::Greater, Ordering::Lesser] {
            let s_z = if o == Ordering::Greater { 0.3 } else { 1.4 };
            for tau in Tau::ALL {
                let m = kernel_matrix(tau, o, &a, &b, 0.8, 0.9, s_z);
                for &(t, i, j) in &ZERO_ENTRIES {
                    if t == tau {
                        let (yi, yj) = (i.max(1), j.max(1));
                        zeros_exact &= m[(i, j)] == C64::new(0.0, 0.0) && m[(yi, yj)] == C64::new(0.0, 0.0);
                    }
                }
                let s = kernel_matrix(tau, o, &sa, &sb, 0.8, 0.9, s_z);
                let scale = m.max_abs().max(f64::MIN_POSITIVE);
                for (u, v) in [((1, 1), (0, 0)), ((1, 2), (0, 2)), ((2, 1), (2, 0))] {
                    symmetry = symmetry.max((m[u] - s[v]).norm() / scale);
                }
                symmetry = symmetry.max((m[(1, 0)] - m[(0, 1)]).norm() / scale);
            }
        }
    }
    StructureReport { zeros_exact, symmetry }
}

/// Observed order p of an error model err ∝ n^−p, by least squares in log-log.
pub fn convergence_order(cells: &[usize], errors: &[f64]) -> f64 {
    let n = cells.len().min(errors.len()) as f64;
    let xs: Vec<f64> = cells.iter().map(|&c| (c as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    -sxy / sxx
}
