//! Bessel functions of the first kind, orders 0 to 2, for non-negative real argument.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const ASYMPTOTIC_FROM: f64 = 25.0;

/// Returns (J0(x), J1(x), J2(x)) for x ≥ 0.
pub fn bessel_j012(x: f64) -> (f64, f64, f64) {
    debug_assert!(x >= 0.0);
    if x < 1.0 {
        series(x)
    } else if x < ASYMPTOTIC_FROM {
        miller(x)
    } else {
        let (j0, j1) = (hankel(0, x), hankel(1, x));
        (j0, j1, 2.0 * j1 / x - j0)
    }
}

fn series(x: f64) -> (f64, f64, f64) {
    let q = -0.25 * x * x;
    let mut out = [0.0; 3];
    for (n, slot) in out.iter_mut().enumerate() {
        let mut term = (0.5 * x).powi(n as i32) / [1.0, 1.0, 2.0][n];
        let mut sum = term;
        for k in 1..30 {
            term *= q / (k as f64 * (k + n) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        *slot = sum;
    }
    (out[0], out[1], out[2])
}

/// Backward recurrence normalised with J0 + 2 Σ J_2k = 1.
fn miller(x: f64) -> (f64, f64, f64) {
    let start = 2 * ((x + 20.0 + 8.0 * x.sqrt()) as usize / 2 + 1);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let (mut j0, mut j1, mut j2) = (0.0, 0.0, 0.0);
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        let order = k - 1;
        if order % 2 == 0 && order > 0 {
            norm += 2.0 * cur;
        }
        match order {
            2 => j2 = cur,
            1 => j1 = cur,
            0 => j0 = cur,
            _ => {}
        }
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            next *= s;
            norm *= s;
            j1 *= s;
            j2 *= s;
        }
    }
    norm += j0;
    (j0 / norm, j1 / norm, j2 / norm)
}

fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let z8 = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * z8);
        if k % 2 == 1 {
            q += if k % 4 == 1 { term } else { -term };
        } else {
            p += if k % 4 == 2 { -term } else { term };
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - n as f64 * FRAC_PI_2 - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
