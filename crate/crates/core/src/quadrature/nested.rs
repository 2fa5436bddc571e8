use std::f64::consts::PI;

use super::adaptive::{integrate, periodic_trapezoid, AdaptiveOptions};
use super::{IntegralResult, QuadValue, Tracked};
use crate::tensor::C64;

/// Change of variable for an in-plane wave-number integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialMap {
    /// k = u with unit "k_z".
    Linear,
    /// k = ω sin u, k_z = ω cos u.
    Propagating { omega: f64 },
    /// k = ω cosh u, k_z = iω sinh u.
    Evanescent { omega: f64 },
    /// Imaginary frequency ξ: k = ξ sinh u, k_z = iξ cosh u.
    Imaginary { xi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialPoint {
    pub k: f64,
    pub kz: C64,
    /// dk per unit of the integration variable.
    pub dk: f64,
    /// dk / k_z per unit of the integration variable.
    pub dk_over_kz: C64,
}

impl RadialMap {
    pub fn at(&self, u: f64) -> RadialPoint {
        match *self {
            RadialMap::Linear => RadialPoint { k: u, kz: C64::new(1.0, 0.0), dk: 1.0, dk_over_kz: C64::new(1.0, 0.0) },
            RadialMap::Propagating { omega } => {
                let (s, c) = u.sin_cos();
                RadialPoint { k: omega * s, kz: C64::new(omega * c, 0.0), dk: omega * c, dk_over_kz: C64::new(1.0, 0.0) }
            }
            RadialMap::Evanescent { omega } => {
                let sh = u.sinh();
                RadialPoint {
                    k: omega * u.cosh(),
                    kz: C64::new(0.0, omega * sh),
                    dk: omega * sh,
                    dk_over_kz: C64::new(0.0, -1.0),
                }
            }
            RadialMap::Imaginary { xi } => {
                let ch = u.cosh();
                RadialPoint {
                    k: xi * u.sinh(),
                    kz: C64::new(0.0, xi * ch),
                    dk: xi * ch,
                    dk_over_kz: C64::new(0.0, -1.0),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialSegment {
    pub map: RadialMap,
    pub lo: f64,
    pub hi: f64,
}

impl RadialSegment {
    /// Segments covering k∥ ∈ [0, k_max] for a frequency of the given kind.
    pub fn covering(value: f64, imaginary: bool, k_max: f64, split: bool) -> Vec<RadialSegment> {
        if imaginary {
            return vec![RadialSegment { map: RadialMap::Imaginary { xi: value }, lo: 0.0, hi: (k_max / value).asinh() }];
        }
        if !split {
            return vec![RadialSegment { map: RadialMap::Linear, lo: 0.0, hi: k_max }];
        }
        let mut out = vec![RadialSegment {
            map: RadialMap::Propagating { omega: value },
            lo: 0.0,
            hi: (k_max / value).min(1.0).asin(),
        }];
        if k_max > value {
            out.push(RadialSegment { map: RadialMap::Evanescent { omega: value }, lo: 0.0, hi: (k_max / value).acosh() });
        }
        out
    }
}

/// Two radial domains, for the unprimed and primed wave vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct K4Domain {
    pub outer: Vec<RadialSegment>,
    pub inner: Vec<RadialSegment>,
}

fn radial(segments: &[RadialSegment], t: f64) -> RadialPoint {
    let i = (t.floor() as usize).min(segments.len() - 1);
    let s = &segments[i];
    let jac = s.hi - s.lo;
    let mut p = s.map.at(s.lo + (t - i as f64) * jac);
    p.dk *= jac;
    p.dk_over_kz *= jac;
    p
}

fn breakpoints(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64).collect()
}

struct Levels {
    radial_outer: AdaptiveOptions,
    radial_inner: AdaptiveOptions,
    angle_outer: (usize, f64, f64),
    angle_inner: (usize, f64, f64),
}

fn nested<V, A>(
    stage: &impl Fn(&RadialPoint, f64) -> A,
    eval: &impl Fn(&A, &RadialPoint, f64) -> V,
    domain: &K4Domain,
    lv: &Levels,
) -> IntegralResult<V>
where
    V: QuadValue,
{
    let bo = breakpoints(domain.outer.len());
    let bi = breakpoints(domain.inner.len());
    let n0 = 8;
    let r = integrate(
        |t| {
            let p = radial(&domain.outer, t);
            let (max_a, rel_a, abs_a) = lv.angle_outer;
            let ang = periodic_trapezoid(
                |phi| {
                    let a = stage(&p, phi);
                    let inner = integrate(
                        |tp| {
                            let q = radial(&domain.inner, tp);
                            let (max_b, rel_b, abs_b) = lv.angle_inner;
                            let r = periodic_trapezoid(|phip| eval(&a, &q, phip), n0, max_b, rel_b, abs_b);
                            Tracked { value: r.value, err: r.error }
                        },
                        &bi,
                        &lv.radial_inner,
                    );
                    Tracked { value: inner.value.value, err: inner.value.err + inner.error }
                },
                n0,
                max_a,
                rel_a,
                abs_a,
            );
            Tracked { value: ang.value.value, err: ang.value.err + ang.error }
        },
        &bo,
        &lv.radial_outer,
    );
    IntegralResult {
        value: r.value.value,
        error: r.error + r.value.err,
        evaluations: 0,
        converged: r.error + r.value.err <= opts_tol(&lv.radial_outer, r.value.value.norm()),
    }
}

fn opts_tol(o: &AdaptiveOptions, scale: f64) -> f64 {
    o.abs_tol.max(o.rel_tol * scale)
}

/// Nested adaptive quadrature of f(k∥, φ, k∥', φ') d k∥ dφ d k∥' dφ'.
///
/// Radial variables are integrated with adaptive Gauss-Kronrod over the segments of
/// `domain`, angles with the doubling periodic trapezoid rule. `stage` evaluates the
/// work that depends only on the unprimed wave vector and is called once per
/// outer node. The integrand must include the radial Jacobian from [`RadialPoint`].
pub fn integrate_k4<V, A>(
    stage: impl Fn(&RadialPoint, f64) -> A,
    eval: impl Fn(&A, &RadialPoint, f64) -> V,
    domain: &K4Domain,
    opts: &AdaptiveOptions,
) -> IntegralResult<V>
where
    V: QuadValue,
{
    let counter = std::cell::Cell::new(0usize);
    let counted = |a: &A, q: &RadialPoint, phip: f64| {
        counter.set(counter.get() + 1);
        eval(a, q, phip)
    };
    let (no, ni) = (domain.outer.len() as f64, domain.inner.len() as f64);
    let coarse = Levels {
        radial_outer: AdaptiveOptions { rel_tol: 1.0, abs_tol: f64::INFINITY, max_subdivisions: 1 },
        radial_inner: AdaptiveOptions { rel_tol: 1.0, abs_tol: f64::INFINITY, max_subdivisions: 1 },
        angle_outer: (16, 1.0, f64::INFINITY),
        angle_inner: (16, 1.0, f64::INFINITY),
    };
    let scale = nested(&stage, &counted, domain, &coarse).value.norm();
    let rel = opts.rel_tol;
    let share = |measure: f64| opts.abs_tol.max(0.2 * rel * scale / measure);
    let max_sub = opts.max_subdivisions;
    let fine = Levels {
        radial_outer: AdaptiveOptions { rel_tol: rel, abs_tol: opts.abs_tol.max(0.5 * rel * scale), max_subdivisions: max_sub },
        angle_outer: (4096, 0.25 * rel, share(no)),
        radial_inner: AdaptiveOptions { rel_tol: 0.25 * rel, abs_tol: share(no * 2.0 * PI), max_subdivisions: max_sub },
        angle_inner: (4096, 0.1 * rel, share(no * ni * 4.0 * PI * PI)),
    };
    let mut r = nested(&stage, &counted, domain, &fine);
    r.evaluations = counter.get();
    r
}
