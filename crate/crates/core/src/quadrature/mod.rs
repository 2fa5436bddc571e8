//! Adaptive and fixed quadrature used by the Green-tensor, Born and observable layers.

mod adaptive;
mod boxrule;
mod gauss;
mod nested;
mod xi;

use serde::{Deserialize, Serialize};

use crate::tensor::{Mat3, C64};

pub use adaptive::{integrate, periodic_trapezoid, AdaptiveOptions};
pub use boxrule::{sinh_rule, BoxRule};
pub use gauss::{gauss_legendre, GaussLegendre, GK15_NODES, GK15_WEIGHTS, G7_WEIGHTS};
pub use nested::{integrate_k4, K4Domain, RadialMap, RadialPoint, RadialSegment};
pub use xi::{integrate_xi, XiRule};

/// Truncation of in-plane wave-number integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    /// Chosen from the exponential decay of the integrand and the tolerance.
    Auto,
    /// Fixed upper limit Λ on k∥.
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub k_truncation: Truncation,
    /// Nodes of the fixed imaginary-frequency rule used by Casimir-Polder integrals.
    pub xi_nodes: usize,
    pub split_at_branch_point: bool,
    /// Gauss-Legendre nodes per axis of the real-space volume rule.
    pub spatial_nodes: usize,
    /// Finite-difference step for forces, relative to the distance to the nearest surface.
    pub fd_rel_step: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            abs_tol: 1e-10,
            max_subdivisions: 200,
            k_truncation: Truncation::Auto,
            xi_nodes: 160,
            split_at_branch_point: true,
            spatial_nodes: 24,
            fd_rel_step: 1e-2,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |m: &str| Err(crate::LithoError::InvalidParameter(m.to_string()));
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad("rel_tol must lie in (0, 1)");
        }
        if !(self.abs_tol >= 0.0) {
            return bad("abs_tol must be non-negative");
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive");
        }
        if let Truncation::Fixed(l) = self.k_truncation {
            if !(l > 0.0 && l.is_finite()) {
                return bad("fixed k truncation must be positive");
            }
        }
        if self.xi_nodes < 10 {
            return bad("xi_nodes must be at least 10");
        }
        if self.spatial_nodes < 8 {
            return bad("spatial_nodes must be at least 8");
        }
        if !(self.fd_rel_step > 0.0 && self.fd_rel_step < 0.5) {
            return bad("fd_rel_step must lie in (0, 0.5)");
        }
        Ok(())
    }

    pub fn adaptive(&self) -> AdaptiveOptions {
        AdaptiveOptions { rel_tol: self.rel_tol, abs_tol: self.abs_tol, max_subdivisions: self.max_subdivisions }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<V> IntegralResult<V> {
    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> IntegralResult<W> {
        IntegralResult { value: f(self.value), error: self.error, evaluations: self.evaluations, converged: self.converged }
    }
}

/// Values that can be integrated: a vector space with a max-norm.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn norm(&self) -> f64;

    fn dist(&self, o: &Self) -> f64 {
        self.add(&o.scale(-1.0)).norm()
    }
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn norm(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
}

impl QuadValue for Mat3 {
    fn zero() -> Self {
        Mat3::ZERO
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn scale(&self, s: f64) -> Self {
        self.scale_re(s)
    }
    fn norm(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, z| m.max(z.re.abs()).max(z.im.abs()))
    }
}

/// A value carried together with the accumulated error of the integrals that produced it.
#[derive(Clone, Copy, Debug)]
pub struct Tracked<V> {
    pub value: V,
    pub err: f64,
}

impl<V: QuadValue> QuadValue for Tracked<V> {
    fn zero() -> Self {
        Tracked { value: V::zero(), err: 0.0 }
    }
    fn add(&self, o: &Self) -> Self {
        Tracked { value: self.value.add(&o.value), err: self.err + o.err }
    }
    fn scale(&self, s: f64) -> Self {
        Tracked { value: self.value.scale(s), err: self.err * s.abs() }
    }
    fn norm(&self) -> f64 {
        self.value.norm()
    }
}
