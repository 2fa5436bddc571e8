use super::adaptive::{integrate, AdaptiveOptions};
use super::gauss::gauss_legendre;
use super::{IntegralResult, QuadValue};

/// Adaptive quadrature of ∫_0^∞ f(ξ) dξ through ξ = ω t / (1 − t).
pub fn integrate_xi<V: QuadValue>(
    mut f: impl FnMut(f64) -> V,
    omega: f64,
    opts: &AdaptiveOptions,
) -> IntegralResult<V> {
    let g = |t: f64| {
        let u = 1.0 - t;
        f(omega * t / u).scale(omega / (u * u))
    };
    integrate(g, &[0.0, 0.5, 0.9, 0.99, 0.999, 1.0], opts)
}

const NODES_PER_PANEL: usize = 8;

/// Fixed rule for ∫_0^∞ dξ under the same map, with Gauss-Legendre panels that halve
/// their width towards both ends of t ∈ [0, 1). The nodes do not depend on the integrand, so integrals
/// evaluated with it vary smoothly with external parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct XiRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl XiRule {
    pub fn graded(omega: f64, total_nodes: usize) -> Self {
        let panels = (total_nodes / NODES_PER_PANEL).max(4);
        let lower = panels / 4;
        let gl = gauss_legendre(NODES_PER_PANEL);
        let mut edges: Vec<f64> = (0..lower).map(|p| 0.5f64.powi((lower - p) as i32 + 1)).collect();
        edges.insert(0, 0.0);
        edges.extend((0..=panels - lower).map(|p| 1.0 - 0.5f64.powi(p as i32 + 1)));
        let mut nodes = Vec::with_capacity(panels * NODES_PER_PANEL);
        let mut weights = Vec::with_capacity(panels * NODES_PER_PANEL);
        for e in edges.windows(2) {
            for (t, w) in gl.on(e[0], e[1]) {
                let u = 1.0 - t;
                nodes.push(omega * t / u);
                weights.push(w * omega / (u * u));
            }
        }
        Self { nodes, weights }
    }

    pub fn apply<V: QuadValue>(&self, mut f: impl FnMut(f64) -> V) -> V {
        self.nodes.iter().zip(&self.weights).fold(V::zero(), |acc, (x, w)| acc.add(&f(*x).scale(*w)))
    }
}
