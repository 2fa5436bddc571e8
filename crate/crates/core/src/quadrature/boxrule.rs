use super::gauss::GaussLegendre;
use crate::tensor::Vec3;

/// Gauss-Legendre nodes on [a, b] after the substitution s = c + δ sinh u, which
/// clusters nodes around the near-singular point `c` on the length scale `δ`.
/// `c` may lie outside the interval.
pub fn sinh_rule(a: f64, b: f64, c: f64, delta: f64, gl: &GaussLegendre) -> Vec<(f64, f64)> {
    let ua = ((a - c) / delta).asinh();
    let ub = ((b - c) / delta).asinh();
    gl.on(ua, ub).map(|(u, w)| (c + delta * u.sinh(), w * delta * u.cosh())).collect()
}

/// Tensor-product volume rule for an axis-aligned box, graded towards a nearby point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxRule {
    pub points: Vec<(Vec3, f64)>,
}

impl BoxRule {
    pub fn around(bounds: &[[f64; 2]; 3], point: &Vec3, delta: f64, gl: &GaussLegendre) -> Self {
        let axes: Vec<Vec<(f64, f64)>> =
            (0..3).map(|d| sinh_rule(bounds[d][0], bounds[d][1], point[d], delta, gl)).collect();
        let mut points = Vec::with_capacity(gl.len().pow(3));
        for &(x, wx) in &axes[0] {
            for &(y, wy) in &axes[1] {
                for &(z, wz) in &axes[2] {
                    points.push(([x, y, z], wx * wy * wz));
                }
            }
        }
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::super::gauss::gauss_legendre;
    use super::*;

    #[test]
    fn near_singular_line_integral() {
        // ∫_0^1 ds / ((s − c)² + d²)³ with the peak just outside the interval.
        let (c, d) = (1.0 + 1e-3, 0.02);
        let f = |s: f64| 1.0 / ((s - c).powi(2) + d * d).powi(3);
        let gl = gauss_legendre(40);
        let dist = ((c - 1.0f64).powi(2) + d * d).sqrt();
        let approx: f64 = sinh_rule(0.0, 1.0, c, dist, &gl).iter().map(|(s, w)| w * f(*s)).sum();
        let fine = gauss_legendre(200);
        let reference: f64 = (0..200)
            .flat_map(|p| {
                let a = 1.0 - 0.8f64.powi(p);
                let b = 1.0 - 0.8f64.powi(p + 1);
                fine.on(a, b).collect::<Vec<_>>()
            })
            .map(|(s, w)| w * f(s))
            .sum();
        assert!((approx - reference).abs() < 1e-8 * reference, "{approx} vs {reference}");
    }

    #[test]
    fn box_volume_is_exact() {
        let gl = gauss_legendre(6);
        let rule = BoxRule::around(&[[0.0, 1.0], [-2.0, 3.0], [0.0, 0.5]], &[0.3, 4.0, 0.9], 0.2, &gl);
        let v: f64 = rule.points.iter().map(|p| p.1).sum();
        assert!((v - 2.5).abs() < 1e-3);
        assert_eq!(rule.len(), 216);
    }
}
