use serde::{Deserialize, Serialize};

use crate::error::{LithoError, Result};
use crate::kinematics::{Frequency, WaveContext};
use crate::material::MaterialModel;
use crate::tensor::{Vec3, C64};

const SINC_SWITCH: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn gap(&self, x: f64) -> f64 {
        (self.lo - x).max(x - self.hi).max(0.0)
    }

    fn overlaps(&self, o: &Interval) -> bool {
        self.lo < o.hi && o.lo < self.hi
    }
}

/// ∫_lo^hi e^{iqs} ds for real q.
pub fn lateral_factor(iv: &Interval, q: f64) -> C64 {
    let l = iv.len();
    let x = 0.5 * q * l;
    let sinc = if x.abs() < SINC_SWITCH {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    };
    C64::from_polar(l * sinc, q * iv.mid())
}

/// ∫_{z0}^{z1} e^{i(γ + βs)} ds for complex γ and β. The phase is combined before
/// exponentiation so that growing and decaying factors never appear separately.
pub fn segment_factor(gamma: C64, beta: C64, z0: f64, z1: f64) -> C64 {
    let l = z1 - z0;
    let i = C64::new(0.0, 1.0);
    let x = i * beta * l;
    if x.norm() < SINC_SWITCH {
        let series = 1.0 + x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x / 120.0)));
        (i * (gamma + beta * z0)).exp() * l * series
    } else {
        ((i * (gamma + beta * z1)).exp() - (i * (gamma + beta * z0)).exp()) / (i * beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepositionBox {
    pub x: Interval,
    pub y: Interval,
    pub z: Interval,
}

impl DepositionBox {
    pub fn new(x: [f64; 2], y: [f64; 2], z: [f64; 2]) -> Result<Self> {
        let b = Self { x: Interval::new(x[0], x[1]), y: Interval::new(y[0], y[1]), z: Interval::new(z[0], z[1]) };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, iv) in [("x", &self.x), ("y", &self.y), ("z", &self.z)] {
            if !(iv.lo.is_finite() && iv.hi.is_finite() && iv.lo < iv.hi) {
                return Err(LithoError::InvalidGeometry(format!(
                    "box extent along {name} must be finite with lo < hi, got [{}, {}]",
                    iv.lo, iv.hi
                )));
            }
        }
        if self.z.lo < 0.0 {
            return Err(LithoError::InvalidGeometry(format!("box extends below the substrate (z_lo = {})", self.z.lo)));
        }
        Ok(())
    }

    pub fn bounds(&self) -> [[f64; 2]; 3] {
        [[self.x.lo, self.x.hi], [self.y.lo, self.y.hi], [self.z.lo, self.z.hi]]
    }

    pub fn volume(&self) -> f64 {
        self.x.len() * self.y.len() * self.z.len()
    }

    /// Closed-box membership: surface points count as inside.
    pub fn contains(&self, p: &Vec3) -> bool {
        self.distance(p) == 0.0
    }

    pub fn distance(&self, p: &Vec3) -> f64 {
        let g = [self.x.gap(p[0]), self.y.gap(p[1]), self.z.gap(p[2])];
        (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt()
    }

    fn overlaps(&self, o: &DepositionBox) -> bool {
        self.x.overlaps(&o.x) && self.y.overlaps(&o.y) && self.z.overlaps(&o.z)
    }

    /// The box z-range cut at the given heights, in ascending order.
    pub fn z_segments(&self, cuts: &[f64]) -> Vec<Interval> {
        let mut pts = vec![self.z.lo, self.z.hi];
        pts.extend(cuts.iter().copied().filter(|c| *c > self.z.lo && *c < self.z.hi));
        pts.sort_by(|a, b| a.total_cmp(b));
        pts.dedup();
        pts.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
    }

    /// ∫_box e^{i(q·s∥ + β s_z)} d³s.
    pub fn factor(&self, q: [f64; 2], beta: C64) -> C64 {
        lateral_factor(&self.x, q[0]) * lateral_factor(&self.y, q[1]) * segment_factor(C64::new(0.0, 0.0), beta, self.z.lo, self.z.hi)
    }
}

/// ∫_box exp{i[(k∥ − k∥′)·s∥ + (k_z + k_z′) s_z]} d³s.
pub fn structure_factor(bx: &DepositionBox, ctx: &WaveContext, ctx_prime: &WaveContext) -> C64 {
    bx.factor([ctx.kx - ctx_prime.kx, ctx.ky - ctx_prime.ky], ctx.kz + ctx_prime.kz)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GratingSpec {
    pub strips: usize,
    pub width: f64,
    pub height: f64,
    pub length: f64,
    /// Left edge of the first strip; defaults to −w(N − 3/4).
    #[serde(default)]
    pub x0: Option<f64>,
}

impl GratingSpec {
    pub fn origin(&self) -> f64 {
        self.x0.unwrap_or(-self.width * (self.strips as f64 - 0.75))
    }
}

/// Homogeneous dielectric boxes on top of the substrate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepositionGeometry {
    pub boxes: Vec<DepositionBox>,
    pub material: MaterialModel,
}

impl DepositionGeometry {
    pub fn new(boxes: Vec<DepositionBox>, material: MaterialModel) -> Result<Self> {
        let g = Self { boxes, material };
        g.validate()?;
        Ok(g)
    }

    pub fn empty() -> Self {
        Self { boxes: Vec::new(), material: MaterialModel::Vacuum }
    }

    pub fn validate(&self) -> Result<()> {
        if self.material.is_mirror() {
            return Err(LithoError::InvalidGeometry("deposited material cannot be a perfect mirror".into()));
        }
        self.material.validate()?;
        for (i, b) in self.boxes.iter().enumerate() {
            b.validate()?;
            for (j, o) in self.boxes.iter().enumerate().skip(i + 1) {
                if b.overlaps(o) {
                    return Err(LithoError::InvalidGeometry(format!("boxes {i} and {j} overlap")));
                }
            }
        }
        Ok(())
    }

    /// Cube [−a/2, a/2]² × [0, a].
    pub fn cube(a: f64, material: MaterialModel) -> Result<Self> {
        Self::new(vec![DepositionBox::new([-0.5 * a, 0.5 * a], [-0.5 * a, 0.5 * a], [0.0, a])?], material)
    }

    /// N strips, strip n occupying [x0 + 2nw, x0 + (2n+1)w] × [−L/2, L/2] × [0, h].
    pub fn grating(spec: &GratingSpec, material: MaterialModel) -> Result<Self> {
        if spec.strips == 0 {
            return Err(LithoError::InvalidGeometry("grating needs at least one strip".into()));
        }
        let (w, x0) = (spec.width, spec.origin());
        let boxes = (0..spec.strips)
            .map(|n| {
                let a = x0 + 2.0 * n as f64 * w;
                DepositionBox::new([a, a + w], [-0.5 * spec.length, 0.5 * spec.length], [0.0, spec.height])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(boxes, material)
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    pub fn distance(&self, p: &Vec3) -> f64 {
        self.boxes.iter().map(|b| b.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn top(&self) -> f64 {
        self.boxes.iter().map(|b| b.z.hi).fold(0.0, f64::max)
    }

    pub fn delta_epsilon(&self, freq: &Frequency) -> Result<C64> {
        let d = self.material.delta_epsilon(freq)?;
        if d.norm() >= 1.0 {
            log::warn!("permittivity contrast |δε| = {:.3} is outside the Born regime", d.norm());
        }
        Ok(d)
    }

    /// Rejects points inside the structure or on/below the substrate.
    pub fn check_outside(&self, p: &Vec3) -> Result<()> {
        if !(p[2] > 0.0) {
            return Err(LithoError::BelowInterface(*p));
        }
        if self.contains(p) {
            return Err(LithoError::InsideDeposition(*p));
        }
        Ok(())
    }
}
