use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;
pub type Vec3 = [f64; 3];

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn axis_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => None,
    }
}

/// Dense complex 3×3 tensor, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[C64; 3]; 3]);

impl Default for Mat3 {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[C64::new(0.0, 0.0); 3]; 3]);

    pub fn identity() -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            m.0[i][i] = c(1.0);
        }
        m
    }

    pub fn diag(d: [C64; 3]) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn outer(a: &[C64; 3], b: &[C64; 3]) -> Self {
        Self::from_fn(|i, j| a[i] * b[j])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn matmul(&self, o: &Mat3) -> Self {
        Self::from_fn(|i, j| (0..3).map(|l| self.0[i][l] * o.0[l][j]).sum())
    }

    pub fn hadamard(&self, o: &Mat3) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * o.0[i][j])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `d · M · d` for a real vector `d`.
    pub fn contract(&self, d: &Vec3) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.0[i][j] * (d[i] * d[j]);
            }
        }
        acc
    }

    pub fn im(&self) -> [[f64; 3]; 3] {
        self.0.map(|row| row.map(|z| z.im))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise deviation relative to the largest entry of `reference`.
    pub fn rel_dev(&self, reference: &Mat3) -> f64 {
        let scale = reference.max_abs();
        let d = (*self - *reference).max_abs();
        if scale == 0.0 {
            d
        } else {
            d / scale
        }
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + o.0[i][j])
    }
}

impl AddAssign for Mat3 {
    fn add_assign(&mut self, o: Mat3) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += o.0[i][j];
            }
        }
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - o.0[i][j])
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale_re(-1.0)
    }
}

impl Mul<C64> for Mat3 {
    type Output = Mat3;
    fn mul(self, s: C64) -> Mat3 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat3 {
    type Output = Mat3;
    fn mul(self, s: f64) -> Mat3 {
        self.scale_re(s)
    }
}
