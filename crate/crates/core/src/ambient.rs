//! Complex-linear algebra of C^3 and the unit sphere S^5 inside it.
//!
//! C^3 carries the Hermitian product `(z, w) = sum z_j conj(w_j)` and the
//! real inner product `<z, w> = Re (z, w)`, which makes it Euclidean R^6.
//! The Reeb field of S^5 is `xi(z) = i z`; the contact distribution at `z`
//! is the orthogonal complement of `xi(z)` in `T_z S^5`.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// A vector of C^3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVec3(pub [Complex64; 3]);

impl ComplexVec3 {
    pub const ZERO: ComplexVec3 = ComplexVec3([Complex64::new(0.0, 0.0); 3]);

    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        ComplexVec3([c0, c1, c2])
    }

    /// Vector with purely real components.
    pub fn real(x0: f64, x1: f64, x2: f64) -> Self {
        ComplexVec3([x0.into(), x1.into(), x2.into()])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction, `None` when the norm is below `eps`.
    pub fn normalized(&self, eps: f64) -> Option<Self> {
        let n = self.norm();
        (n >= eps && n.is_finite()).then(|| *self * (1.0 / n))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        ComplexVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest absolute real coordinate, treating the vector as an element of R^6.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flat_map(|c| [c.re.abs(), c.im.abs()]).fold(0.0, f64::max)
    }
}

impl Add for ComplexVec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for ComplexVec3 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for ComplexVec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for ComplexVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexVec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for ComplexVec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        ComplexVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<ComplexVec3> for f64 {
    type Output = ComplexVec3;
    fn mul(self, v: ComplexVec3) -> ComplexVec3 {
        v * self
    }
}

/// A point of the unit sphere S^5. Construction renormalizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(ComplexVec3);

impl SpherePoint {
    /// Projects `z` radially onto the sphere; `None` for the zero vector.
    pub fn new(z: ComplexVec3) -> Option<Self> {
        z.normalized(1e-300).map(SpherePoint)
    }

    pub fn z(&self) -> ComplexVec3 {
        self.0
    }
}

pub fn hermitian_product(z: &ComplexVec3, w: &ComplexVec3) -> Complex64 {
    z.0.iter().zip(w.0.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn real_inner(z: &ComplexVec3, w: &ComplexVec3) -> f64 {
    z.0.iter().zip(w.0.iter()).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
}

/// Multiplication by `i`, the complex structure of C^3.
pub fn j_multiply(w: &ComplexVec3) -> ComplexVec3 {
    ComplexVec3(w.0.map(|c| Complex64::new(-c.im, c.re)))
}

pub fn reeb(z: &SpherePoint) -> ComplexVec3 {
    j_multiply(&z.0)
}

/// Removes the radial component of `w` at `z`.
pub fn tangent_project(z: &SpherePoint, w: &ComplexVec3) -> ComplexVec3 {
    let zz = z.z();
    *w - zz * real_inner(w, &zz)
}

/// Removes the Reeb component of a tangent vector `w` at `z`.
pub fn contact_project(z: &SpherePoint, w: &ComplexVec3) -> ComplexVec3 {
    let xi = reeb(z);
    *w - xi * real_inner(w, &xi)
}
