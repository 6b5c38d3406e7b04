//! The reduced N = 3 system with field (0, 0, b): y = y_0, x = y_1, z = y_2.

use nalgebra::SVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet_algebra::{JetState, Vec3};
use crate::lax_spectral::{su2, CVec3, LaxState, Mat2C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State3 {
    pub y: Vec3,
    pub x: Vec3,
    pub z: Vec3,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangent3 {
    pub dy: Vec3,
    pub dx: Vec3,
    pub dz: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Integrals3 {
    pub H1: f64,
    pub H2: f64,
    pub H3: f64,
    pub C1: f64,
    pub C2: f64,
    pub C3: f64,
}

impl Tangent3 {
    pub fn to_array(&self) -> SVector<f64, 9> {
        SVector::<f64, 9>::from_iterator(self.dy.iter().chain(self.dx.iter()).chain(self.dz.iter()).copied())
    }
}

impl Integrals3 {
    pub fn as_array(&self) -> [f64; 6] {
        [self.H1, self.H2, self.H3, self.C1, self.C2, self.C3]
    }

    pub const NAMES: [&'static str; 6] = ["H1", "H2", "H3", "C1", "C2", "C3"];
}

impl State3 {
    pub fn new(y: Vec3, x: Vec3, z: Vec3, b: f64) -> Self {
        Self { y, x, z, b }
    }

    /// Field vector (0, 0, b).
    pub fn field(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.b)
    }

    /// (y¹, y², y³, x¹, ..., z³).
    pub fn to_array(&self) -> SVector<f64, 9> {
        SVector::<f64, 9>::from_iterator(self.y.iter().chain(self.x.iter()).chain(self.z.iter()).copied())
    }

    pub fn from_array(a: &SVector<f64, 9>, b: f64) -> Self {
        Self {
            y: a.fixed_rows::<3>(0).into_owned(),
            x: a.fixed_rows::<3>(3).into_owned(),
            z: a.fixed_rows::<3>(6).into_owned(),
            b,
        }
    }

    pub fn to_jet(&self) -> JetState {
        JetState::new(self.field(), vec![self.y, self.x, self.z]).expect("State3 with finite entries")
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite()) && self.b.is_finite()
    }

    /// Euclidean norm of (b, y, x, z).
    pub fn norm(&self) -> f64 {
        (self.b * self.b + self.to_array().norm_squared()).sqrt()
    }

    /// max(1, |state|^2), the tolerance scale for quadratic quantities.
    pub fn scale(&self) -> f64 {
        self.norm().powi(2).max(1.0)
    }

    fn axpy(&self, h: f64, t: &Tangent3) -> Self {
        Self {
            y: self.y + t.dy * h,
            x: self.x + t.dx * h,
            z: self.z + t.dz * h,
            b: self.b,
        }
    }
}

impl LaxState for State3 {
    fn field(&self) -> CVec3 {
        CVec3::new(Complex64::from(0.0), Complex64::from(0.0), Complex64::from(self.b))
    }

    fn levels(&self) -> Vec<CVec3> {
        [self.y, self.x, self.z].iter().map(|v| v.map(Complex64::from)).collect()
    }
}

pub fn integrals3(s: &State3) -> Integrals3 {
    let b = s.field();
    Integrals3 {
        H1: 2.0 * b.dot(&s.y),
        H2: s.y.dot(&s.y) + 2.0 * b.dot(&s.x),
        H3: 2.0 * (b.dot(&s.z) + s.y.dot(&s.x)),
        C1: 2.0 * s.y.dot(&s.z) + s.x.dot(&s.x),
        C2: 2.0 * s.x.dot(&s.z),
        C3: s.z.dot(&s.z),
    }
}

/// Gradients of H1, H2, H3, C1, C2, C3 with respect to (y, x, z).
pub fn integral_gradients3(s: &State3) -> [SVector<f64, 9>; 6] {
    let b = s.field();
    let zero = Vec3::zeros();
    let pack = |gy: Vec3, gx: Vec3, gz: Vec3| {
        SVector::<f64, 9>::from_iterator(gy.iter().chain(gx.iter()).chain(gz.iter()).copied())
    };
    [
        pack(2.0 * b, zero, zero),
        pack(2.0 * s.y, 2.0 * b, zero),
        pack(2.0 * s.x, 2.0 * s.y, 2.0 * b),
        pack(2.0 * s.z, 2.0 * s.x, 2.0 * s.y),
        pack(zero, 2.0 * s.z, 2.0 * s.x),
        pack(zero, zero, 2.0 * s.z),
    ]
}

/// ẏ = b ∧ x, ẋ = y ∧ x + b ∧ z, ż = y ∧ z: the flow of H2/2.
pub fn vector_field(s: &State3) -> Tangent3 {
    let b = s.field();
    Tangent3 {
        dy: b.cross(&s.x),
        dx: s.y.cross(&s.x) + b.cross(&s.z),
        dz: s.y.cross(&s.z),
    }
}

/// Position of the material point, x - z.
pub fn material_point(s: &State3) -> Vec3 {
    s.x - s.z
}

pub fn rk4_step(s: &State3, h: f64) -> State3 {
    let k1 = vector_field(s);
    let k2 = vector_field(&s.axpy(0.5 * h, &k1));
    let k3 = vector_field(&s.axpy(0.5 * h, &k2));
    let k4 = vector_field(&s.axpy(h, &k3));
    State3 {
        y: s.y + (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy) * (h / 6.0),
        x: s.x + (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) * (h / 6.0),
        z: s.z + (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz) * (h / 6.0),
        b: s.b,
    }
}

fn lax3(y: &Vec3, x: &Vec3, z: &Vec3, b: f64, lambda: Complex64) -> Mat2C {
    let c = |v: &Vec3| v.map(Complex64::from);
    let inv = lambda.inv();
    su2(&CVec3::new(0.0.into(), 0.0.into(), b.into()))
        + su2(&c(y)) * inv
        + su2(&c(x)) * inv.powi(2)
        + su2(&c(z)) * inv.powi(3)
}

/// Max-entry norm of L̇(λ) - [M(λ), L(λ)] with M = X/λ + Z/λ².
///
/// Relative to max(1, |s|²)·max(1, 1/|λ|)^5, which bounds every term.
pub fn lax_pair_residual(s: &State3, lambda: Complex64) -> Result<f64> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole);
    }
    let t = vector_field(s);
    let l = lax3(&s.y, &s.x, &s.z, s.b, lambda);
    let ldot = lax3(&t.dy, &t.dx, &t.dz, 0.0, lambda);
    let inv = lambda.inv();
    let m = su2(&s.x.map(Complex64::from)) * inv + su2(&s.z.map(Complex64::from)) * inv.powi(2);
    let r = ldot - (m * l - l * m);
    Ok(r.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// The scale against which `lax_pair_residual` is judged.
pub fn lax_pair_scale(s: &State3, lambda: Complex64) -> f64 {
    s.scale() * (1.0 / lambda.norm()).max(1.0).powi(5)
}
