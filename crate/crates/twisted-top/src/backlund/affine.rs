use nalgebra::{Matrix3, SVector};
use num_complex::Complex64;

use super::BTAuxTwo;
use crate::top_dynamics::State3;

/// The real two-point step written as ŷ = y + X₀[1..3], x̂ = x + A y + X₀[4..6],
/// ẑ = z + A x + B y + X₀[7..9].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMapParts {
    pub a: Matrix3<f64>,
    pub b: Matrix3<f64>,
    pub x0: SVector<f64, 9>,
}

/// Closed-form A, B, X₀ for η₁ = η, η₂ = conj(η) and field strength `b`.
///
/// With α₁ = 2i Im(η) - st, α₂ = α₁ - st, R = Re(η), every entry is real for conjugate-paired
/// roots; the real parts are kept.
pub fn affine_parts(aux: &BTAuxTwo, eta: Complex64, b: f64) -> AffineMapParts {
    let i = Complex64::new(0.0, 1.0);
    let (s, t) = (aux.s, aux.t);
    let a1 = Complex64::new(0.0, 2.0 * eta.im) - s * t;
    let a2 = a1 - s * t;
    let r = eta.re;
    let sa = s * a1;
    let (p, m) = (sa + t, sa - t);

    let a12 = i * a2;
    let a13 = m;
    let a23 = -i * p;

    let b11 = 0.5 * (1.0 - s * s) * (a1 * a1 - t * t);
    let b12 = 0.5 * i * (2.0 * r * a2 + s * s * a1 * a1 - t * t);
    let b13 = 0.5 * (p * a2 + 2.0 * r * m);
    let b21 = 0.5 * i * (-2.0 * r * a2 + s * s * a1 * a1 - t * t);
    let b22 = 0.5 * (1.0 + s * s) * (a1 * a1 + t * t);
    let b23 = -0.5 * i * (m * a2 + 2.0 * r * p);
    let b31 = 0.5 * (p * a2 - 2.0 * r * m);
    let b32 = 0.5 * i * (2.0 * r * p - m * a2);
    let b33 = 2.0 * sa * t;

    let (r2, s2, t2, t3) = (r * r, s * s, t * t, t * t * t);
    let (a1sq, a1cu) = (a1 * a1, a1 * a1 * a1);
    let common = 4.0 * r2 * a1 * s + 4.0 * r * a1sq * s - 4.0 * r * a1 * s2 * t + a1cu * s + 2.0 * a1sq * s2 * t
        + a1 * s * s2 * t2;
    let odd = -4.0 * r2 * t + 4.0 * r * a1 * t - 4.0 * r * s * t2 - a1sq * t - 2.0 * a1 * s * t2 - s2 * t3;
    let c13 = 0.25 * (common + odd);
    let c23 = -0.25 * i * (common - odd);
    let c33 = 4.0 * r * a1 * s * t;

    let re = |z: Complex64| z.re;
    let a = Matrix3::new(0.0, re(a12), re(a13), -re(a12), 0.0, re(a23), -re(a13), -re(a23), 0.0);
    let bm = Matrix3::new(
        re(b11),
        re(b12),
        re(b13),
        re(b21),
        re(b22),
        re(b23),
        re(b31),
        re(b32),
        re(b33),
    );
    let x0 = SVector::<f64, 9>::from([
        b * re(a13),
        b * re(a23),
        0.0,
        b * re(b13),
        b * re(b23),
        b * re(b33),
        b * re(c13),
        b * re(c23),
        b * re(c33),
    ]);
    AffineMapParts { a, b: bm, x0 }
}

pub fn affine_apply(parts: &AffineMapParts, s: &State3) -> State3 {
    let x0 = &parts.x0;
    State3 {
        y: s.y + x0.fixed_rows::<3>(0),
        x: s.x + parts.a * s.y + x0.fixed_rows::<3>(3),
        z: s.z + parts.a * s.x + parts.b * s.y + x0.fixed_rows::<3>(6),
        b: s.b,
    }
}
