use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::CState3;
use crate::error::{Error, Result};
use crate::lax_spectral::{su2, su2_inverse, CVec3, LaxState, Mat2C};

const SAMPLES: usize = 8;

/// Eight points on the circle of radius 2·max(1, max|pole|), at angles 2π(k + 1/2)/8.
pub fn oracle_sample_points(poles: &[Complex64]) -> Vec<Complex64> {
    let radius = 2.0 * poles.iter().map(|p| p.norm()).fold(1.0, f64::max);
    (0..SAMPLES)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / SAMPLES as f64))
        .collect()
}

fn lax_at(s: &CState3, lambda: Complex64) -> Mat2C {
    let inv = lambda.inv();
    let mut acc = s.field();
    let mut pow = inv;
    for level in s.levels() {
        acc += level * pow;
        pow *= inv;
    }
    su2(&acc)
}

/// Samples M(λ) L(λ) M(λ)⁻¹, removes the known λ⁰ term b σ³ and fits the λ⁻¹..λ⁻³ coefficients
/// by least squares (QR). Independent of any closed-form map.
pub fn similarity_oracle<F>(s: &CState3, m: F, poles: &[Complex64]) -> Result<CState3>
where
    F: Fn(Complex64) -> Mat2C,
{
    let points = oracle_sample_points(poles);
    let constant = su2(&CVec3::new(0.0.into(), 0.0.into(), s.b.into()));
    let mut v = DMatrix::<Complex64>::zeros(points.len(), 3);
    let mut rhs = DMatrix::<Complex64>::zeros(points.len(), 4);
    for (row, &lambda) in points.iter().enumerate() {
        let mm = m(lambda);
        let det = mm.determinant();
        let size = mm.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if det.norm() <= 1e-10 * size.max(f64::MIN_POSITIVE) {
            return Err(Error::Conditioning(format!("M is nearly singular at sample λ = {lambda}")));
        }
        let inv = mm
            .try_inverse()
            .ok_or_else(|| Error::Conditioning(format!("M is not invertible at sample λ = {lambda}")))?;
        let dressed = mm * lax_at(s, lambda) * inv - constant;
        for k in 0..3 {
            v[(row, k)] = lambda.powi(-(k as i32 + 1));
        }
        for (col, z) in dressed.iter().enumerate() {
            rhs[(row, col)] = *z;
        }
    }
    let singular = v.singular_values();
    let (smax, smin) = singular
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &x| (hi.max(x), lo.min(x)));
    if !(smin > 0.0) || smax / smin > 1e8 {
        return Err(Error::Conditioning(format!("sample matrix condition number {:e}", smax / smin)));
    }
    // Householder QR: the SVD solve was seen to lose accuracy on some complex samples.
    let qr = v.qr();
    let coeffs = qr
        .r()
        .solve_upper_triangular(&(qr.q().adjoint() * rhs))
        .ok_or_else(|| Error::Conditioning("rank-deficient sample matrix".into()))?;
    let level = |k: usize| {
        let c = coeffs.row(k);
        su2_inverse(&Mat2C::from_column_slice(&[c[0], c[1], c[2], c[3]]))
    };
    Ok(CState3::new(level(0), level(1), level(2), s.b))
}
