//! Bäcklund transformations L(λ) ↦ M(λ) L(λ) M(λ)⁻¹ of the reduced N = 3 system.
//!
//! Spectral points carry the curve-normalized μ (4μ² + u² + vw = 0). The dressing formulas are
//! written with ν = -2iμ, the eigenvalue of [[u, v], [w, -u]], via [`SpectralPoint::nu`].

mod affine;
mod generating;
mod one_point;
mod oracle;
mod poisson;
mod two_point;

use std::collections::BTreeMap;

use nalgebra::SVector;
use num_complex::Complex64;

pub use affine::{affine_apply, affine_parts, AffineMapParts};
pub use generating::{
    generating_function, leaf_k_branch, spectrality_residual, LeafPair, GENERATING_STEP,
};
pub use one_point::{intertwiner_one, one_point_aux, one_point_map, one_point_map_extracted, BTAuxOne};
pub use oracle::{oracle_sample_points, similarity_oracle};
pub use poisson::{poisson_map_residual, POISSON_FD_STEP};
pub use two_point::{
    conjugate_partner, intertwiner_two, real_bt_step, two_point_aux, two_point_map, two_point_map_c, BTAuxTwo,
    REALITY_TOLERANCE,
};

use crate::lax_spectral::{su2, su2_inverse, CVec3, LaxState, Mat2C, SpectralPoint};
use crate::top_dynamics::State3;

/// Complexified reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CState3 {
    pub y: CVec3,
    pub x: CVec3,
    pub z: CVec3,
    pub b: f64,
}

impl CState3 {
    pub fn new(y: CVec3, x: CVec3, z: CVec3, b: f64) -> Self {
        Self { y, x, z, b }
    }

    pub fn from_real(s: &State3) -> Self {
        let c = |v: &crate::jet_algebra::Vec3| v.map(Complex64::from);
        Self::new(c(&s.y), c(&s.x), c(&s.z), s.b)
    }

    pub fn real_part(&self) -> State3 {
        State3::new(self.y.map(|c| c.re), self.x.map(|c| c.re), self.z.map(|c| c.re), self.b)
    }

    pub fn max_imag(&self) -> f64 {
        self.to_array().iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn to_array(&self) -> SVector<Complex64, 9> {
        SVector::<Complex64, 9>::from_iterator(self.y.iter().chain(self.x.iter()).chain(self.z.iter()).copied())
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn norm(&self) -> f64 {
        (self.b * self.b + self.to_array().norm_squared()).sqrt()
    }

    /// max(1, |state|^2).
    pub fn scale(&self) -> f64 {
        self.norm().powi(2).max(1.0)
    }

    /// Max entrywise distance to another state.
    pub fn distance(&self, other: &CState3) -> f64 {
        (self.to_array() - other.to_array()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// H1, H2, H3, C1, C2, C3 extended to complex states (bilinear, no conjugation).
    pub fn integrals(&self) -> [Complex64; 6] {
        let b = CVec3::new(0.0.into(), 0.0.into(), self.b.into());
        let (y, x, z) = (&self.y, &self.x, &self.z);
        [
            2.0 * b.dot(y),
            y.dot(y) + 2.0 * b.dot(x),
            2.0 * (b.dot(z) + y.dot(x)),
            2.0 * y.dot(z) + x.dot(x),
            2.0 * x.dot(z),
            z.dot(z),
        ]
    }
}

impl LaxState for CState3 {
    fn field(&self) -> CVec3 {
        CVec3::new(0.0.into(), 0.0.into(), self.b.into())
    }

    fn levels(&self) -> Vec<CVec3> {
        vec![self.y, self.x, self.z]
    }
}

/// Largest relative change in the six integrals, |F(a) - F(b)| / max(1, |F(a)|).
pub fn integral_drift(a: &CState3, b: &CState3) -> f64 {
    a.integrals()
        .iter()
        .zip(b.integrals())
        .map(|(p, q)| (p - q).norm() / p.norm().max(1.0))
        .fold(0.0, f64::max)
}

type MatPoly = BTreeMap<i32, Mat2C>;

fn poly_mul(a: &MatPoly, b: &MatPoly) -> MatPoly {
    let mut out = MatPoly::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert_with(Mat2C::zeros) += x * y;
        }
    }
    out
}

fn lax_poly(s: &CState3) -> MatPoly {
    MatPoly::from([
        (0, su2(&CVec3::new(0.0.into(), 0.0.into(), s.b.into()))),
        (-1, su2(&s.y)),
        (-2, su2(&s.x)),
        (-3, su2(&s.z)),
    ])
}

/// Exact λ⁻¹..λ⁻³ coefficients of M L adj(M) / det M for M = m1 λ + m0, with det M = Π (λ - r).
///
/// 1/Π(λ - r) = λ^-d Σ h_m λ^-m where h_m are complete homogeneous sums of the roots.
fn dress(s: &CState3, m: [Mat2C; 2], adj: [Mat2C; 2], roots: &[Complex64]) -> CState3 {
    let mp = MatPoly::from([(1, m[1]), (0, m[0])]);
    let ap = MatPoly::from([(1, adj[1]), (0, adj[0])]);
    let p = poly_mul(&poly_mul(&mp, &lax_poly(s)), &ap);
    let d = roots.len() as i32;
    let h = |m: i32| -> Complex64 {
        match roots {
            [r] => r.powi(m),
            [r1, r2] => (0..=m).map(|a| r1.powi(a) * r2.powi(m - a)).sum(),
            _ => unreachable!("dressing uses one or two roots"),
        }
    };
    let coeff = |j: i32| -> Mat2C {
        let mut acc = Mat2C::zeros();
        for m in 0..=j {
            if let Some(pk) = p.get(&(d - (j - m))) {
                acc += pk * h(m);
            }
        }
        acc
    };
    CState3::new(su2_inverse(&coeff(1)), su2_inverse(&coeff(2)), su2_inverse(&coeff(3)), s.b)
}

/// u + σν without cancellation. On the curve ν² = u² + vw, so the smaller of u ± ν equals
/// ±vw/(ν ∓ u) and is computed that way.
pub(crate) fn shifted(e: &crate::lax_spectral::LaxEntries, nu: Complex64, sigma: f64) -> Complex64 {
    let direct = e.u + sigma * nu;
    let other = e.u - sigma * nu;
    if direct.norm() < other.norm() && other != Complex64::new(0.0, 0.0) {
        // (u + σν)(u - σν) = u² - ν² = -vw
        -e.v * e.w / other
    } else {
        direct
    }
}

/// Picks the q-type ratio (u - ν)/v, or the equivalent -w/(u + ν) when |v| < |u + ν|.
fn dressing_ratio(s: &CState3, p: &SpectralPoint, what: &str) -> crate::Result<Complex64> {
    let e = crate::lax_spectral::entries_uvw(s, p.eta)?;
    let nu = p.nu();
    let tol = 1e-14 * (e.u.norm() + nu.norm()).max(1.0);
    let (minus, plus) = (shifted(&e, nu, -1.0), shifted(&e, nu, 1.0));
    if e.v.norm() >= plus.norm() {
        if e.v.norm() <= tol {
            return Err(crate::Error::DegeneratePoint(format!("{what}: v(η) and u(η)+ν both vanish")));
        }
        Ok(minus / e.v)
    } else {
        if plus.norm() <= tol {
            return Err(crate::Error::DegeneratePoint(format!("{what}: v(η) and u(η)+ν both vanish")));
        }
        Ok(-e.w / plus)
    }
}
