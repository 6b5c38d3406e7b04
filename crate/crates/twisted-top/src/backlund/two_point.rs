use num_complex::Complex64;

use super::{dress, dressing_ratio, shifted, CState3};
use crate::error::{Error, Result};
use crate::lax_spectral::{entries_uvw, mu_on_curve, Mat2C, Sign, SpectralPoint};
use crate::top_dynamics::State3;

/// Imaginary residue allowed by [`real_bt_step`], relative to max(1, |state|²).
pub const REALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BTAuxTwo {
    pub s: Complex64,
    pub t: Complex64,
    /// η₁ - η₂ - st, which is 2i Im(η) - st under the real reduction.
    pub alpha1: Complex64,
    /// α₁ - st.
    pub alpha2: Complex64,
}

/// s = (u(η₁) - ν₁)/v(η₁), t = (η₁-η₂)(u₁+ν₁)(u₂-ν₂) / [(u₁+ν₁)w₂ - (u₂-ν₂)w₁].
///
/// The map is parametrized by `p1` and by `p2` as it enters these formulas; `p1 == p2` gives t = 0.
pub fn two_point_aux(state: &CState3, p1: &SpectralPoint, p2: &SpectralPoint) -> Result<BTAuxTwo> {
    let s = dressing_ratio(state, p1, "two-point map")?;
    let (eta1, eta2) = (p1.eta, p2.eta);
    let t = if eta1 == eta2 {
        Complex64::new(0.0, 0.0)
    } else {
        let e1 = entries_uvw(state, eta1)?;
        let e2 = entries_uvw(state, eta2)?;
        let (a, c) = (shifted(&e1, p1.nu(), 1.0), shifted(&e2, p2.nu(), -1.0));
        let den = a * e2.w - c * e1.w;
        let num = (eta1 - eta2) * a * c;
        if den.norm() <= 1e-14 * num.norm().max(1e-300) {
            return Err(Error::DegenerateParameter("denominator of t vanishes".into()));
        }
        num / den
    };
    let alpha1 = eta1 - eta2 - s * t;
    Ok(BTAuxTwo { s, t, alpha1, alpha2: alpha1 - s * t })
}

/// [[λ - η₁ + st, t], [-s²t + (η₁-η₂)s, λ - η₂ - st]], with determinant (λ-η₁)(λ-η₂).
pub fn intertwiner_two(lambda: Complex64, eta1: Complex64, eta2: Complex64, aux: &BTAuxTwo) -> Mat2C {
    let (s, t) = (aux.s, aux.t);
    Mat2C::new(lambda - eta1 + s * t, t, -s * s * t + (eta1 - eta2) * s, lambda - eta2 - s * t)
}

/// Two-point map on a complex state, by exact coefficient extraction of M L M⁻¹.
pub fn two_point_map_c(state: &CState3, p1: &SpectralPoint, p2: &SpectralPoint) -> Result<CState3> {
    let aux = two_point_aux(state, p1, p2)?;
    let (s, t) = (aux.s, aux.t);
    let (e1, e2) = (p1.eta, p2.eta);
    if e1 == e2 && t == Complex64::new(0.0, 0.0) {
        // M = (λ - η) Id commutes with L.
        return Ok(*state);
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let id = Mat2C::new(one, zero, zero, one);
    let lower = -s * s * t + (e1 - e2) * s;
    let m = [Mat2C::new(-e1 + s * t, t, lower, -e2 - s * t), id];
    let adj = [Mat2C::new(-e2 - s * t, -t, -lower, -e1 + s * t), id];
    let out = dress(state, m, adj, &[e1, e2]);
    if !out.is_finite() {
        return Err(Error::DegenerateParameter("two-point map produced non-finite values".into()));
    }
    Ok(out)
}

pub fn two_point_map(state: &State3, p1: &SpectralPoint, p2: &SpectralPoint) -> Result<CState3> {
    two_point_map_c(&CState3::from_real(state), p1, p2)
}

/// The partner point that keeps a real state real: η₂ = conj(η₁) and μ₂ = -conj(μ₁),
/// equivalently ν₂ = conj(ν₁) for ν = -2iμ.
pub fn conjugate_partner(p: &SpectralPoint) -> SpectralPoint {
    SpectralPoint {
        eta: p.eta.conj(),
        mu: -p.mu.conj(),
        branch: p.branch,
    }
}

/// One physical time step: the two-point map with η₁ = η, η₂ = conj(η) and conjugate-paired roots.
///
/// Im(η) plays the role of the time step; Im(η) = 0 is the degenerate identity step.
pub fn real_bt_step(state: &State3, eta: Complex64, branch: Sign) -> Result<State3> {
    let p1 = mu_on_curve(state, eta, branch)?;
    let p2 = conjugate_partner(&p1);
    let out = two_point_map(state, &p1, &p2)?;
    let residue = out.max_imag();
    let tolerance = REALITY_TOLERANCE * state.scale();
    if !(residue <= tolerance) {
        return Err(Error::RealityViolation { residue, tolerance });
    }
    Ok(out.real_part())
}
