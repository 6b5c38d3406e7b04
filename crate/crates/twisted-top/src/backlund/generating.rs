use num_complex::Complex64;

use super::{one_point_map, CState3};
use crate::error::{Error, Result};
use crate::lax_spectral::{plus_minus, principal_sqrt, Sign, SpectralPoint};

/// Relative step for the central differences in [`spectrality_residual`], before it is capped
/// by the distance to the nearest singularity.
pub const GENERATING_STEP: f64 = 1e-5;

/// Minus components of the old state and plus components of the new one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafPair {
    pub ym: Complex64,
    pub xm: Complex64,
    pub zm: Complex64,
    pub yp_new: Complex64,
    pub xp_new: Complex64,
    pub zp_new: Complex64,
}

impl LeafPair {
    pub fn new(old: &CState3, new: &CState3) -> Self {
        Self {
            ym: plus_minus(&old.y).1,
            xm: plus_minus(&old.x).1,
            zm: plus_minus(&old.z).1,
            yp_new: plus_minus(&new.y).0,
            xp_new: plus_minus(&new.x).0,
            zp_new: plus_minus(&new.z).0,
        }
    }
}

/// Sign of k = z³ - ỹ⁺z⁻/(2b) relative to the principal root of 1 + η z⁻ z̃⁺.
///
/// The sign is fixed by the state, not by a branch convention.
pub fn leaf_k_branch(old: &CState3, new: &CState3, eta: Complex64) -> Sign {
    let leaf = LeafPair::new(old, new);
    let k = old.z[2] - leaf.yp_new * leaf.zm / (2.0 * old.b);
    let principal = principal_sqrt(1.0 + eta * leaf.zm * leaf.zp_new);
    if (k * principal.conj()).re >= 0.0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn check_leaf(l: &LeafPair, eta: Complex64, b: f64) -> Result<()> {
    let zero = Complex64::new(0.0, 0.0);
    if l.zm == zero || l.zp_new == zero {
        return Err(Error::Domain("generating function needs z⁻ ≠ 0 and z̃⁺ ≠ 0".into()));
    }
    if eta == zero {
        return Err(Error::Pole);
    }
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(())
}

fn log_ratio(k: Complex64) -> Result<Complex64> {
    if k == Complex64::new(0.0, 0.0) || k == Complex64::new(1.0, 0.0) || k == Complex64::new(-1.0, 0.0) {
        return Err(Error::Domain(format!("k = {k} is a branch point")));
    }
    Ok(((k + 1.0) / (k - 1.0)).ln())
}

/// F_p with k and ln((k+1)/(k-1)) already fixed on a branch.
fn generating_c(
    l: &LeafPair,
    eta: Complex64,
    gamma1: Complex64,
    gamma2: Complex64,
    b: f64,
    k: Complex64,
    log: Complex64,
) -> Complex64 {
    // The Casimir values enter doubled, as the integrals C1 = 2C^(1), C2 = 2C^(2).
    let (g1, g2) = (2.0 * gamma1, 2.0 * gamma2);
    let LeafPair { ym, xm, zm, yp_new: yp, xp_new: xp, zp_new: zp } = *l;
    let rm = xm / zm;
    let rp = xp / zp;
    let bracket = zp * xm + zm * xp - eta * xp * xm
        + rm * (rm + 0.5 * eta * xm * zp - g2)
        + rp * (rp + 0.5 * eta * xp * zm - g2);
    let f = ym * yp / (2.0 * b) + k * (ym / zm + yp / zp)
        - ((1.0 + eta * g2).powi(2) + k * k) / (4.0 * k * eta * eta)
        + 0.5 * (g2 * g2 / 4.0 - g1) * log
        - bracket / (2.0 * k);
    -f - b * eta
}

/// Generating function F_η of the one-point map on a leaf with Casimir values
/// C^(1) = γ₁, C^(2) = γ₂, C^(3) = 1.
///
/// It satisfies ν + ∂F_η/∂η = 0 with ν = -2iμ, and -Ψ = H(χ⁻)∇_{χ⁻}F_η, -Ψ̃ = H(χ̃⁺)∇_{χ̃⁺}F_η,
/// where Ψ = (y³, x³, z³), χ⁻ = (y⁻, x⁻, z⁻) and H(a, b, c) = [[a, b, c], [b, c, 0], [c, 0, 0]].
/// k = ±√(1 + η z⁻ z̃⁺) with the sign given by `k_branch` (see [`leaf_k_branch`]); the
/// logarithm is principal.
pub fn generating_function(
    leaf: &LeafPair,
    eta: Complex64,
    gamma1: f64,
    gamma2: f64,
    b: f64,
    k_branch: Sign,
) -> Result<Complex64> {
    check_leaf(leaf, eta, b)?;
    let k = k_branch.value() * principal_sqrt(1.0 + eta * leaf.zm * leaf.zp_new);
    let log = log_ratio(k)?;
    Ok(generating_c(leaf, eta, gamma1.into(), gamma2.into(), b, k, log))
}

/// max over the directions h and ih of |ν + ∂F_η/∂η|, by central differences (one Richardson
/// step) at the one-point image of `s`. The Casimir values are read from `s`, which must lie on C^(3) = 1.
pub fn spectrality_residual(s: &CState3, point: &SpectralPoint) -> Result<f64> {
    let ints = s.integrals();
    if (ints[5] - 1.0).norm() > 1e-9 {
        return Err(Error::Domain(format!("state is not on <z,z> = 1 (got {})", ints[5])));
    }
    let (gamma1, gamma2) = (0.5 * ints[3], 0.5 * ints[4]);
    let new = one_point_map(s, point)?;
    let leaf = LeafPair::new(s, &new);
    check_leaf(&leaf, point.eta, s.b)?;
    // k and the logarithm follow their values at η continuously, so the stencil never
    // straddles a branch cut of the principal root or log.
    let k0 = s.z[2] - leaf.yp_new * leaf.zm / (2.0 * s.b);
    let log0 = log_ratio(k0)?;
    let eval = |eta: Complex64| -> Result<Complex64> {
        let root = principal_sqrt(1.0 + eta * leaf.zm * leaf.zp_new);
        let k = if (root - k0).norm() <= (root + k0).norm() { root } else { -root };
        let log = log_ratio(k)?;
        let turns = ((log0 - log).im / (2.0 * std::f64::consts::PI)).round();
        let log = log + Complex64::new(0.0, 2.0 * std::f64::consts::PI * turns);
        Ok(generating_c(&leaf, eta, gamma1, gamma2, s.b, k, log))
    };
    // F is singular at η = 0 (k = ±1) and where k² = 1 + η z⁻z̃⁺ vanishes.
    let zz = leaf.zm * leaf.zp_new;
    let reach = if zz == Complex64::new(0.0, 0.0) {
        point.eta.norm()
    } else {
        point.eta.norm().min((1.0 + point.eta * zz).norm() / zz.norm())
    };
    let h = (GENERATING_STEP * point.eta.norm().max(1.0)).min(1e-2 * reach);
    let central = |dir: Complex64| -> Result<Complex64> { Ok((eval(point.eta + dir)? - eval(point.eta - dir)?) / (2.0 * dir)) };
    let mut worst = 0.0f64;
    for dir in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
        // One Richardson step removes the h² term.
        let d = (4.0 * central(0.5 * dir)? - central(dir)?) / 3.0;
        worst = worst.max((point.nu() + d).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::Vec3;
    use crate::lax_spectral::mu_on_curve;
    use crate::top_dynamics::State3;

    fn leaf_state(g1: f64, g2: f64) -> CState3 {
        let z = Vec3::new(0.48, -0.6, 0.64);
        let mut x = Vec3::new(0.3, 0.9, -0.2);
        x -= z * x.dot(&z);
        x += z * g2;
        let mut y = Vec3::new(-0.7, 0.2, 0.5);
        y -= z * y.dot(&z);
        y += z * (g1 - 0.5 * x.norm_squared());
        CState3::from_real(&State3::new(y, x, z, 1.2))
    }

    #[test]
    fn spectrality_on_leaves() {
        for (g1, g2) in [(0.0, 0.0), (0.3, -0.4)] {
            let s = leaf_state(g1, g2);
            let ints = s.integrals();
            assert!((ints[3] - 2.0 * g1).norm() < 1e-14 && (ints[4] - 2.0 * g2).norm() < 1e-14);
            for branch in [Sign::Plus, Sign::Minus] {
                let p = mu_on_curve(&s, Complex64::new(0.6, 0.8), branch).unwrap();
                let r = spectrality_residual(&s, &p).unwrap();
                assert!(r < 1e-6, "residual {r}");
            }
        }
    }

    #[test]
    fn k_from_state_squares_correctly() {
        let s = leaf_state(0.0, 0.0);
        let eta = Complex64::new(0.6, 0.8);
        let p = mu_on_curve(&s, eta, Sign::Plus).unwrap();
        let new = one_point_map(&s, &p).unwrap();
        let l = LeafPair::new(&s, &new);
        let k = s.z[2] - l.yp_new * l.zm / (2.0 * s.b);
        assert!((k * k - (1.0 + eta * l.zm * l.zp_new)).norm() < 1e-12);
        let k2 = new.z[2] - l.zp_new * l.ym / (2.0 * s.b);
        assert!((k - k2).norm() < 1e-12);
    }

    #[test]
    fn log_term_vanishes_on_special_casimirs() {
        let l = LeafPair {
            ym: Complex64::new(0.3, 0.1),
            xm: Complex64::new(-0.2, 0.4),
            zm: Complex64::new(0.5, -0.3),
            yp_new: Complex64::new(0.1, 0.2),
            xp_new: Complex64::new(0.7, 0.0),
            zp_new: Complex64::new(-0.4, 0.6),
        };
        let eta = Complex64::new(0.9, 0.2);
        let g2 = 0.6;
        // Moving γ₁ off γ₂²/2 changes F only through the log term, linearly.
        let f0 = generating_function(&l, eta, g2 * g2 / 2.0, g2, 1.1, Sign::Plus).unwrap();
        let f1 = generating_function(&l, eta, g2 * g2 / 2.0 + 1.0, g2, 1.1, Sign::Plus).unwrap();
        let k = principal_sqrt(1.0 + eta * l.zm * l.zp_new);
        let log = ((k + 1.0) / (k - 1.0)).ln();
        assert!((f1 - f0 - log).norm() < 1e-12);
        let bad = LeafPair { zm: Complex64::new(0.0, 0.0), ..l };
        assert!(generating_function(&bad, eta, 0.0, 0.0, 1.0, Sign::Plus).is_err());
    }
}
