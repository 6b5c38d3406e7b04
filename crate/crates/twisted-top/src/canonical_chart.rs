//! Euler-angle canonical coordinates on the leaf C^(1) = 0, C^(2) = 0, C^(3) = 1.
//!
//! z = (sin θ cos φ, sin θ sin φ, -cos θ). With this orientation the canonical brackets
//! reproduce the Lie-Poisson brackets of all nine components and the leaf is hit exactly.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::jet_algebra::{levi_civita, Vec3};
use crate::top_dynamics::State3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerCoords {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    pub p_theta: f64,
    pub p_phi: f64,
    pub p_psi: f64,
}

impl EulerCoords {
    /// Checks p_ψ > 0, sin θ ≠ 0 and the angle ranges θ ∈ (0, π), φ ∈ [0, 2π), ψ ∈ [0, π).
    pub fn validate(&self) -> Result<()> {
        let values = [self.theta, self.phi, self.psi, self.p_theta, self.p_phi, self.p_psi];
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("non-finite Euler coordinate".into()));
        }
        if self.p_psi <= 0.0 {
            return Err(Error::Domain(format!("p_psi must be positive, got {}", self.p_psi)));
        }
        if self.theta <= 0.0 || self.theta >= PI || self.theta.sin() == 0.0 {
            return Err(Error::ChartSingularity);
        }
        if !(0.0..TAU).contains(&self.phi) || !(0.0..PI).contains(&self.psi) {
            return Err(Error::Domain("phi must lie in [0, 2π) and psi in [0, π)".into()));
        }
        Ok(())
    }

    /// Coordinates as (θ, φ, ψ, p_θ, p_φ, p_ψ).
    pub fn to_array(&self) -> [f64; 6] {
        [self.theta, self.phi, self.psi, self.p_theta, self.p_phi, self.p_psi]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self {
            theta: a[0],
            phi: a[1],
            psi: a[2],
            p_theta: a[3],
            p_phi: a[4],
            p_psi: a[5],
        }
    }
}

// Evaluates the realization without domain checks so finite differences may step across range edges.
fn realize_raw(e: &EulerCoords, b: f64) -> State3 {
    let (st, ct) = e.theta.sin_cos();
    let (sf, cf) = e.phi.sin_cos();
    let (sp, cp) = e.psi.sin_cos();
    let r = (2.0 * e.p_psi).sqrt();
    let y = Vec3::new(
        sf * e.p_theta + ct / st * cf * e.p_phi - cf / st * e.p_psi,
        -cf * e.p_theta + ct / st * sf * e.p_phi - sf / st * e.p_psi,
        e.p_phi,
    );
    let x = r * Vec3::new(sp * sf - ct * cp * cf, -sp * cf - ct * cp * sf, -st * cp);
    let z = Vec3::new(st * cf, st * sf, -ct);
    State3::new(y, x, z, b)
}

pub fn realize(e: &EulerCoords, b: f64) -> Result<State3> {
    e.validate()?;
    Ok(realize_raw(e, b))
}

fn hamiltonian_raw(e: &EulerCoords, b: f64) -> f64 {
    let (st, ct) = e.theta.sin_cos();
    0.5 * e.p_theta * e.p_theta
        + (e.p_psi * e.p_psi + e.p_phi * e.p_phi - 2.0 * e.p_psi * e.p_phi * ct) / (2.0 * st * st)
        - b * (2.0 * e.p_psi).sqrt() * st * e.psi.cos()
}

/// H = p_θ²/2 + (p_ψ² + p_φ² - 2 p_ψ p_φ cos θ)/(2 sin²θ) - b √(2p_ψ) sin θ cos ψ.
pub fn canonical_hamiltonian(e: &EulerCoords, b: f64) -> Result<f64> {
    e.validate()?;
    Ok(hamiltonian_raw(e, b))
}

/// (I1, I2) with I1 = p_φ and I2 = H3/2 expressed in the chart.
pub fn canonical_integrals(e: &EulerCoords, b: f64) -> Result<(f64, f64)> {
    e.validate()?;
    let (st, ct) = e.theta.sin_cos();
    let (sp, cp) = e.psi.sin_cos();
    let i2 = (2.0 * e.p_psi).sqrt()
        * (e.p_theta * sp + (e.p_psi - e.p_phi * ct) * ct / st * cp - e.p_phi * st * cp)
        - b * ct;
    Ok((e.p_phi, i2))
}

/// Central difference of H in φ, which vanishes because φ is cyclic.
pub fn cyclicity_residual(e: &EulerCoords, b: f64) -> Result<f64> {
    e.validate()?;
    let h = 1e-6 * e.phi.abs().max(1.0);
    let mut p = *e;
    let mut m = *e;
    p.phi += h;
    m.phi -= h;
    Ok(((hamiltonian_raw(&p, b) - hamiltonian_raw(&m, b)) / (2.0 * h)).abs())
}

/// Max mismatch between canonical brackets of the nine components (finite-difference gradients)
/// and the Lie-Poisson brackets from structure constants at `realize(e)`.
pub fn bracket_pushforward_residual(e: &EulerCoords) -> Result<f64> {
    e.validate()?;
    let base = e.to_array();
    // grads[k][c] = ∂(component c)/∂(coordinate k)
    let mut grads = [[0.0f64; 9]; 6];
    for (k, row) in grads.iter_mut().enumerate() {
        let h = 1e-6 * base[k].abs().max(1.0);
        let mut p = base;
        let mut m = base;
        p[k] += h;
        m[k] -= h;
        let fp = realize_raw(&EulerCoords::from_array(p), 0.0).to_array();
        let fm = realize_raw(&EulerCoords::from_array(m), 0.0).to_array();
        for c in 0..9 {
            row[c] = (fp[c] - fm[c]) / (2.0 * h);
        }
    }
    let s = realize_raw(e, 0.0);
    let levels = [s.y, s.x, s.z];
    let mut worst = 0.0f64;
    for a in 0..9 {
        for c in 0..9 {
            let canonical: f64 = (0..3)
                .map(|i| grads[i][a] * grads[i + 3][c] - grads[i + 3][a] * grads[i][c])
                .sum();
            let level = a / 3 + c / 3;
            let lie = if level < 3 {
                (0..3).map(|g| levi_civita(a % 3, c % 3, g) * levels[level][g]).sum()
            } else {
                0.0
            };
            worst = worst.max((canonical - lie).abs());
        }
    }
    Ok(worst)
}

/// Tolerance scale for chart identities: max(1, |p|²).
pub fn chart_scale(e: &EulerCoords) -> f64 {
    (e.p_theta.powi(2) + e.p_phi.powi(2) + e.p_psi.powi(2)).max(1.0)
}
