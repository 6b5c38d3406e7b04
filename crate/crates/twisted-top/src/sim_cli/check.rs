use std::fmt;

use num_complex::Complex64;

use super::config::RunConfig;
use crate::backlund::{integral_drift, poisson_map_residual, real_bt_step, CState3};
use crate::error::Result;
use crate::jet_algebra::{casimir_residual, pairwise_bracket_residuals};
use crate::lax_spectral::{curve_residual, mu_on_curve, r_matrix_residual};
use crate::top_dynamics::{lax_pair_residual, lax_pair_scale, rk4_step, State3};

/// η used by the suite when the config has no usable Bäcklund parameter.
pub const FALLBACK_ETA: Complex64 = Complex64::new(5.0, 0.1);

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the quantity could not be computed.
    pub error: Option<String>,
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "{tag}  {:<28} error: {e}", self.name),
            None => write!(f, "{tag}  {:<28} {:>12.3e} <= {:.1e}", self.name, self.value, self.tolerance),
        }
    }
}

fn row(name: &'static str, tolerance: f64, value: Result<f64>) -> CheckRow {
    match value {
        Ok(value) => CheckRow { name, value, tolerance, passed: value <= tolerance, error: None },
        Err(e) => CheckRow { name, value: f64::NAN, tolerance, passed: false, error: Some(e.to_string()) },
    }
}

/// The η the suite uses: the configured one if Im η ≠ 0, otherwise [`FALLBACK_ETA`].
pub fn suite_eta(cfg: &RunConfig) -> Complex64 {
    if cfg.eta_im != 0.0 { cfg.eta() } else { FALLBACK_ETA }
}

/// Invariant checks at the configured initial state.
pub fn check_suite(cfg: &RunConfig) -> Vec<CheckRow> {
    let s = &cfg.initial;
    let eta = suite_eta(cfg);
    let jet = s.to_jet();
    let scale = s.scale();
    let lam = eta;
    let other = eta + Complex64::new(0.5, -0.3);
    vec![
        row("spectral curve membership", 1e-10, mu_on_curve(s, eta, cfg.branch).and_then(|p| curve_residual(s, &p))),
        row("r-matrix identities", 1e-12 * scale, r_matrix_residual(&jet, lam, other)),
        row("integrals in involution", 1e-12 * scale, Ok(pairwise_bracket_residuals(&jet))),
        row("Casimirs annihilated", 1e-12 * scale, Ok(casimir_residual(&jet))),
        row("Lax pair of the flow", 1e-12, lax_pair_residual(s, lam).map(|r| r / lax_pair_scale(s, lam))),
        row("BT step conserves integrals", 1e-10, bt_drift(s, eta, cfg)),
        row("BT identity at Im η = 0", 1e-12, identity_distance(s, eta, cfg)),
        row("BT step is Poisson", 1e-5 * scale, poisson_map_residual(s, eta, cfg.branch)),
        row("RK4 step drift (h = 1e-3)", 1e-10, Ok(integral_drift(&CState3::from_real(s), &CState3::from_real(&rk4_step(s, 1e-3))))),
    ]
}

fn bt_drift(s: &State3, eta: Complex64, cfg: &RunConfig) -> Result<f64> {
    let next = real_bt_step(s, eta, cfg.branch)?;
    Ok(integral_drift(&CState3::from_real(s), &CState3::from_real(&next)))
}

fn identity_distance(s: &State3, eta: Complex64, cfg: &RunConfig) -> Result<f64> {
    let next = real_bt_step(s, Complex64::new(eta.re, 0.0), cfg.branch)?;
    Ok((next.to_array() - s.to_array()).amax())
}
