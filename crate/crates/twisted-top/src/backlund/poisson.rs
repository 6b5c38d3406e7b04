use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::real_bt_step;
use crate::error::Result;
use crate::jet_algebra::poisson_tensor;
use crate::lax_spectral::Sign;
use crate::top_dynamics::State3;

pub const POISSON_FD_STEP: f64 = 1e-6;

fn tensor9(s: &State3) -> SMatrix<f64, 9, 9> {
    SMatrix::<f64, 9, 9>::from_iterator(poisson_tensor(&s.to_jet()).iter().copied())
}

/// Max-entry norm of J Π(s) Jᵀ - Π(ŝ), J the central-difference Jacobian of `real_bt_step`.
pub fn poisson_map_residual(s: &State3, eta: Complex64, branch: Sign) -> Result<f64> {
    let image = real_bt_step(s, eta, branch)?;
    let base = s.to_array();
    let mut jac = SMatrix::<f64, 9, 9>::zeros();
    for k in 0..9 {
        let mut e = SVector::<f64, 9>::zeros();
        e[k] = POISSON_FD_STEP;
        let fp = real_bt_step(&State3::from_array(&(base + e), s.b), eta, branch)?.to_array();
        let fm = real_bt_step(&State3::from_array(&(base - e), s.b), eta, branch)?.to_array();
        jac.set_column(k, &((fp - fm) / (2.0 * POISSON_FD_STEP)));
    }
    let pushed = jac * tensor9(s) * jac.transpose();
    Ok((pushed - tensor9(&image)).amax())
}
