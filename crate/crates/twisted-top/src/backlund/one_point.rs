use num_complex::Complex64;

use super::{dress, dressing_ratio, CState3};
use crate::error::{Error, Result};
use crate::lax_spectral::{from_plus_minus, plus_minus, Mat2C, SpectralPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BTAuxOne {
    pub p: Complex64,
    pub q: Complex64,
}

/// p = y⁻/(2b); q = (u(η) - ν)/v(η) = -w(η)/(u(η) + ν).
pub fn one_point_aux(s: &CState3, point: &SpectralPoint) -> Result<BTAuxOne> {
    if s.b == 0.0 {
        return Err(Error::ZeroField);
    }
    let (_, ym) = plus_minus(&s.y);
    let p = ym / (2.0 * s.b);
    let q = dressing_ratio(s, point, "one-point map")?;
    Ok(BTAuxOne { p, q })
}

/// [[λ - η + pq, p], [q, 1]], with determinant λ - η.
pub fn intertwiner_one(lambda: Complex64, eta: Complex64, aux: &BTAuxOne) -> Mat2C {
    Mat2C::new(lambda - eta + aux.p * aux.q, aux.p, aux.q, Complex64::new(1.0, 0.0))
}

/// Explicit component form of the one-point map.
pub fn one_point_map(s: &CState3, point: &SpectralPoint) -> Result<CState3> {
    let BTAuxOne { p, q } = one_point_aux(s, point)?;
    if p == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularMap("one-point map divides by p = y⁻/(2b), which is zero".into()));
    }
    let eta = point.eta;
    let b = s.b;
    let (yp, ym) = plus_minus(&s.y);
    let (xp, xm) = plus_minus(&s.x);
    let (_, zm) = plus_minus(&s.z);
    let (y3, x3, z3) = (s.y[2], s.x[2], s.z[2]);
    let r = p * q - eta;
    let qp = q / p;

    let ny3 = y3;
    let nym = xm + r * ym - 2.0 * p * y3;
    let nyp = 2.0 * q * b;

    let nx3 = x3 + p * yp - q * xm - q * r * ym + 2.0 * p * q * y3;
    let nxm = (2.0 * p * q - eta) * xm - 2.0 * p * x3 - p * p * yp + p * q * r * ym - 2.0 * p * p * q * y3 + zm;
    let nxp = yp - qp * r * ym + 2.0 * q * y3;

    let nz3 = z3 - q * zm + 2.0 * p * q * x3 - p * q * q * xm + p * xp - eta * q * r * ym
        + p * eta * yp
        + 2.0 * eta * p * q * y3;
    let nzp = 2.0 * q * x3 - q * q * xm + xp - eta * qp * r * ym + eta * yp + 2.0 * eta * q * y3;
    let nzm = (2.0 * p * q - eta) * zm - 2.0 * p * z3 - 2.0 * p * p * q * x3 + p * p * q * q * xm - p * p * xp
        + eta * p * q * r * ym
        - p * p * eta * yp
        - 2.0 * eta * p * p * q * y3;

    let out = CState3::new(
        from_plus_minus(nyp, nym, ny3),
        from_plus_minus(nxp, nxm, nx3),
        from_plus_minus(nzp, nzm, nz3),
        b,
    );
    if !out.is_finite() {
        return Err(Error::SingularMap("one-point map produced non-finite values".into()));
    }
    Ok(out)
}

/// The same map read off from exact Laurent coefficients of M L adj(M)/(λ - η).
pub fn one_point_map_extracted(s: &CState3, point: &SpectralPoint) -> Result<CState3> {
    let aux = one_point_aux(s, point)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let r = aux.p * aux.q - point.eta;
    let m = [Mat2C::new(r, aux.p, aux.q, one), Mat2C::new(one, zero, zero, zero)];
    let adj = [Mat2C::new(one, -aux.p, -aux.q, r), Mat2C::new(zero, zero, zero, one)];
    Ok(dress(s, m, adj, &[point.eta]))
}
