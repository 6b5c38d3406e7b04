//! Lax matrix, its (u, v, w) entries, the spectral curve and the r-matrix check.
//!
//! L(λ) = Σ_α σ^α [b^α + Σ_i f_i(λ) y_i^α] with σ^α = (i/2)·Pauli^α, so that
//! L = (i/2)[[u, v], [w, -u]], v built from minus components v¹ - i v² and w from plus components.
//! The curve is det(L(λ) - μ) = 0, i.e. 4μ² + u² + vw = 0.

use nalgebra::{DVector, Matrix2, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet_algebra::{f_coefficients, integrals, poisson_tensor, CoefficientVector, JetState};

pub type Mat2C = Matrix2<Complex64>;
pub type CVec3 = Vector3<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxEntries {
    pub u: Complex64,
    pub v: Complex64,
    pub w: Complex64,
}

impl LaxEntries {
    /// u² + vw, which equals -4μ² on the curve.
    pub fn discriminant(&self) -> Complex64 {
        self.u * self.u + self.v * self.w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub eta: Complex64,
    pub mu: Complex64,
    pub branch: Sign,
}

impl SpectralPoint {
    /// The point on the other sheet, (η, -μ).
    pub fn involution(&self) -> Self {
        Self {
            eta: self.eta,
            mu: -self.mu,
            branch: self.branch.flip(),
        }
    }

    /// Eigenvalue of [[u, v], [w, -u]] at η paired with this point: ν = -2iμ.
    pub fn nu(&self) -> Complex64 {
        -2.0 * I * self.mu
    }
}

/// Anything with a constant field term and Laurent levels y_0, y_1, ... in the reduced Lax matrix.
pub trait LaxState {
    fn field(&self) -> CVec3;
    fn levels(&self) -> Vec<CVec3>;
}

impl LaxState for JetState {
    fn field(&self) -> CVec3 {
        self.b().map(Complex64::from)
    }

    fn levels(&self) -> Vec<CVec3> {
        self.y().iter().map(|v| v.map(Complex64::from)).collect()
    }
}

/// Square root with nonnegative real part, ties broken toward nonnegative imaginary part.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let mut r = z.sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        r = -r;
    }
    // Adding +0.0 turns negative zeros into positive ones.
    Complex64::new(r.re + 0.0, r.im + 0.0)
}

/// (i/2)[[v³, v⁻], [v⁺, -v³]].
pub fn su2(v: &CVec3) -> Mat2C {
    let h = 0.5 * I;
    Mat2C::new(h * v[2], h * (v[0] - I * v[1]), h * (v[0] + I * v[1]), -h * v[2])
}

/// Reads a vector back from the su(2) form, ignoring any trace part.
pub fn su2_inverse(m: &Mat2C) -> CVec3 {
    let a = m / (0.5 * I);
    let v3 = 0.5 * (a[(0, 0)] - a[(1, 1)]);
    let (vm, vp) = (a[(0, 1)], a[(1, 0)]);
    CVec3::new(0.5 * (vp + vm), (vp - vm) / (2.0 * I), v3)
}

/// Plus and minus components (v¹ + i v², v¹ - i v²).
pub fn plus_minus(v: &CVec3) -> (Complex64, Complex64) {
    (v[0] + I * v[1], v[0] - I * v[1])
}

/// Inverse of `plus_minus` together with the third component.
pub fn from_plus_minus(plus: Complex64, minus: Complex64, third: Complex64) -> CVec3 {
    CVec3::new(0.5 * (plus + minus), (plus - minus) / (2.0 * I), third)
}

fn check_pole(lambda: Complex64) -> Result<()> {
    if lambda == Complex64::new(0.0, 0.0) {
        Err(Error::Pole)
    } else {
        Ok(())
    }
}

pub fn build_lax(state: &JetState, c: &CoefficientVector, lambda: Complex64) -> Result<Mat2C> {
    check_pole(lambda)?;
    let f = f_coefficients(c, state.order())?;
    let mut acc = state.field();
    for (fi, yi) in f.iter().zip(state.levels()) {
        acc += yi * fi.eval(lambda);
    }
    Ok(su2(&acc))
}

/// u, v, w of the reduced Lax matrix (f_i = λ^-(i+1)).
pub fn entries_uvw<S: LaxState + ?Sized>(state: &S, lambda: Complex64) -> Result<LaxEntries> {
    check_pole(lambda)?;
    let inv = lambda.inv();
    let mut acc = state.field();
    let mut pow = inv;
    for yi in state.levels() {
        acc += yi * pow;
        pow *= inv;
    }
    let (plus, minus) = plus_minus(&acc);
    Ok(LaxEntries { u: acc[2], v: minus, w: plus })
}

pub fn curve_mu_squared<S: LaxState + ?Sized>(state: &S, lambda: Complex64) -> Result<Complex64> {
    Ok(-0.25 * entries_uvw(state, lambda)?.discriminant())
}

/// μ² from the integrals: -(1/4)(<b,b> + Σ H_k λ^-k + Σ C_k λ^-(N+k)).
pub fn curve_mu_squared_expansion(state: &JetState, lambda: Complex64) -> Result<Complex64> {
    check_pole(lambda)?;
    let n = state.order();
    let ints = integrals(state);
    let inv = lambda.inv();
    let mut sum = Complex64::from(state.b().norm_squared());
    for (k, (h, c)) in ints.h.iter().zip(&ints.c).enumerate() {
        sum += *h * inv.powi(k as i32 + 1) + *c * inv.powi((n + k + 1) as i32);
    }
    Ok(-0.25 * sum)
}

pub fn mu_on_curve<S: LaxState + ?Sized>(state: &S, eta: Complex64, branch: Sign) -> Result<SpectralPoint> {
    let mu = branch.value() * principal_sqrt(curve_mu_squared(state, eta)?);
    Ok(SpectralPoint { eta, mu, branch })
}

/// |4μ² + u² + vw| at the point, relative to max(1, |u² + vw|).
pub fn curve_residual<S: LaxState + ?Sized>(state: &S, p: &SpectralPoint) -> Result<f64> {
    let d = entries_uvw(state, p.eta)?.discriminant();
    Ok((4.0 * p.mu * p.mu + d).norm() / d.norm().max(1.0))
}

/// Max mismatch over the six entry-bracket identities, reduced coefficients.
pub fn r_matrix_residual(state: &JetState, lambda: Complex64, mu: Complex64) -> Result<f64> {
    r_matrix_residual_with(state, &CoefficientVector::reduced(state.order()), lambda, mu)
}

/// The six identities
/// {u,u} = {v,v} = {w,w} = 0, {u(λ),v(μ)} = -i Δv/(λ-μ), {u(λ),w(μ)} = i Δw/(λ-μ),
/// {v(λ),w(μ)} = -2i Δu/(λ-μ), with ΔF = F(λ) - F(μ), for arbitrary coefficients c.
pub fn r_matrix_residual_with(state: &JetState, c: &CoefficientVector, lambda: Complex64, mu: Complex64) -> Result<f64> {
    check_pole(lambda)?;
    check_pole(mu)?;
    if lambda == mu {
        return Err(Error::SingularRMatrix);
    }
    let n = state.order();
    let f = f_coefficients(c, n)?;
    let pi = poisson_tensor(state).map(Complex64::from);
    let grads = |l: Complex64| {
        let mut gu = DVector::zeros(3 * n);
        let mut gv = DVector::zeros(3 * n);
        let mut gw = DVector::zeros(3 * n);
        for (i, fi) in f.iter().enumerate() {
            let fv = fi.eval(l);
            gu[3 * i + 2] = fv;
            gv[3 * i] = fv;
            gv[3 * i + 1] = -I * fv;
            gw[3 * i] = fv;
            gw[3 * i + 1] = I * fv;
        }
        [gu, gv, gw]
    };
    let values = |l: Complex64| -> Result<[Complex64; 3]> {
        let m = build_lax(state, c, l)? / (0.5 * I);
        Ok([m[(0, 0)], m[(0, 1)], m[(1, 0)]])
    };
    let [gul, gvl, gwl] = grads(lambda);
    let [gum, gvm, gwm] = grads(mu);
    let vl = values(lambda)?;
    let vm = values(mu)?;
    let br = |a: &DVector<Complex64>, b: &DVector<Complex64>| a.dot(&(&pi * b));
    let k = (lambda - mu).inv();
    let mismatches = [
        br(&gul, &gum),
        br(&gvl, &gvm),
        br(&gwl, &gwm),
        br(&gul, &gvm) + I * k * (vl[1] - vm[1]),
        br(&gul, &gwm) - I * k * (vl[2] - vm[2]),
        br(&gvl, &gwm) + 2.0 * I * k * (vl[0] - vm[0]),
    ];
    Ok(mismatches.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::Vec3;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state3() -> JetState {
        JetState::new(
            Vec3::new(0.0, 0.0, 1.3),
            vec![Vec3::new(1.0, 2.0, 3.0), Vec3::new(-0.5, 0.4, 0.9), Vec3::new(0.2, -1.3, 0.7)],
        )
        .unwrap()
    }

    #[test]
    fn zero_state_lax() {
        let s = JetState::new(Vec3::new(0.0, 0.0, 1.0), vec![Vec3::zeros(); 3]).unwrap();
        let l = build_lax(&s, &CoefficientVector::reduced(3), c(2.0, 1.0)).unwrap();
        assert_eq!(l, Mat2C::new(0.5 * I, c(0.0, 0.0), c(0.0, 0.0), -0.5 * I));
        let e = entries_uvw(&s, c(0.3, 0.0)).unwrap();
        assert_eq!((e.u, e.v, e.w), (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));
        assert_eq!(curve_mu_squared(&s, c(1.0, 0.0)).unwrap(), c(-0.25, 0.0));
        assert_eq!(mu_on_curve(&s, c(1.0, 0.0), Sign::Plus).unwrap().mu, c(0.0, 0.5));
        assert!(matches!(build_lax(&s, &CoefficientVector::reduced(3), c(0.0, 0.0)), Err(Error::Pole)));
    }

    #[test]
    fn lax_matches_entries_and_is_traceless() {
        let s = state3();
        let lam = c(0.7, -1.1);
        let l = build_lax(&s, &CoefficientVector::reduced(3), lam).unwrap();
        let e = entries_uvw(&s, lam).unwrap();
        let expect = Mat2C::new(e.u, e.v, e.w, -e.u) * (0.5 * I);
        assert!((l - expect).camax() < 1e-14);
        assert!(l.trace().norm() < 1e-15);
    }

    #[test]
    fn residue_at_third_order_is_z() {
        let s = state3();
        let lam = c(1e-3, 0.0);
        let l = build_lax(&s, &CoefficientVector::reduced(3), lam).unwrap() * lam.powi(3);
        let z = su2(&s.y()[2].map(Complex64::from));
        assert!((l - z).camax() < 1e-2);
        assert_eq!(su2_inverse(&z), s.y()[2].map(Complex64::from));
    }

    #[test]
    fn entries_limits_and_conjugation() {
        let s = state3();
        let e = entries_uvw(&s, c(1e8, 0.0)).unwrap();
        assert!((e.u - 1.3).norm() < 1e-7 && e.v.norm() < 1e-7 && e.w.norm() < 1e-7);
        let e = entries_uvw(&s, c(0.8, 0.0)).unwrap();
        assert!((e.w - e.v.conj()).norm() < 1e-14);
    }

    #[test]
    fn curve_forms_agree_and_det_vanishes() {
        let s = state3();
        let lam = c(1.7, 0.4);
        let a = curve_mu_squared(&s, lam).unwrap();
        let b = curve_mu_squared_expansion(&s, lam).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm());
        let p = mu_on_curve(&s, lam, Sign::Plus).unwrap();
        let l = build_lax(&s, &CoefficientVector::reduced(3), lam).unwrap();
        let det = (l - Mat2C::identity() * p.mu).determinant();
        assert!(det.norm() < 1e-12);
        let q = mu_on_curve(&s, lam, Sign::Minus).unwrap();
        assert_eq!(q.mu, -p.mu);
        assert_eq!(p.involution(), q);
    }

    #[test]
    fn principal_sqrt_convention() {
        assert_eq!(principal_sqrt(c(-4.0, 0.0)), c(0.0, 2.0));
        assert_eq!(principal_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
        assert_eq!(principal_sqrt(c(4.0, 0.0)), c(2.0, 0.0));
        let r = principal_sqrt(c(-3.0, -1.0));
        assert!(r.re >= 0.0);
    }

    #[test]
    fn r_matrix_point_examples() {
        let s = state3();
        let r = r_matrix_residual(&s, c(2.0, 0.0), c(0.0, 3.0)).unwrap();
        assert!(r <= 1e-12 * s.scale());
        assert!(matches!(r_matrix_residual(&s, c(2.0, 0.0), c(2.0, 0.0)), Err(Error::SingularRMatrix)));
        let general = CoefficientVector::new(vec![0.7, -1.3]).unwrap();
        assert!(r_matrix_residual_with(&s, &general, c(1.5, 0.5), c(-0.3, 2.0)).unwrap() <= 1e-12 * s.scale());
    }
}
