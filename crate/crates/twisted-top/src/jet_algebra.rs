//! The Lie-Poisson algebra g^(N) of the N-th jet extension of su(2).
//!
//! Coordinates are the components y_i^α of N vectors, i in 0..N, α in 1..=3.
//! Flattened vectors and matrices use the index `3*i + (α-1)`.
//! The field `b` is a parameter, not a coordinate, so it never carries a gradient.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Dense 3N x 3N Lie-Poisson tensor.
pub type PoissonTensor = DMatrix<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct JetState {
    b: Vec3,
    y: Vec<Vec3>,
}

impl JetState {
    pub fn new(b: Vec3, y: Vec<Vec3>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::Argument("jet order N must be at least 1".into()));
        }
        let finite = b.iter().chain(y.iter().flat_map(|v| v.iter())).all(|c| c.is_finite());
        if !finite {
            return Err(Error::Argument("jet state has non-finite entries".into()));
        }
        Ok(Self { b, y })
    }

    /// Jet order N.
    pub fn order(&self) -> usize {
        self.y.len()
    }

    pub fn b(&self) -> &Vec3 {
        &self.b
    }

    pub fn y(&self) -> &[Vec3] {
        &self.y
    }

    /// Coordinates y_i^α flattened with index 3i + (α-1).
    pub fn flat(&self) -> DVector<f64> {
        DVector::from_iterator(3 * self.order(), self.y.iter().flat_map(|v| v.iter().copied()))
    }

    pub fn from_flat(b: Vec3, flat: &[f64]) -> Result<Self> {
        if flat.is_empty() || flat.len() % 3 != 0 {
            return Err(Error::Argument(format!(
                "flat coordinate length {} is not a positive multiple of 3",
                flat.len()
            )));
        }
        let y = flat.chunks(3).map(Vec3::from_column_slice).collect();
        Self::new(b, y)
    }

    /// Euclidean norm of (b, y_0, ..., y_{N-1}).
    pub fn norm(&self) -> f64 {
        (self.b.norm_squared() + self.y.iter().map(|v| v.norm_squared()).sum::<f64>()).sqrt()
    }

    /// Tolerance scale for quantities quadratic in the state: max(1, |state|^2).
    pub fn scale(&self) -> f64 {
        self.norm().powi(2).max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    c: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if !c.iter().all(|x| x.is_finite()) {
            return Err(Error::Argument("coefficients must be finite".into()));
        }
        Ok(Self { c })
    }

    /// The reduced choice c_1 = -1, c_k = 0 for k >= 2, for jet order `n`.
    pub fn reduced(n: usize) -> Self {
        let mut c = vec![0.0; n.saturating_sub(1)];
        if let Some(first) = c.first_mut() {
            *first = -1.0;
        }
        Self { c }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSet {
    pub h: Vec<f64>,
    pub c: Vec<f64>,
}

/// A finite Laurent polynomial in 1/λ, stored as power -> coefficient.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InversePoly(pub BTreeMap<usize, f64>);

impl InversePoly {
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let inv = lambda.inv();
        self.0.iter().map(|(&p, &c)| c * inv.powi(p as i32)).sum()
    }

    pub fn coeff(&self, power: usize) -> f64 {
        self.0.get(&power).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }
}

fn check_axis(a: usize) -> Result<()> {
    if (1..=3).contains(&a) {
        Ok(())
    } else {
        Err(Error::Argument(format!("axis {a} not in 1..=3")))
    }
}

/// Levi-Civita symbol on 0-based axes.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// {y_i^α, y_j^β} with 1-based axes.
pub fn structure_bracket(state: &JetState, i: usize, alpha: usize, j: usize, beta: usize) -> Result<f64> {
    let n = state.order();
    if i >= n || j >= n {
        return Err(Error::Argument(format!("level index out of range for N = {n}")));
    }
    check_axis(alpha)?;
    check_axis(beta)?;
    if i + j >= n {
        return Ok(0.0);
    }
    let v = &state.y[i + j];
    Ok((0..3).map(|g| levi_civita(alpha - 1, beta - 1, g) * v[g]).sum())
}

fn hat(v: &Vec3) -> nalgebra::Matrix3<f64> {
    nalgebra::Matrix3::new(0.0, v[2], -v[1], -v[2], 0.0, v[0], v[1], -v[0], 0.0)
}

pub fn poisson_tensor(state: &JetState) -> PoissonTensor {
    let n = state.order();
    let mut pi = DMatrix::zeros(3 * n, 3 * n);
    for i in 0..n {
        for j in 0..n - i {
            pi.fixed_view_mut::<3, 3>(3 * i, 3 * j).copy_from(&hat(&state.y[i + j]));
        }
    }
    pi
}

/// f_0 ... f_{N-1} as Laurent polynomials in 1/λ.
pub fn f_coefficients(c: &CoefficientVector, n: usize) -> Result<Vec<InversePoly>> {
    if n == 0 {
        return Err(Error::Argument("N must be at least 1".into()));
    }
    if c.c.len() != n - 1 {
        return Err(Error::Argument(format!(
            "expected {} coefficients for N = {n}, got {}",
            n - 1,
            c.c.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut poly = BTreeMap::new();
        if i == 0 {
            poly.insert(1, 1.0);
        } else {
            let mut q = vec![0u32; i];
            partitions(i, 1, &mut q, &c.c, &mut poly);
            poly.retain(|_, v| *v != 0.0);
        }
        out.push(InversePoly(poly));
    }
    Ok(out)
}

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

// q[k-1] is the multiplicity of part k. The m-th derivative of 1/λ is (-1)^m m! λ^-(m+1).
fn partitions(rem: usize, k: usize, q: &mut [u32], c: &[f64], acc: &mut BTreeMap<usize, f64>) {
    if k > q.len() {
        if rem == 0 {
            let m: u32 = q.iter().sum();
            let numerator: f64 = q.iter().enumerate().map(|(idx, &qk)| c[idx].powi(qk as i32)).product();
            if numerator == 0.0 {
                return;
            }
            let denominator: f64 = q.iter().map(|&qk| factorial(qk)).product();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            *acc.entry(m as usize + 1).or_insert(0.0) += sign * factorial(m) * numerator / denominator;
        }
        return;
    }
    for mult in 0..=rem / k {
        q[k - 1] = mult as u32;
        partitions(rem - mult * k, k + 1, q, c, acc);
    }
    q[k - 1] = 0;
}

/// Coefficient of λ^-m in <B(λ), B(λ)> for the reduced Lax matrix, m in 1..=2N.
fn spectral_coefficient(state: &JetState, m: usize) -> f64 {
    let n = state.order();
    let mut q = 0.0;
    if m - 1 < n {
        q += 2.0 * state.b.dot(&state.y[m - 1]);
    }
    if m >= 2 {
        let total = m - 2;
        for i in total.saturating_sub(n - 1)..=total.min(n - 1) {
            q += state.y[i].dot(&state.y[total - i]);
        }
    }
    q
}

fn spectral_coefficient_gradient(state: &JetState, m: usize) -> DVector<f64> {
    let n = state.order();
    let mut g = DVector::zeros(3 * n);
    if m - 1 < n {
        g.fixed_rows_mut::<3>(3 * (m - 1)).add_assign(&(2.0 * state.b));
    }
    if m >= 2 {
        let total = m - 2;
        for j in total.saturating_sub(n - 1)..=total.min(n - 1) {
            g.fixed_rows_mut::<3>(3 * j).add_assign(&(2.0 * state.y[total - j]));
        }
    }
    g
}

/// H_k and C_k for the reduced coefficients.
pub fn integrals(state: &JetState) -> IntegralSet {
    let n = state.order();
    IntegralSet {
        h: (1..=n).map(|k| spectral_coefficient(state, k)).collect(),
        c: (1..=n).map(|k| spectral_coefficient(state, n + k)).collect(),
    }
}

/// Analytic gradients of H_1..H_N followed by C_1..C_N.
pub fn integral_gradients(state: &JetState) -> Vec<DVector<f64>> {
    (1..=2 * state.order())
        .map(|m| spectral_coefficient_gradient(state, m))
        .collect()
}

/// Max |{F, G}| over all pairs of integrals.
pub fn pairwise_bracket_residuals(state: &JetState) -> f64 {
    let pi = poisson_tensor(state);
    let grads = integral_gradients(state);
    let mut worst = 0.0f64;
    for (a, ga) in grads.iter().enumerate() {
        let pg = &pi * ga;
        for gb in grads.iter().skip(a + 1) {
            worst = worst.max(gb.dot(&pg).abs());
        }
    }
    worst
}

/// Max over k of the sup-norm of Π ∇C_k.
pub fn casimir_residual(state: &JetState) -> f64 {
    let n = state.order();
    let pi = poisson_tensor(state);
    integral_gradients(state)[n..]
        .iter()
        .map(|g| (&pi * g).amax())
        .fold(0.0, f64::max)
}

/// Cyclic sum {{a,b},c} + {{b,c},a} + {{c,a},b} for coordinate functions
/// given as (level, 1-based axis), computed from structure constants only.
pub fn jacobi_residual(state: &JetState, a: (usize, usize), b: (usize, usize), c: (usize, usize)) -> Result<f64> {
    let n = state.order();
    let nested = |p: (usize, usize), q: (usize, usize), r: (usize, usize)| -> Result<f64> {
        // {p, q} = Σ_γ ε^{pq γ} y_{lp+lq}^γ, a linear coordinate function.
        let level = p.0 + q.0;
        if level >= n {
            return Ok(0.0);
        }
        let mut sum = 0.0;
        for g in 1..=3 {
            let e = levi_civita(p.1 - 1, q.1 - 1, g - 1);
            if e != 0.0 {
                sum += e * structure_bracket(state, level, g, r.0, r.1)?;
            }
        }
        Ok(sum)
    };
    for &(i, al) in &[a, b, c] {
        structure_bracket(state, i, al, 0, 1)?;
    }
    Ok((nested(a, b, c)? + nested(b, c, a)? + nested(c, a, b)?).abs())
}
