#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_top::backlund::CState3;
use twisted_top::canonical_chart::EulerCoords;
use twisted_top::jet_algebra::{JetState, Vec3};
use twisted_top::lax_spectral::CVec3;
use twisted_top::top_dynamics::State3;

pub fn figure_state() -> State3 {
    State3::new(Vec3::new(-2.4, -0.6, -1.2), Vec3::new(-2.19, 0.89, 1.34), Vec3::new(1.0, 0.0, 0.0), 1.0)
}

pub struct Draw(ChaCha8Rng);

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.random_range(lo..hi)
    }

    pub fn sign(&mut self) -> f64 {
        if self.0.random_bool(0.5) { 1.0 } else { -1.0 }
    }

    pub fn vec3(&mut self, r: f64) -> Vec3 {
        Vec3::new(self.real(-r, r), self.real(-r, r), self.real(-r, r))
    }

    pub fn cvec3(&mut self, r: f64) -> CVec3 {
        let re = self.vec3(r);
        let im = self.vec3(r);
        CVec3::new(Complex64::new(re[0], im[0]), Complex64::new(re[1], im[1]), Complex64::new(re[2], im[2]))
    }

    /// Modulus in [lo, hi], uniform argument.
    pub fn complex(&mut self, lo: f64, hi: f64) -> Complex64 {
        Complex64::from_polar(self.real(lo, hi), self.real(0.0, TAU))
    }

    /// Field strength bounded away from zero.
    pub fn field(&mut self) -> f64 {
        self.sign() * self.real(0.5, 2.0)
    }

    pub fn jet(&mut self, n: usize) -> JetState {
        let b = self.vec3(1.5);
        let y = (0..n).map(|_| self.vec3(1.5)).collect();
        JetState::new(b, y).unwrap()
    }

    pub fn state(&mut self) -> State3 {
        let b = self.field();
        State3::new(self.vec3(1.5), self.vec3(1.5), self.vec3(1.0), b)
    }

    pub fn cstate(&mut self) -> CState3 {
        let b = self.field();
        CState3::new(self.cvec3(1.0), self.cvec3(1.0), self.cvec3(0.8), b)
    }

    /// Bäcklund parameter with Re η ∈ [1, 5] and Im η ∈ ±[0.05, 0.5].
    pub fn eta(&mut self) -> Complex64 {
        Complex64::new(self.real(1.0, 5.0), self.sign() * self.real(0.05, 0.5))
    }

    /// Chart point with sin θ ≥ sin 0.1.
    pub fn chart(&mut self) -> EulerCoords {
        EulerCoords {
            theta: self.real(0.1, PI - 0.1),
            phi: self.real(0.0, TAU),
            psi: self.real(0.0, PI),
            p_theta: self.real(-2.0, 2.0),
            p_phi: self.real(-2.0, 2.0),
            p_psi: self.real(0.1, 2.0),
        }
    }
}

/// A real state on the leaf C^(1) = γ₁, C^(2) = γ₂, C^(3) = 1, in the Casimir normalization
/// C1 = 2γ₁, C2 = 2γ₂.
pub fn leaf_state(d: &mut Draw, g1: f64, g2: f64) -> State3 {
    let z = d.vec3(1.0).normalize();
    let mut x = d.vec3(1.0);
    x -= z * x.dot(&z);
    x += z * g2;
    let mut y = d.vec3(1.0);
    y -= z * y.dot(&z);
    y += z * (g1 - 0.5 * x.norm_squared());
    State3::new(y, x, z, d.field())
}
