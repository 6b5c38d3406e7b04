//! Twisted Lagrange top: the third jet extension of the rational su(2) Gaudin model.
//!
//! - [`jet_algebra`]: Lie-Poisson algebra g^(N), Poisson tensor, the 2N commuting integrals.
//! - [`lax_spectral`]: Lax matrix, (u, v, w) entries, spectral curve, r-matrix check.
//! - [`top_dynamics`]: reduced N = 3 state, equations of motion, Lax pair, RK4 reference.
//! - [`canonical_chart`]: Euler-angle canonical coordinates on the unit leaf.
//! - [`backlund`]: one- and two-point Bäcklund maps, generating function, closed-form step, oracle.
//! - [`sim_cli`]: configuration, trajectories, export and the invariant check suite.
//! - [`batch`]: data-parallel helpers with a sequential fallback.

pub mod backlund;
pub mod batch;
pub mod canonical_chart;
pub mod error;
pub mod jet_algebra;
pub mod lax_spectral;
pub mod sim_cli;
pub mod top_dynamics;

pub use error::{Error, Result};
