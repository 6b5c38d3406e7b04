//! Data-parallel evaluation over independent inputs.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool; without it the
//! same functions run sequentially. The `*_sequential` variants are always sequential.

use num_complex::Complex64;

use crate::backlund::real_bt_step;
use crate::error::Result;
use crate::lax_spectral::Sign;
use crate::top_dynamics::State3;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Largest value of `f` over `items`; errors propagate.
pub fn max_of<T, F>(items: &[T], f: F) -> Result<f64>
where
    T: Sync,
    F: Fn(&T) -> Result<f64> + Sync + Send,
{
    map(items, f).into_iter().try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))
}

/// One real Bäcklund step applied to each state.
pub fn bt_step_batch(states: &[State3], eta: Complex64, branch: Sign) -> Vec<Result<State3>> {
    map(states, |s| real_bt_step(s, eta, branch))
}

pub fn bt_step_batch_sequential(states: &[State3], eta: Complex64, branch: Sign) -> Vec<Result<State3>> {
    map_sequential(states, |s| real_bt_step(s, eta, branch))
}

/// `steps` real Bäcklund steps from `start` for each η in `etas`; returns the final states.
pub fn eta_sweep(start: &State3, etas: &[Complex64], steps: usize, branch: Sign) -> Vec<Result<State3>> {
    map(etas, |&eta| (0..steps).try_fold(*start, |s, _| real_bt_step(&s, eta, branch)))
}

pub fn eta_sweep_sequential(start: &State3, etas: &[Complex64], steps: usize, branch: Sign) -> Vec<Result<State3>> {
    map_sequential(etas, |&eta| (0..steps).try_fold(*start, |s, _| real_bt_step(&s, eta, branch)))
}
