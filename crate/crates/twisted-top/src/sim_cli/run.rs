use serde::Serialize;

use super::config::{Integrator, RunConfig};
use crate::backlund::real_bt_step;
use crate::error::{Error, Result};
use crate::top_dynamics::{integrals3, material_point, rk4_step, Integrals3, State3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub y: [f64; 3],
    pub x: [f64; 3],
    pub z: [f64; 3],
    /// Material point x - z.
    pub xm: [f64; 3],
    pub integrals: Integrals3,
}

impl TrajectoryRecord {
    pub fn new(step: usize, s: &State3) -> Self {
        Self {
            step,
            y: s.y.into(),
            x: s.x.into(),
            z: s.z.into(),
            xm: material_point(s).into(),
            integrals: integrals3(s),
        }
    }
}

/// Record 0 is `initial`; record n is `step` applied n times. Step errors carry their index.
pub fn run_with_stepper<F>(initial: &State3, steps: usize, mut step: F) -> Result<Vec<TrajectoryRecord>>
where
    F: FnMut(&State3) -> Result<State3>,
{
    let mut out = Vec::with_capacity(steps + 1);
    out.push(TrajectoryRecord::new(0, initial));
    let mut s = *initial;
    for n in 1..=steps {
        s = step(&s).map_err(|e| Error::Step { step: n, source: Box::new(e) })?;
        if !s.is_finite() {
            return Err(Error::Step {
                step: n,
                source: Box::new(Error::Domain("state became non-finite".into())),
            });
        }
        out.push(TrajectoryRecord::new(n, &s));
    }
    Ok(out)
}

pub fn run_trajectory(cfg: &RunConfig) -> Result<Vec<TrajectoryRecord>> {
    match cfg.integrator {
        Integrator::Bt2 => run_with_stepper(&cfg.initial, cfg.steps, |s| real_bt_step(s, cfg.eta(), cfg.branch)),
        Integrator::Rk4 => {
            let h = cfg.rk4_h.ok_or_else(|| Error::config("rk4_h", "missing"))?;
            run_with_stepper(&cfg.initial, cfg.steps, |s| Ok(rk4_step(s, h)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationReport {
    /// max_n |F_k(n) - F_k(0)| / max(1, |F_k(0)|), in the order H1, H2, H3, C1, C2, C3.
    pub drift: [f64; 6],
    /// Step at which each maximum is attained (0 if the integral never moves).
    pub worst_step: [usize; 6],
}

impl ConservationReport {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }
}

pub fn conservation_report(records: &[TrajectoryRecord]) -> Result<ConservationReport> {
    if records.len() < 2 {
        return Err(Error::Argument(format!("need at least 2 records, got {}", records.len())));
    }
    let base = records[0].integrals.as_array();
    let mut rep = ConservationReport { drift: [0.0; 6], worst_step: [0; 6] };
    for r in &records[1..] {
        for (k, v) in r.integrals.as_array().iter().enumerate() {
            let d = (v - base[k]).abs() / base[k].abs().max(1.0);
            if d > rep.drift[k] {
                rep.drift[k] = d;
                rep.worst_step[k] = r.step;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::Vec3;

    fn start() -> State3 {
        State3::new(Vec3::new(-2.4, -0.6, -1.2), Vec3::new(-2.19, 0.89, 1.34), Vec3::new(1.0, 0.0, 0.0), 1.0)
    }

    #[test]
    fn constant_trajectory_has_zero_drift() {
        let recs = run_with_stepper(&start(), 5, |s| Ok(*s)).unwrap();
        assert_eq!(recs.len(), 6);
        let rep = conservation_report(&recs).unwrap();
        assert_eq!(rep.drift, [0.0; 6]);
        assert_eq!(rep.worst_step, [0; 6]);
        assert!(conservation_report(&recs[..1]).is_err());
    }

    #[test]
    fn step_errors_are_annotated() {
        let mut n = 0;
        let err = run_with_stepper(&start(), 5, |s| {
            n += 1;
            if n == 3 { Err(Error::Pole) } else { Ok(*s) }
        })
        .unwrap_err();
        assert!(matches!(err, Error::Step { step: 3, .. }));
    }

    #[test]
    fn xm_is_x_minus_z() {
        let r = TrajectoryRecord::new(0, &start());
        for k in 0..3 {
            assert_eq!(r.xm[k], r.x[k] - r.z[k]);
        }
    }
}
