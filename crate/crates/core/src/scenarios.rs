//! The four initial-state families and uniform time sweeps over them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{product_state, validate, BlochVec, SingleQubitBloch, TwoQubitBloch};
use crate::error::{Error, Result};
use crate::evolution::{evolve, CouplingParams};
use crate::measures::{measure_all, MeasureSet};
use crate::smallmat::RMat3;

/// Initial-state family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScenarioSpec {
    /// Alice polarized along x, Bob maximally mixed.
    Class1 { sx: f64 },
    /// Alice along +x, Bob along −x.
    Class2,
    /// Alice along x, Bob polarized in the x-y plane.
    Class3 { sx: f64, tx: f64, ty: f64 },
    /// Pure entangled family `s = (p,0,0)`, `t = (−p,0,0)`,
    /// `C = diag(−1, −q, −q)` with `q = √(1−p²)`. `p = 0` is the singlet,
    /// `p = 1` the product `|+⟩|−⟩`.
    Entangled { p: f64 },
}

impl ScenarioSpec {
    pub const CLASS1: ScenarioSpec = ScenarioSpec::Class1 { sx: 1.0 };
    pub const CLASS3: ScenarioSpec = ScenarioSpec::Class3 {
        sx: 1.0,
        tx: 0.5,
        ty: 0.5,
    };

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioSpec::Class1 { .. } => "class1",
            ScenarioSpec::Class2 => "class2",
            ScenarioSpec::Class3 { .. } => "class3",
            ScenarioSpec::Entangled { .. } => "entangled",
        }
    }
}

/// Uniform grid `t_start..=t_end` with `steps` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub params: CouplingParams,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl SweepConfig {
    pub fn new(params: CouplingParams, t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        let cfg = SweepConfig {
            params,
            t_start,
            t_end,
            steps,
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        let CouplingParams {
            alpha1,
            alpha2,
            alpha3,
        } = self.params;
        if ![alpha1, alpha2, alpha3, self.t_start, self.t_end]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        if self.t_end <= self.t_start {
            return Err(Error::InvalidConfig(format!(
                "t_end ({}) must exceed t_start ({})",
                self.t_end, self.t_start
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    /// `t_k = t_start + (t_end − t_start)·k / (steps − 1)`; exact at both ends.
    pub fn time_at(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            return self.t_end;
        }
        self.t_start + (self.t_end - self.t_start) * k as f64 / (self.steps - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.time_at(k)).collect()
    }
}

impl Default for SweepConfig {
    /// `α = π/6` on all axes, `t ∈ [0, 6]`, 601 points.
    fn default() -> Self {
        SweepConfig {
            params: CouplingParams::default(),
            t_start: 0.0,
            t_end: 6.0,
            steps: 601,
        }
    }
}

/// One grid point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t: f64,
    pub measures: MeasureSet,
    pub s_tilde: BlochVec,
    pub t_tilde: BlochVec,
}

impl SweepRecord {
    /// Largest difference over every field except `t`.
    pub fn max_abs_diff(&self, other: &SweepRecord) -> f64 {
        self.measures
            .max_abs_diff(&other.measures)
            .max(self.s_tilde.max_abs_diff(other.s_tilde))
            .max(self.t_tilde.max_abs_diff(other.t_tilde))
    }
}

fn bloch(x: f64, y: f64, z: f64) -> SingleQubitBloch {
    SingleQubitBloch {
        v: BlochVec::new(x, y, z),
    }
}

pub fn initial_state(spec: &ScenarioSpec) -> Result<TwoQubitBloch> {
    let invalid = |e: Error| Error::InvalidSpec(format!("{}: {e}", spec.name()));
    let st = match *spec {
        ScenarioSpec::Class1 { sx } => {
            product_state(bloch(sx, 0.0, 0.0), SingleQubitBloch::default()).map_err(invalid)?
        }
        ScenarioSpec::Class2 => product_state(bloch(1.0, 0.0, 0.0), bloch(-1.0, 0.0, 0.0))?,
        ScenarioSpec::Class3 { sx, tx, ty } => {
            product_state(bloch(sx, 0.0, 0.0), bloch(tx, ty, 0.0)).map_err(invalid)?
        }
        ScenarioSpec::Entangled { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!(
                    "entangled: p = {p} outside [0, 1]"
                )));
            }
            let q = (1.0 - p * p).sqrt();
            TwoQubitBloch::new(
                BlochVec::new(p, 0.0, 0.0),
                BlochVec::new(-p, 0.0, 0.0),
                RMat3::diag([-1.0, -q, -q]),
            )
        }
    };
    let report = validate(&st);
    if !report.valid {
        return Err(Error::InvalidSpec(format!(
            "{}: min eigenvalue {:.3e}",
            spec.name(),
            report.min_eigenvalue
        )));
    }
    Ok(st)
}

/// Measures at one time, starting from `st0`.
pub fn record_at(st0: &TwoQubitBloch, params: &CouplingParams, t: f64) -> Result<SweepRecord> {
    let st = evolve(st0, params, t)?;
    Ok(SweepRecord {
        t,
        measures: measure_all(&st)?,
        s_tilde: st.s,
        t_tilde: st.t,
    })
}

/// Evaluates every grid point independently (in parallel); records come back
/// in ascending `t`.
pub fn sweep(spec: &ScenarioSpec, cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.check()?;
    let st0 = initial_state(spec)?;
    (0..cfg.steps)
        .into_par_iter()
        .map(|k| record_at(&st0, &cfg.params, cfg.time_at(k)))
        .collect()
}

/// Closed-form reduced Bloch vectors of the entangled family:
/// `s̃ = (p cos 2t(α₂+α₃), 0, 0)`, `t̃ = −s̃`.
pub fn reduced_entangled_analytic(
    p: f64,
    params: &CouplingParams,
    t: f64,
) -> (SingleQubitBloch, SingleQubitBloch) {
    let x = p * (2.0 * t * (params.alpha2 + params.alpha3)).cos();
    (bloch(x, 0.0, 0.0), bloch(-x, 0.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn initial_states() {
        let c1 = initial_state(&ScenarioSpec::CLASS1).unwrap();
        assert_eq!(c1.s, BlochVec::new(1.0, 0.0, 0.0));
        assert_eq!(c1.t, BlochVec::ZERO);
        assert_eq!(c1.c, RMat3::zeros());

        let singlet = initial_state(&ScenarioSpec::Entangled { p: 0.0 }).unwrap();
        assert_eq!(singlet.c, RMat3::diag([-1.0; 3]));
        assert_eq!(singlet.s, BlochVec::ZERO);

        let sep = initial_state(&ScenarioSpec::Entangled { p: 1.0 }).unwrap();
        assert_eq!(measure_all(&sep).unwrap().doe, 0.0);

        let c3 = initial_state(&ScenarioSpec::CLASS3).unwrap();
        assert_eq!(c3.t, BlochVec::new(0.5, 0.5, 0.0));
        assert_eq!(c3.c.0[0][1], 0.5);
    }

    #[test]
    fn invalid_specs() {
        for spec in [
            ScenarioSpec::Entangled { p: 1.5 },
            ScenarioSpec::Entangled { p: -0.1 },
            ScenarioSpec::Class3 {
                sx: 1.0,
                tx: 0.8,
                ty: 0.8,
            },
            ScenarioSpec::Class1 { sx: 1.2 },
        ] {
            assert!(
                matches!(initial_state(&spec), Err(Error::InvalidSpec(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn entangled_family_is_pure() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let st = initial_state(&ScenarioSpec::Entangled { p }).unwrap();
            assert!((st.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_config_validation() {
        let p = CouplingParams::default();
        assert!(SweepConfig::new(p, 0.0, 6.0, 1).is_err());
        assert!(SweepConfig::new(p, 1.0, 1.0, 10).is_err());
        assert!(SweepConfig::new(p, 0.0, f64::NAN, 10).is_err());
        let cfg = SweepConfig::default();
        assert_eq!(cfg.time_at(150), 1.5);
        assert_eq!(cfg.time_at(300), 3.0);
        assert_eq!(cfg.time_at(600), 6.0);
    }

    #[test]
    fn class1_record_at_swap_point() {
        let records = sweep(&ScenarioSpec::CLASS1, &SweepConfig::default()).unwrap();
        assert_eq!(records.len(), 601);
        let r = records[150];
        assert_eq!(r.t, 1.5);
        assert!((r.measures.purity_a - 0.5).abs() < 1e-12);
        assert!((r.measures.purity_b - 1.0).abs() < 1e-12);
        assert!((r.measures.entropy_a - LN_2).abs() < 1e-12);
        assert!(r.measures.entropy_b.abs() < 1e-12);
        assert!(records.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn class2_record_at_swap_point() {
        let records = sweep(&ScenarioSpec::Class2, &SweepConfig::default()).unwrap();
        let r = records[150];
        assert!(r.measures.doe <= 1e-9);
        assert!(r.s_tilde.max_abs_diff(BlochVec::new(-1.0, 0.0, 0.0)) < 1e-12);
        assert!(r.t_tilde.max_abs_diff(BlochVec::new(1.0, 0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn entangled_persists() {
        let records = sweep(&ScenarioSpec::Entangled { p: 0.7 }, &SweepConfig::default()).unwrap();
        let min = records
            .iter()
            .map(|r| r.measures.doe)
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.0);
    }

    #[test]
    fn entangled_analytic_examples() {
        let p = CouplingParams::default();
        let (a, b) = reduced_entangled_analytic(0.4, &p, 0.0);
        assert_eq!(
            (a.v, b.v),
            (BlochVec::new(0.4, 0.0, 0.0), BlochVec::new(-0.4, 0.0, 0.0))
        );
        for t in [0.0, 0.7, 2.2] {
            let (a, b) = reduced_entangled_analytic(0.0, &p, t);
            assert_eq!(a.v.norm(), 0.0);
            assert_eq!(b.v.norm(), 0.0);
        }
        // 2t(α₂+α₃) = π at t = 1.5: the marginals flip sign
        let (a, b) = reduced_entangled_analytic(0.7, &p, 1.5);
        assert!(a.v.max_abs_diff(BlochVec::new(-0.7, 0.0, 0.0)) < 1e-15);
        assert!(b.v.max_abs_diff(BlochVec::new(0.7, 0.0, 0.0)) < 1e-15);
    }
}
