//! Grid sweeps over the `u`-plane with CSV and JSON output.
//!
//! Points are evaluated on a bounded rayon pool and collected in grid order,
//! so the output does not depend on the number of threads.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeometryPoint, PointFlag, MIN_SCHEDULE_END};
use crate::knots::KnotSpec;

pub const CSV_HEADER: &str = "idx,u_re,u_im,H_re,H_im,v_re,v_im,V,geo_len,p,q,err_est,flags";

/// Tolerance key: numeric points whose extrapolation error exceeds it are
/// flagged `large_error`.
pub const TOL_ERR_EST: &str = "err_est";

/// Rectangle `[re_min, re_max] x [im_min, im_max]` sampled on a
/// `steps_re x steps_im` lattice, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub steps_re: u32,
    pub steps_im: u32,
}

fn lattice(lo: f64, hi: f64, steps: u32, k: u32) -> f64 {
    if steps <= 1 {
        lo
    } else {
        lo + (hi - lo) * k as f64 / (steps - 1) as f64
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        self.steps_re as usize * self.steps_im as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major: rows run over the imaginary axis, columns over the real axis.
    pub fn point(&self, idx: usize) -> Complex64 {
        let row = (idx / self.steps_re as usize) as u32;
        let col = (idx % self.steps_re as usize) as u32;
        Complex64::new(
            lattice(self.re_min, self.re_max, self.steps_re, col),
            lattice(self.im_min, self.im_max, self.steps_im, row),
        )
    }

    fn validate(&self) -> Result<()> {
        if self.steps_re == 0 || self.steps_im == 0 {
            return Err(Error::Validation("grid steps must be at least 1".into()));
        }
        if ![self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|x| x.is_finite()) {
            return Err(Error::Validation("grid bounds must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NSchedule {
    pub n_min: u32,
    pub n_max: u32,
    pub n_step: u32,
}

impl NSchedule {
    pub fn values(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (self.n_min..=self.n_max).step_by(self.n_step.max(1) as usize).collect();
        if out.last() != Some(&self.n_max) {
            out.push(self.n_max);
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 2 {
            return Err(Error::Validation("n_min must be at least 2".into()));
        }
        if self.n_step == 0 || self.n_max < self.n_min {
            return Err(Error::Validation("need n_step >= 1 and n_max >= n_min".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    ClosedForm,
    NumericLimit,
    /// Closed-form row followed by numeric row for every grid point.
    Both,
}

impl std::str::FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed" => Ok(SweepMode::ClosedForm),
            "numeric_limit" | "numeric" => Ok(SweepMode::NumericLimit),
            "both" => Ok(SweepMode::Both),
            _ => Err(Error::Validation(format!(
                "unknown mode '{s}' (expected closed_form, numeric_limit or both)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepJob {
    pub knot: KnotSpec,
    pub grid: Grid,
    pub n_schedule: NSchedule,
    pub mode: SweepMode,
    pub tolerances: BTreeMap<String, f64>,
}

impl SweepJob {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.n_schedule.validate()?;
        if self.mode != SweepMode::ClosedForm {
            let n = self.n_schedule.values();
            if n.len() < 4 || self.n_schedule.n_max < MIN_SCHEDULE_END {
                return Err(Error::Validation(format!(
                    "numeric modes need at least 4 schedule values and n_max >= {MIN_SCHEDULE_END}"
                )));
            }
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Validation(format!("tolerance {k} = {v} must be finite and >= 0")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub idx: usize,
    #[serde(flatten)]
    pub point: GeometryPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub idx: usize,
    pub u: Complex64,
    pub diagnostic: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub job: SweepJob,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
}

fn evaluate(job: &SweepJob, schedule: &[u32], u: Complex64) -> Vec<Result<GeometryPoint>> {
    let numeric = || {
        GeometryPoint::numeric(job.knot, u, schedule).map(|mut p| {
            if let (Some(tol), Some(err)) = (job.tolerances.get(TOL_ERR_EST), p.error_estimate) {
                if err > *tol {
                    p.flags.push(PointFlag::LargeError);
                }
            }
            p
        })
    };
    match job.mode {
        SweepMode::ClosedForm => vec![GeometryPoint::closed_form(job.knot, u)],
        SweepMode::NumericLimit => vec![numeric()],
        SweepMode::Both => vec![GeometryPoint::closed_form(job.knot, u), numeric()],
    }
}

/// Evaluates every grid point on a pool of `parallelism` threads. Failing
/// points are recorded in `failures`; the sweep itself only fails on an
/// invalid job.
pub fn run_sweep(job: &SweepJob, parallelism: usize) -> Result<SweepResult> {
    job.validate()?;
    if parallelism == 0 {
        return Err(Error::Validation("parallelism must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Validation(format!("thread pool: {e}")))?;
    let schedule = job.n_schedule.values();
    let evaluated: Vec<(usize, Complex64, Vec<Result<GeometryPoint>>)> = pool.install(|| {
        (0..job.grid.len())
            .into_par_iter()
            .map(|idx| {
                let u = job.grid.point(idx);
                (idx, u, evaluate(job, &schedule, u))
            })
            .collect()
    });
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (idx, u, results) in evaluated {
        for r in results {
            match r {
                Ok(point) => rows.push(SweepRow { idx, point }),
                Err(e) => failures.push(SweepFailure {
                    idx,
                    u,
                    diagnostic: e.to_string(),
                }),
            }
        }
    }
    Ok(SweepResult {
        job: job.clone(),
        rows,
        failures,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One CSV line (no newline) in [`CSV_HEADER`] order. Floats use the
/// shortest representation that round-trips.
pub fn csv_row(idx: usize, p: &GeometryPoint) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        idx,
        p.u.re,
        p.u.im,
        p.h.re,
        p.h.im,
        p.v.re,
        p.v.im,
        p.volume,
        p.geodesic_length,
        opt(p.surgery.map(|s| s.p)),
        opt(p.surgery.map(|s| s.q)),
        opt(p.error_estimate),
        p.flags_string(),
    )
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&csv_row(r.idx, &r.point));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
