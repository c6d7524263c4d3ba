//! Overflow-safe colored Jones polynomials `J_N(K;q)`, normalized so that
//! the unknot gives 1 and `J_2` is the Jones polynomial.

mod fig8;
mod torus;

use torus::LogT;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knots::KnotSpec;
use crate::numerics::{log_branch_neg, normalize_phase, LogComplex};

/// `log J = analytic + log(residual)`.
///
/// `analytic` carries the exact exponent of any explicit power-of-`q`
/// prefactor; its imaginary part is a true value, not one reduced mod `2 pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesLog {
    pub analytic: Complex64,
    pub residual: LogComplex,
}

impl JonesLog {
    fn one() -> Self {
        JonesLog {
            analytic: Complex64::new(0.0, 0.0),
            residual: LogComplex::ONE,
        }
    }

    pub fn value(&self) -> LogComplex {
        LogComplex::from_log(self.analytic) * self.residual
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JonesEvaluation {
    pub knot: KnotSpec,
    pub n: u32,
    pub q: Complex64,
    pub value: LogComplex,
}

/// `log q` in double precision plus the exact `log t = log q / 4` used by
/// the torus sums.
#[derive(Debug, Clone, Copy)]
struct LogQ {
    value: Complex64,
    quarter: LogT,
}

impl LogQ {
    fn from_q(q: Complex64) -> Result<Self> {
        if q.re == 0.0 && q.im == 0.0 {
            return Err(Error::Domain("q = 0".into()));
        }
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite q = {q}")));
        }
        let value = log_branch_neg(q)?;
        Ok(LogQ {
            value,
            quarter: LogT {
                base: value,
                turns: 0,
                divisor: 4,
            },
        })
    }

    /// `log q = (u + 2 pi i) / n`, with `2 pi` kept exact so that `u = 0`
    /// lands on `q^N = 1`.
    fn scaled(u: Complex64, n: u32) -> Self {
        LogQ {
            value: (u + Complex64::new(0.0, 2.0 * PI)) / n as f64,
            quarter: LogT {
                base: u,
                turns: 1,
                divisor: 4 * n,
            },
        }
    }
}

fn check_color(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Validation("color N must be at least 1".into()));
    }
    Ok(())
}

fn log_parts(knot: KnotSpec, n: u32, log_q: LogQ) -> Result<JonesLog> {
    check_color(n)?;
    match knot {
        KnotSpec::Unknot => Ok(JonesLog::one()),
        KnotSpec::FigureEight => Ok(JonesLog {
            analytic: Complex64::new(0.0, 0.0),
            residual: fig8::fig8_log(n, log_q.value)?,
        }),
        KnotSpec::Torus(t) => torus::torus_log_parts(t, n, log_q.quarter),
    }
}

/// `J_N(K;q)` in log form.
pub fn colored_jones(knot: KnotSpec, n: u32, q: Complex64) -> Result<LogComplex> {
    Ok(jones_log(knot, n, q)?.value())
}

/// `J_N(K;q)` with the prefactor exponent kept separate.
pub fn jones_log(knot: KnotSpec, n: u32, q: Complex64) -> Result<JonesLog> {
    log_parts(knot, n, LogQ::from_q(q)?)
}

pub fn evaluate(knot: KnotSpec, n: u32, q: Complex64) -> Result<JonesEvaluation> {
    Ok(JonesEvaluation {
        knot,
        n,
        q,
        value: colored_jones(knot, n, q)?,
    })
}

pub fn colored_jones_fig8(n: u32, q: Complex64) -> Result<LogComplex> {
    colored_jones(KnotSpec::FigureEight, n, q)
}

pub fn colored_jones_torus(a: u32, b: u32, n: u32, q: Complex64) -> Result<LogComplex> {
    colored_jones(KnotSpec::torus(a, b)?, n, q)
}

/// Straightforward double-precision evaluation of the same closed sums,
/// without log-space or extended precision. Only sensible for small `N`.
pub fn colored_jones_direct(knot: KnotSpec, n: u32, q: Complex64) -> Result<Complex64> {
    check_color(n)?;
    if q.re == 0.0 && q.im == 0.0 {
        return Err(Error::Domain("q = 0".into()));
    }
    match knot {
        KnotSpec::Unknot => Ok(Complex64::new(1.0, 0.0)),
        KnotSpec::FigureEight => Ok(fig8::fig8_direct(n, q)),
        KnotSpec::Torus(t) => torus::torus_direct(t, n, q),
    }
}

/// `J_N(K; exp(xi/N))` for `xi = u + 2 pi i`, in split log form.
pub fn jones_log_at(knot: KnotSpec, n: u32, u: Complex64) -> Result<JonesLog> {
    log_parts(knot, n, LogQ::scaled(u, n))
}

/// `log J_N(K; exp((u + 2 pi i)/N)) / N` for a single `N`, with the
/// residual phase taken in `[-pi, pi)`. Sequences should go through
/// [`log_jones_scaled_sequence`], which makes the phase continuous in `N`.
pub fn log_jones_scaled(knot: KnotSpec, n: u32, u: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Validation("log_jones_scaled needs N >= 2".into()));
    }
    let parts = jones_log_at(knot, n, u)?;
    if parts.residual.is_zero() {
        return Err(Error::Domain(format!("J_{n} vanishes at u = {u}")));
    }
    Ok((parts.analytic + parts.residual.ln()) / n as f64)
}

/// How the imaginary part of `log J_N` is chosen along a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseBranch {
    /// Residual phase continued along `N`; analytic prefactor added exactly.
    Continued,
    /// Principal `arg J_N` at every `N` separately.
    Principal,
}

/// Makes a phase sequence continuous by choosing, at each step, the `2 pi`
/// shift closest to a linear prediction from the previous two points.
///
/// The first increment is taken in `[-pi, pi)`, so the first two pushes
/// should be consecutive values of `N`.
#[derive(Debug, Clone, Default)]
pub struct PhaseTracker {
    last: Option<(u32, f64)>,
    slope: Option<f64>,
}

impl PhaseTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, n: u32, phase: f64) -> f64 {
        let out = match (self.last, self.slope) {
            (None, _) => phase,
            (Some((_, prev)), None) => prev + normalize_phase(phase - prev),
            (Some((pn, prev)), Some(slope)) => {
                let predicted = prev + slope * (n - pn) as f64;
                phase + 2.0 * PI * ((predicted - phase) / (2.0 * PI)).round()
            }
        };
        if let Some((pn, prev)) = self.last {
            self.slope = Some((out - prev) / (n - pn) as f64);
        }
        self.last = Some((n, out));
        out
    }
}

/// `log J_N(K; exp((u+2 pi i)/N)) / N` along an increasing schedule.
///
/// With [`PhaseBranch::Continued`] the residual phase is unwound across the
/// schedule; an evaluation at `N_0 + 1` is added internally to seed the
/// slope when the schedule does not contain it.
pub fn log_jones_scaled_sequence(
    knot: KnotSpec,
    u: Complex64,
    schedule: &[u32],
    branch: PhaseBranch,
) -> Result<Vec<(u32, Complex64)>> {
    if schedule.is_empty() {
        return Ok(Vec::new());
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Validation("N schedule must be strictly increasing".into()));
    }
    if schedule[0] < 2 {
        return Err(Error::Validation("N schedule must start at 2 or above".into()));
    }
    let mut ns: Vec<u32> = schedule.to_vec();
    let seeded = branch == PhaseBranch::Continued && ns.len() > 1 && ns[1] != ns[0] + 1;
    if seeded {
        ns.insert(1, ns[0] + 1);
    }
    let parts: Vec<JonesLog> = ns
        .par_iter()
        .map(|&n| jones_log_at(knot, n, u))
        .collect::<Result<_>>()?;

    let mut tracker = PhaseTracker::new();
    let mut out = Vec::with_capacity(schedule.len());
    for (i, (&n, p)) in ns.iter().zip(&parts).enumerate() {
        if p.residual.is_zero() {
            return Err(Error::Domain(format!("J_{n} vanishes at u = {u}")));
        }
        let log = match branch {
            PhaseBranch::Continued => {
                let phase = tracker.push(n, p.residual.phase);
                p.analytic + Complex64::new(p.residual.log_mag, phase)
            }
            PhaseBranch::Principal => p.value().ln(),
        };
        if seeded && i == 1 {
            continue;
        }
        out.push((n, log / n as f64));
    }
    Ok(out)
}
