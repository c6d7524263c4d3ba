use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::branch::{arg_neg, normalize_phase};
use crate::error::{Error, Result};

/// A complex number stored as `exp(log_mag + i phase)`.
///
/// Zero is represented by `log_mag = -inf`. The phase is kept in `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            log_mag,
            phase: normalize_phase(phase),
        }
    }

    /// Builds the value `exp(w)`.
    pub fn from_log(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        LogComplex {
            log_mag: z.norm().ln(),
            phase: arg_neg(z),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// `log_mag + i phase`, i.e. the logarithm with `arg` in `[-pi, pi)`.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_mag, self.phase)
    }

    /// `exp(i phase)` with the axis directions returned exactly.
    pub fn unit(&self) -> Complex64 {
        unit_phasor(self.phase)
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.unit() * self.log_mag.exp()
    }

    pub fn inv(&self) -> Self {
        if self.is_zero() {
            return LogComplex {
                log_mag: f64::INFINITY,
                phase: 0.0,
            };
        }
        Self::new(-self.log_mag, -self.phase)
    }

    pub fn powi(&self, n: i64) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(self.log_mag * n as f64, self.phase * n as f64)
    }
}

pub(crate) fn unit_phasor(phase: f64) -> Complex64 {
    if phase == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if phase == -PI || phase == PI {
        Complex64::new(-1.0, 0.0)
    } else if phase == FRAC_PI_2 {
        Complex64::new(0.0, 1.0)
    } else if phase == -FRAC_PI_2 {
        Complex64::new(0.0, -1.0)
    } else {
        let (s, c) = phase.sin_cos();
        Complex64::new(c, s)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;

    fn div(self, rhs: LogComplex) -> LogComplex {
        self * rhs.inv()
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;

    fn neg(self) -> LogComplex {
        if self.is_zero() {
            return self;
        }
        LogComplex::new(self.log_mag, self.phase + PI)
    }
}

impl From<Complex64> for LogComplex {
    fn from(z: Complex64) -> Self {
        LogComplex::from_complex(z)
    }
}

/// Sum of values given in log form, shifted by the largest magnitude so
/// nothing overflows. Exact cancellation yields [`LogComplex::ZERO`].
pub fn log_sum_exp(terms: &[LogComplex]) -> Result<LogComplex> {
    if terms.is_empty() {
        return Err(Error::Domain("log_sum_exp of an empty sequence".into()));
    }
    let shift = terms
        .iter()
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return Ok(LogComplex::ZERO);
    }
    if !shift.is_finite() {
        return Err(Error::Domain("log_sum_exp of a non-finite term".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms.iter().filter(|t| !t.is_zero()) {
        acc += t.unit() * (t.log_mag - shift).exp();
    }
    if acc.re == 0.0 && acc.im == 0.0 {
        return Ok(LogComplex::ZERO);
    }
    let s = LogComplex::from_complex(acc);
    Ok(LogComplex::new(s.log_mag + shift, s.phase))
}
