//! Cyclotomic sum for the figure-eight knot,
//! `J_N = sum_{k<N} prod_{j<=k} (q^N + q^{-N} - q^j - q^{-j})`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::Result;
use crate::numerics::{log_sum_exp, LogComplex};

/// `log sinh z` without overflow for large `|Re z|`.
fn log_sinh(z: Complex64) -> LogComplex {
    if z.re > 20.0 {
        // sinh z = e^z (1 - e^{-2z}) / 2
        let tail = (Complex64::new(1.0, 0.0) - (-2.0 * z).exp()).ln();
        LogComplex::from_log(z - LN_2 + tail)
    } else if z.re < -20.0 {
        let tail = (Complex64::new(1.0, 0.0) - (2.0 * z).exp()).ln();
        LogComplex::from_log(-z - LN_2 + tail + Complex64::new(0.0, PI))
    } else {
        LogComplex::from_complex(z.sinh())
    }
}

/// Each factor is `2cosh(N h) - 2cosh(j h) = 4 sinh((N+j)h/2) sinh((N-j)h/2)`
/// with `h = log q`; the product form avoids cancellation as `j -> N`.
pub(super) fn fig8_log(n: u32, log_q: Complex64) -> Result<LogComplex> {
    let nf = n as f64;
    let four = LogComplex::new(4f64.ln(), 0.0);
    let mut terms = Vec::with_capacity(n as usize);
    let mut running = LogComplex::ONE;
    terms.push(running);
    for j in 1..n {
        let jf = j as f64;
        let factor = four
            * log_sinh(log_q * (0.5 * (nf + jf)))
            * log_sinh(log_q * (0.5 * (nf - jf)));
        if factor.is_zero() {
            break;
        }
        running = running * factor;
        terms.push(running);
    }
    log_sum_exp(&terms)
}

pub(super) fn fig8_direct(n: u32, q: Complex64) -> Complex64 {
    let qn = q.powi(n as i32);
    let c = qn + qn.inv();
    let mut total = Complex64::new(1.0, 0.0);
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 1..n as i32 {
        let qj = q.powi(j);
        prod *= c - qj - qj.inv();
        total += prod;
    }
    total
}
