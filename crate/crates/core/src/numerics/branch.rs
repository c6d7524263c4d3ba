use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maps `phase` into `[-pi, pi)`.
pub fn normalize_phase(phase: f64) -> f64 {
    if !phase.is_finite() {
        return phase;
    }
    if (-PI..PI).contains(&phase) {
        return phase;
    }
    let two_pi = 2.0 * PI;
    let mut p = phase - two_pi * ((phase + PI) / two_pi).floor();
    // floor can land exactly on the upper edge after rounding
    if p >= PI {
        p -= two_pi;
    }
    if p < -PI {
        p = -PI;
    }
    p
}

/// Argument of `z` in `[-pi, pi)`; the negative real axis maps to `-pi`.
pub fn arg_neg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a >= PI {
        -PI
    } else {
        a
    }
}

/// Logarithm with `arg` in `[-pi, pi)`, so that `log(-1) = -pi i`.
pub fn log_branch_neg(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Ok(Complex64::new(z.norm().ln(), arg_neg(z)))
}

/// Standard principal logarithm, `arg` in `(-pi, pi]`.
pub fn log_principal(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Ok(z.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn minus_one_goes_to_minus_pi() {
        assert_eq!(log_branch_neg(c(-1.0, 0.0)).unwrap(), c(0.0, -PI));
        assert_eq!(log_branch_neg(c(-1.0, -0.0)).unwrap(), c(0.0, -PI));
        assert_eq!(log_principal(c(-1.0, 0.0)).unwrap(), c(0.0, PI));
    }

    #[test]
    fn axis_values() {
        assert_eq!(log_branch_neg(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((log_branch_neg(c(0.0, 1.0)).unwrap() - c(0.0, PI / 2.0)).norm() < 1e-15);
        assert!((log_branch_neg(c(0.0, -1.0)).unwrap() - c(0.0, -PI / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_is_a_domain_error() {
        assert!(matches!(log_branch_neg(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn normalize_edges() {
        assert_eq!(normalize_phase(PI), -PI);
        assert_eq!(normalize_phase(-PI), -PI);
        assert!((normalize_phase(3.0 * PI) + PI).abs() < 1e-15);
        assert!((normalize_phase(7.0) - (7.0 - 2.0 * PI)).abs() < 1e-15);
        for k in -50..50 {
            let p = normalize_phase(0.37 * k as f64 + 0.01);
            assert!((-PI..PI).contains(&p));
        }
    }
}
