use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::potential::{h_closed, v_of_u};
use crate::error::{Error, Result};
use crate::knots::KnotSpec;

/// `V = Im H - pi Re u - (1/2) Re u Im v`.
pub fn volume_from(u: Complex64, h: Complex64, v: Complex64) -> f64 {
    h.im - PI * u.re - 0.5 * u.re * v.im
}

/// `Im H - pi Re u - (1/4) Im(u v) - (pi/2) length(u, v)`; equal to
/// [`volume_from`] identically.
pub fn volume_via_length(u: Complex64, h: Complex64, v: Complex64) -> f64 {
    h.im - PI * u.re - 0.25 * (u * v).im - 0.5 * PI * geodesic_length(u, v)
}

/// Volume function from the closed-form potential.
pub fn volume(knot: KnotSpec, u: Complex64) -> Result<f64> {
    let h = h_closed(knot, u)?;
    let v = v_of_u(knot, u)?;
    Ok(volume_from(u, h, v))
}

/// `-Im(u conj(v)) / (2 pi)`.
pub fn geodesic_length(u: Complex64, v: Complex64) -> f64 {
    -(u * v.conj()).im / (2.0 * PI)
}

/// `|dV/dt + (1/2)(Re u dIm v/dt - Re v dIm u/dt)|` at `t`, all derivatives
/// by central differences with step `dt`.
pub fn schlafli_residual<P>(knot: KnotSpec, path: P, t: f64, dt: f64) -> Result<f64>
where
    P: Fn(f64) -> Complex64,
{
    if !(dt > 0.0) {
        return Err(Error::Validation(format!("dt must be positive, got {dt}")));
    }
    let at = |s: f64| -> Result<(Complex64, Complex64, f64)> {
        let u = path(s);
        let v = v_of_u(knot, u)?;
        Ok((u, v, volume_from(u, h_closed(knot, u)?, v)))
    };
    let (u, v, _) = at(t)?;
    let (u_plus, v_plus, vol_plus) = at(t + dt)?;
    let (u_minus, v_minus, vol_minus) = at(t - dt)?;
    let d = |a: f64, b: f64| (a - b) / (2.0 * dt);
    let dvol = d(vol_plus, vol_minus);
    let rhs = -0.5 * (u.re * d(v_plus.im, v_minus.im) - v.re * d(u_plus.im, u_minus.im));
    Ok((dvol - rhs).abs())
}

/// Generalized Dehn surgery coefficients: real `(p, q)` with `p u + q v = 2 pi i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Surgery {
    pub p: f64,
    pub q: f64,
    /// `(p, q)` lies within `1e-6` of a coprime integer pair.
    pub integral: bool,
    /// The real system has rank one; `(p, q)` is its minimum-norm solution.
    pub underdetermined: bool,
}

const INTEGRAL_TOL: f64 = 1e-6;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn near_coprime(p: f64, q: f64) -> bool {
    let (rp, rq) = (p.round(), q.round());
    (p - rp).abs() <= INTEGRAL_TOL
        && (q - rq).abs() <= INTEGRAL_TOL
        && rp.abs() < 1e15
        && rq.abs() < 1e15
        && gcd(rp as i64, rq as i64) == 1
}

/// Solves `Re(p u + q v) = 0`, `Im(p u + q v) = 2 pi`.
///
/// A rank-one but consistent system returns the minimum-norm solution
/// flagged `underdetermined`; an inconsistent or zero system is an error.
pub fn surgery_coefficients(u: Complex64, v: Complex64) -> Result<Surgery> {
    let a = Matrix2::new(u.re, v.re, u.im, v.im);
    let rhs = Vector2::new(0.0, 2.0 * PI);
    let scale = a.abs().max().max(f64::MIN_POSITIVE);
    let svd = a.svd(true, true);
    // singular values below this (relative to max(|entry|, 1)) count as zero
    let eps = 1e-9 * scale.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let sol = svd
        .solve(&rhs, eps)
        .map_err(|e| Error::Domain(format!("surgery system: {e}")))?;
    let residual = (a * sol - rhs).norm();
    if rank == 0 || residual > 1e-9 * 2.0 * PI {
        return Err(Error::Domain(format!(
            "no real (p, q) with p u + q v = 2 pi i for u = {u}, v = {v}"
        )));
    }
    let (p, q) = (sol[0] + 0.0, sol[1] + 0.0);
    Ok(Surgery {
        p,
        q,
        integral: near_coprime(p, q),
        underdetermined: rank < 2,
    })
}
