use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jones::{log_jones_scaled_sequence, PhaseBranch};
use crate::knots::KnotSpec;
use crate::numerics::{derivative, dilog, dilog_side, extrapolate, log_branch_neg, CutSide, LimitEstimate};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `u + 2 pi i`.
pub fn xi(u: Complex64) -> Complex64 {
    u + I * (2.0 * PI)
}

/// Root of `y^2 - (2 cosh u - 1) y + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleY {
    pub y: Complex64,
}

impl SaddleY {
    /// `|y + 1/y - (2 cosh u - 1)|`.
    pub fn residual(&self, u: Complex64) -> f64 {
        (self.y + self.y.inv() - (2.0 * u.cosh() - 1.0)).norm()
    }
}

fn saddle_roots(u: Complex64) -> [Complex64; 2] {
    let s = 2.0 * u.cosh() - 1.0;
    let disc = (s * s - 4.0).sqrt();
    // the larger root first; the smaller is its reciprocal
    let big = if (s + disc).norm() >= (s - disc).norm() {
        (s + disc) / 2.0
    } else {
        (s - disc) / 2.0
    };
    [big, big.inv()]
}

/// Side of `[1, inf)` used when a dilogarithm argument lands on the cut.
fn cut_side(u: Complex64) -> CutSide {
    if u.im >= 0.0 {
        CutSide::Below
    } else {
        CutSide::Above
    }
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re > 1.0
}

fn li2(z: Complex64, side: CutSide) -> Complex64 {
    if on_cut(z) {
        dilog_side(z, side)
    } else {
        dilog(z).unwrap_or_else(|_| dilog_side(z, side))
    }
}

/// `log(1 - z)` on the branch matching `li2(z, side)`.
fn log_one_minus(z: Complex64, side: CutSide) -> Complex64 {
    if on_cut(z) {
        let im = match side {
            CutSide::Below => PI,
            CutSide::Above => -PI,
        };
        Complex64::new((z.re - 1.0).ln(), im)
    } else {
        (1.0 - z).ln()
    }
}

/// `Li2(e^{-u}/y) - Li2(y e^{-u}) + (log(-y) + pi i) u`, with
/// `log(-1) = -pi i`.
fn h_fig8_at(u: Complex64, y: Complex64, side: CutSide) -> Result<Complex64> {
    let w = (-u).exp();
    let log_neg_y = log_branch_neg(-y)?;
    Ok(li2(w / y, side) - li2(y * w, side) + (log_neg_y + I * PI) * u)
}

/// `dH/du` at fixed `y`; exact because `y` is a critical point of `H` in `y`.
fn dh_fig8_at(u: Complex64, y: Complex64, side: CutSide) -> Result<Complex64> {
    let w = (-u).exp();
    let log_neg_y = log_branch_neg(-y)?;
    Ok(log_one_minus(w / y, side) - log_one_minus(y * w, side) + log_neg_y + I * PI)
}

/// Geometric root: the one with larger `Im H(E;u)`, ties broken toward `|y| <= 1`.
pub fn solve_y(u: Complex64) -> SaddleY {
    let side = cut_side(u);
    let [big, small] = saddle_roots(u);
    let im_h = |y| h_fig8_at(u, y, side).map(|h| h.im).unwrap_or(f64::NEG_INFINITY);
    let (hb, hs) = (im_h(big), im_h(small));
    let tie = (hb - hs).abs() <= 1e-12 * (1.0 + hb.abs().max(hs.abs()));
    let y = if tie || hs > hb { small } else { big };
    SaddleY { y }
}

/// The root at `u` nearest to `reference`, for following one branch.
fn continue_y(u: Complex64, reference: Complex64) -> Complex64 {
    let [big, small] = saddle_roots(u);
    if (big - reference).norm() < (small - reference).norm() {
        big
    } else {
        small
    }
}

/// Closed-form potential `H(K;u)`.
///
/// Torus knots: `-(ab(u + 2 pi i) - 2 pi i)^2 / (4ab)` on the whole plane.
/// Figure-eight: the dilogarithm form on the geometric saddle branch.
pub fn h_closed(knot: KnotSpec, u: Complex64) -> Result<Complex64> {
    match knot {
        KnotSpec::Unknot => Err(Error::Unsupported("no closed-form potential for the unknot".into())),
        KnotSpec::Torus(t) => {
            let ab = t.ab() as f64;
            let w = ab * xi(u) - I * (2.0 * PI);
            Ok(-(w * w) / (4.0 * ab))
        }
        KnotSpec::FigureEight => h_fig8_at(u, solve_y(u).y, cut_side(u)),
    }
}

/// Analytic `dH/du` of the closed form.
pub fn dh_closed(knot: KnotSpec, u: Complex64) -> Result<Complex64> {
    match knot {
        KnotSpec::Unknot => Err(Error::Unsupported("no closed-form potential for the unknot".into())),
        KnotSpec::Torus(t) => {
            let ab = t.ab() as f64;
            Ok(-(ab * xi(u) - I * (2.0 * PI)) / 2.0)
        }
        KnotSpec::FigureEight => dh_fig8_at(u, solve_y(u).y, cut_side(u)),
    }
}

/// `H` near `u` on the same saddle branch and cut side as at `u`, so that
/// finite differences do not jump between branches.
pub(crate) fn h_closed_local(knot: KnotSpec, u: Complex64) -> Result<impl Fn(Complex64) -> Result<Complex64>> {
    let reference = match knot {
        KnotSpec::FigureEight => Some(solve_y(u).y),
        KnotSpec::Torus(_) => None,
        KnotSpec::Unknot => return Err(Error::Unsupported("no closed-form potential for the unknot".into())),
    };
    let side = cut_side(u);
    Ok(move |z: Complex64| match reference {
        Some(y0) => h_fig8_at(z, continue_y(z, y0), side),
        None => h_closed(knot, z),
    })
}

/// `v_K(u) = 2 dH/du - 2 pi i`.
///
/// Torus knots use the exact `-ab(u + 2 pi i)`. The figure-eight knot
/// differentiates the closed form numerically along the branch selected at
/// `u`. The unknot has `H = 0` identically, so `v = -2 pi i`.
pub fn v_of_u(knot: KnotSpec, u: Complex64) -> Result<Complex64> {
    match knot {
        KnotSpec::Unknot => Ok(-I * (2.0 * PI)),
        KnotSpec::Torus(t) => Ok(-(t.ab() as f64) * xi(u)),
        KnotSpec::FigureEight => {
            let h = h_closed_local(knot, u)?;
            v_from_h(h, u)
        }
    }
}

/// `2 dH/du - 2 pi i` for any potential, by the default Richardson derivative.
pub fn v_from_h<F>(h: F, u: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    Ok(2.0 * derivative(h, u)? - I * (2.0 * PI))
}

/// Evenly spaced schedule of about `points` values ending at `n_max`,
/// starting at `n_max / 10` (at least 2).
pub fn default_schedule(n_max: u32, points: u32) -> Vec<u32> {
    let n_min = (n_max / 10).max(2);
    let points = points.max(4);
    let step = ((n_max - n_min) / (points - 1)).max(1);
    let mut out: Vec<u32> = (0..points).map(|k| n_max - (points - 1 - k) * step).filter(|&n| n >= 2).collect();
    out.dedup();
    out
}

/// Smallest schedule end accepted by [`h_numeric`].
pub const MIN_SCHEDULE_END: u32 = 500;

/// `H(K;u) = (u + 2 pi i) lim log J_N(K; e^{(u+2 pi i)/N}) / N`, extrapolated.
pub fn h_numeric(knot: KnotSpec, u: Complex64, schedule: &[u32]) -> Result<LimitEstimate> {
    h_numeric_with(knot, u, schedule, PhaseBranch::Continued)
}

pub fn h_numeric_with(
    knot: KnotSpec,
    u: Complex64,
    schedule: &[u32],
    branch: PhaseBranch,
) -> Result<LimitEstimate> {
    match schedule.last() {
        Some(&n) if n >= MIN_SCHEDULE_END => {}
        _ => {
            return Err(Error::Validation(format!(
                "schedule must reach N >= {MIN_SCHEDULE_END}"
            )))
        }
    }
    if knot == KnotSpec::Unknot {
        if schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Validation("N schedule must be strictly increasing".into()));
        }
        return Ok(LimitEstimate {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            samples: schedule.iter().map(|&n| (n, Complex64::new(0.0, 0.0))).collect(),
        });
    }
    let samples = log_jones_scaled_sequence(knot, u, schedule, branch)?;
    Ok(extrapolate(&samples)?.scaled(xi(u)))
}

/// `2 dH/du - 2 pi i` with `H` taken from [`h_numeric`], central difference at `step`.
pub fn v_numeric(knot: KnotSpec, u: Complex64, schedule: &[u32], step: f64) -> Result<Complex64> {
    let h = |z| h_numeric(knot, z, schedule).map(|e| e.value);
    Ok(2.0 * crate::numerics::central_derivative(h, u, step)? - I * (2.0 * PI))
}

/// `|u + 2 pi i| > 2 pi/(ab)`, `Re u < 0`, `Im u > -2 pi`: where the torus
/// closed forms are the limit. Always true for other knots.
pub fn in_torus_region(knot: KnotSpec, u: Complex64) -> bool {
    match knot {
        KnotSpec::Torus(t) => xi(u).norm() > 2.0 * PI / t.ab() as f64 && u.re < 0.0 && u.im > -2.0 * PI,
        _ => true,
    }
}
