use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::potential::{dh_closed, h_closed, v_of_u, xi, I};
use crate::error::{Error, Result};
use crate::jones::jones_log_at;
use crate::knots::{a_polynomial, alexander, alexander_symmetric, Convention, KnotSpec};

/// The two `(L, M)` pairs built from `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GukovPair {
    /// `(-e^{-v/2}, e^{u/2})`
    MinusHalfV,
    /// `(-e^{v/2}, e^{u/2})`
    PlusHalfV,
}

impl GukovPair {
    pub const BOTH: [GukovPair; 2] = [GukovPair::MinusHalfV, GukovPair::PlusHalfV];

    pub fn point(self, u: Complex64, v: Complex64) -> (Complex64, Complex64) {
        let half = match self {
            GukovPair::MinusHalfV => -v / 2.0,
            GukovPair::PlusHalfV => v / 2.0,
        };
        (-half.exp(), (u / 2.0).exp())
    }
}

/// Which polynomial a [`GukovEntry`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum FactorRef {
    /// The abelian factor `L - 1`.
    Abelian,
    /// Nonabelian candidate at this index of the stored list.
    Candidate(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GukovEntry {
    pub factor: FactorRef,
    pub convention: Option<Convention>,
    pub pair: GukovPair,
    pub l: Complex64,
    pub m: Complex64,
    pub residual: f64,
    /// `residual` divided by the sum of absolute term values.
    pub relative_residual: f64,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GukovReport {
    pub knot: KnotSpec,
    pub u: Complex64,
    pub v: Complex64,
    /// `a` with `u = 2 pi i a - 2 pi i`.
    pub a: Complex64,
    /// `l(a) = -v/2 - pi i`.
    pub l_of_a: Complex64,
    pub tol: f64,
    pub entries: Vec<GukovEntry>,
}

impl GukovReport {
    /// Entries for nonabelian candidates that vanish.
    pub fn vanishing_candidates(&self) -> Vec<&GukovEntry> {
        self.entries
            .iter()
            .filter(|e| e.vanishes && matches!(e.factor, FactorRef::Candidate(_)))
            .collect()
    }

    pub fn vanishing_for(&self, convention: Convention) -> Vec<&GukovEntry> {
        self.vanishing_candidates()
            .into_iter()
            .filter(|e| e.convention == Some(convention))
            .collect()
    }

    pub fn abelian_vanishes(&self) -> bool {
        self.entries.iter().any(|e| e.vanishes && e.factor == FactorRef::Abelian)
    }
}

/// Evaluates `L - 1` and every stored nonabelian factor at both pairs, with
/// `v = v_K(u)` from [`v_of_u`].
pub fn gukov_check(knot: KnotSpec, u: Complex64, tol: f64) -> Result<GukovReport> {
    if knot == KnotSpec::Unknot {
        return Err(Error::Unsupported("the unknot has no nonabelian A-polynomial factor".into()));
    }
    gukov_check_with_v(knot, u, v_of_u(knot, u)?, tol)
}

/// [`gukov_check`] with a caller-supplied `v`.
pub fn gukov_check_with_v(knot: KnotSpec, u: Complex64, v: Complex64, tol: f64) -> Result<GukovReport> {
    let apoly = a_polynomial(knot);
    let mut entries = Vec::new();
    for pair in GukovPair::BOTH {
        let (l, m) = pair.point(u, v);
        let mut push = |factor, convention, p: &crate::knots::BivariatePolynomial| {
            let residual = p.eval(l, m).norm();
            let scale = p.magnitude_scale(l, m);
            entries.push(GukovEntry {
                factor,
                convention,
                pair,
                l,
                m,
                residual,
                relative_residual: if scale > 0.0 { residual / scale } else { residual },
                vanishes: residual <= tol,
            });
        };
        push(FactorRef::Abelian, None, &apoly.abelian);
        for (i, c) in apoly.candidates.iter().enumerate() {
            push(FactorRef::Candidate(i), Some(c.convention), &c.factor);
        }
    }
    let a = xi(u) / (I * (2.0 * PI));
    Ok(GukovReport {
        knot,
        u,
        v,
        a,
        l_of_a: -v / 2.0 - I * PI,
        tol,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharedRoot {
    pub seed: Complex64,
    pub root: Complex64,
    pub iterations: usize,
    pub h_at_root: f64,
    pub exp_root: Complex64,
    pub alexander_at_exp_root: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharedRootReport {
    pub knot: KnotSpec,
    pub tol: f64,
    pub roots: Vec<SharedRoot>,
    /// The root named in closed form: `+-arccosh(3/2)` or `2 pi i/(ab) - 2 pi i`.
    pub expected: Vec<Complex64>,
}

impl SharedRootReport {
    pub fn passed(&self) -> bool {
        !self.roots.is_empty() && self.roots.iter().all(|r| r.passed)
    }
}

const NEWTON_MAX: usize = 200;

/// Newton's method on the closed-form `H` with its analytic derivative.
///
/// The shared roots are not simple: `H` vanishes like `(u - u*)^p` with
/// `p = 3/2` (figure-eight, where the saddle `y` branches) or `p = 2`
/// (torus). Plain Newton then contracts by `(p - 1)/p` per step; once two
/// consecutive step ratios agree, `p` is read off and the corrected step
/// `p H/H'` is used. Iteration stops when `H` no longer decreases.
pub fn newton_root(knot: KnotSpec, seed: Complex64) -> Result<(Complex64, usize)> {
    let h = |z| h_closed(knot, z);
    let dh = |z| dh_closed(knot, z);
    let mut u = seed;
    let mut hu = h(u)?.norm();
    let mut iterates = vec![u];
    let mut order = 1.0;
    let mut last_step: Option<f64> = None;
    let mut last_ratio: Option<f64> = None;
    for it in 1..=NEWTON_MAX {
        if hu == 0.0 {
            return Ok((u, it - 1));
        }
        let d = dh(u)?;
        if d.norm() == 0.0 {
            return Err(Error::NoConvergence {
                reason: "vanishing derivative".into(),
                iterates,
            });
        }
        let step = h(u)? / d * order;
        let next = u - step;
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::NoConvergence {
                reason: "diverged".into(),
                iterates,
            });
        }
        let h_next = h(next)?.norm();
        if h_next >= hu {
            if order != 1.0 {
                // the order estimate overshot; fall back to plain steps
                order = 1.0;
                last_step = None;
                last_ratio = None;
                continue;
            }
            if hu <= 1e-12 {
                return Ok((u, it - 1));
            }
        }
        iterates.push(next);
        if order == 1.0 {
            let size = step.norm();
            if let Some(prev) = last_step {
                let ratio = size / prev;
                if let Some(pr) = last_ratio {
                    if ratio > 0.2 && ratio < 0.9 && (ratio - pr).abs() < 0.02 {
                        order = 1.0 / (1.0 - ratio);
                    }
                }
                last_ratio = Some(ratio);
            }
            last_step = Some(size);
        }
        u = next;
        hu = h_next;
        if step.norm() <= 1e-15 * (1.0 + u.norm()) {
            return Ok((u, it));
        }
    }
    let tail = iterates.split_off(iterates.len().saturating_sub(8));
    Err(Error::NoConvergence {
        reason: format!("no convergence in {NEWTON_MAX} steps"),
        iterates: tail,
    })
}

fn seeds(knot: KnotSpec) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    match knot {
        KnotSpec::FigureEight => {
            let r = 1.5f64.acosh();
            Ok((
                vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
                vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
            ))
        }
        KnotSpec::Torus(t) => {
            let root = I * (2.0 * PI / t.ab() as f64) - I * (2.0 * PI);
            Ok((vec![root + 0.1], vec![root]))
        }
        KnotSpec::Unknot => Err(Error::Unsupported("shared-root check needs a nontrivial knot".into())),
    }
}

/// Finds roots of `H(K;.)` by Newton from fixed seeds and checks that
/// `Delta(K; e^root)` vanishes within `tol` (and `|H| <= tol`).
pub fn shared_root_check(knot: KnotSpec, tol: f64) -> Result<SharedRootReport> {
    let (seed_list, expected) = seeds(knot)?;
    let delta = alexander(knot);
    let mut roots = Vec::new();
    for seed in seed_list {
        let (root, iterations) = newton_root(knot, seed)?;
        let h_at_root = h_closed(knot, root)?.norm();
        let exp_root = root.exp();
        let alexander_at_exp_root = delta.eval(exp_root).norm();
        roots.push(SharedRoot {
            seed,
            root,
            iterations,
            h_at_root,
            exp_root,
            alexander_at_exp_root,
            passed: h_at_root <= tol && alexander_at_exp_root <= tol,
        });
    }
    Ok(SharedRootReport {
        knot,
        tol,
        roots,
        expected,
    })
}

/// `4 H(K;u) - 4 pi i u`.
pub fn nz_potential(knot: KnotSpec, u: Complex64) -> Result<Complex64> {
    Ok(4.0 * h_closed(knot, u)? - 4.0 * PI * I * u)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MmReport {
    pub knot: KnotSpec,
    pub u: Complex64,
    pub n: u32,
    pub jones: Complex64,
    pub target: Complex64,
    pub deviation: f64,
    pub tol: f64,
    pub passed: bool,
    /// `|u + 2 pi i| <= MM_GATE`.
    pub in_gate: bool,
}

/// Default bound on `|u + 2 pi i|` for [`mm_check`].
pub const MM_GATE: f64 = 0.5;

const POLE_TOL: f64 = 1e-12;

/// Compares `J_N(K; e^{(u+2 pi i)/N})` with `1/Delta(K; e^{u + 2 pi i})`,
/// `Delta` in its symmetric normalization.
pub fn mm_check(knot: KnotSpec, u: Complex64, n: u32, tol: f64) -> Result<MmReport> {
    let x = xi(u);
    let t = x.exp();
    let delta = alexander_symmetric(knot, t);
    if delta.norm() <= POLE_TOL {
        return Err(Error::Pole { q: t });
    }
    let target = delta.inv();
    let jones = jones_log_at(knot, n, u)?.value().to_complex();
    let deviation = (jones - target).norm();
    Ok(MmReport {
        knot,
        u,
        n,
        jones,
        target,
        deviation,
        tol,
        passed: deviation <= tol,
        in_gate: x.norm() <= MM_GATE,
    })
}
