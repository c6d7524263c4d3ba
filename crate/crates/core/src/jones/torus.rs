//! Rosso–Jones sum for torus knots.
//!
//! With `t = q^{1/4}` every exponent is an integer:
//!
//! ```text
//! J_N = t^{ab(1-N^2)} / (t^{2N} - t^{-2N})
//!       * sum_j ( t^{ab j^2 + 2(a+b) j + 2} - t^{ab j^2 + 2(a-b) j - 2} )
//! ```
//!
//! with `j` running over `-(N-1), -(N-3), ..., N-1`. Near the unit circle
//! the sum is exponentially smaller than its terms, so it is accumulated in
//! fixed point with the precision doubled until the result clears the
//! rounding floor. Terms come from exact power recurrences started at the
//! largest term of each monotone run, so each pass needs only a few
//! high-precision exponentials.

use num_complex::Complex64;

use super::JonesLog;
use crate::error::{Error, Result};
use crate::knots::TorusKnot;
use crate::numerics::fixed::{fixed_from_f64, fixed_pi, FixedComplex, PI_GUARD};
use crate::numerics::LogComplex;

const START_PREC: u32 = 256;
const MAX_PREC: u32 = 8192;
/// Bits kept above the accumulated rounding noise.
const GOOD_BITS: u64 = 48;
/// A denominator with fewer significant bits than this counts as zero.
const SINGULAR_BITS: u64 = 64;

/// `log t = (base + 2 pi i * turns) / divisor`, kept exact so that the
/// fixed-point sum sees the same `t` at every precision.
#[derive(Debug, Clone, Copy)]
pub(super) struct LogT {
    pub base: Complex64,
    pub turns: i64,
    pub divisor: u32,
}

impl LogT {
    fn approx(&self) -> Complex64 {
        (self.base + Complex64::new(0.0, 2.0 * std::f64::consts::PI * self.turns as f64))
            / self.divisor as f64
    }

    fn fixed(&self, prec: u32, pi: &num_bigint::BigInt) -> FixedComplex {
        let mut z = FixedComplex::from_complex(self.base, prec);
        z.im += (pi >> PI_GUARD as usize) * (2 * self.turns);
        z.div_int(self.divisor as i64)
    }
}

/// One of the two quadratic exponent families `ab j^2 + c j + d`.
#[derive(Clone, Copy)]
struct Family {
    ab: i64,
    c: i64,
    d: i64,
    n: i64,
}

impl Family {
    fn exponent(&self, i: i64) -> i64 {
        let j = 2 * i - (self.n - 1);
        self.ab * j * j + self.c * j + self.d
    }

    /// Index where the exponent parabola turns, clamped to the range.
    fn vertex(&self) -> i64 {
        let jv = -(self.c as f64) / (2.0 * self.ab as f64);
        (((jv + (self.n - 1) as f64) / 2.0).floor() as i64).clamp(0, self.n - 1)
    }
}

struct Pass<'a> {
    lt: &'a FixedComplex,
    rho: f64,
    shift: &'a num_bigint::BigInt,
    prec: u32,
    pi: &'a num_bigint::BigInt,
    ab8: FixedComplex,
}

impl Pass<'_> {
    fn power(&self, e: i64, shifted: bool) -> FixedComplex {
        let mut w = self.lt.scale_int(e);
        if shifted {
            w.re -= self.shift;
        }
        w.exp(self.prec, self.pi)
    }

    /// `sum_i t^{E(i)} e^{-shift}`, optionally weighted by `E(i)`.
    fn family_sum(&self, f: Family, weighted: bool) -> FixedComplex {
        let mut acc = FixedComplex::zero();
        let iv = f.vertex();
        for (lo, hi) in [(0, iv), (iv + 1, f.n - 1)] {
            if lo > hi {
                continue;
            }
            // magnitudes are monotone on each side of the vertex; walk downhill
            let (start, dir) = if self.rho * f.exponent(lo) as f64 >= self.rho * f.exponent(hi) as f64 {
                (lo, 1)
            } else {
                (hi, -1)
            };
            let mut term = self.power(f.exponent(start), true);
            let mut ratio = if hi > lo {
                self.power(f.exponent(start + dir) - f.exponent(start), false)
            } else {
                FixedComplex::zero()
            };
            for k in 0..=(hi - lo) {
                if term.is_zero() {
                    break;
                }
                let i = start + dir * k;
                if weighted {
                    acc.add_assign(&term.scale_int(f.exponent(i)));
                } else {
                    acc.add_assign(&term);
                }
                term = term.mul(&ratio, self.prec);
                ratio = ratio.mul(&self.ab8, self.prec);
            }
        }
        acc
    }

    fn sum(&self, fams: &[(Family, i64)], weighted: bool) -> FixedComplex {
        let mut total = FixedComplex::zero();
        for &(f, sign) in fams {
            let s = self.family_sum(f, weighted);
            if sign > 0 {
                total.add_assign(&s);
            } else {
                total.sub_assign(&s);
            }
        }
        total
    }
}

fn shifted_log(z: &FixedComplex, prec: u32, shift: f64) -> LogComplex {
    let w = z.to_log(prec);
    LogComplex::new(w.log_mag + shift, w.phase)
}

/// `log J_N(T(a,b))` split as `analytic + log(residual)`, where the analytic
/// part is the exact exponent of the `q^{ab(1-N^2)/4}` prefactor.
pub(super) fn torus_log_parts(knot: TorusKnot, n: u32, log_t: LogT) -> Result<JonesLog> {
    let ab = knot.ab() as i64;
    let (a, b) = (knot.a() as i64, knot.b() as i64);
    let ni = n as i64;
    let fams = [
        (Family { ab, c: 2 * (a + b), d: 2, n: ni }, 1),
        (Family { ab, c: 2 * (a - b), d: -2, n: ni }, -1),
    ];
    let approx = log_t.approx();
    let rho = approx.re;
    let shift = fams
        .iter()
        .flat_map(|(f, _)| (0..ni).map(move |i| rho * f.exponent(i) as f64))
        .fold(f64::NEG_INFINITY, f64::max);
    let den_shift = (2.0 * n as f64 * rho).abs();
    let analytic = approx * (ab * (1 - ni * ni)) as f64;

    // rounding noise grows with the number of terms and the exponent weights
    let noise_bits = 4 * (64 - (n as u64).leading_zeros() as u64) + 64 - (ab as u64).leading_zeros() as u64;
    let needed = noise_bits + GOOD_BITS;

    let mut prec = START_PREC;
    loop {
        let pi = fixed_pi(prec + PI_GUARD);
        let lt = log_t.fixed(prec, &pi);
        let shift_fx = fixed_from_f64(shift, prec);
        let den_shift_fx = fixed_from_f64(den_shift, prec);
        let pass = Pass {
            lt: &lt,
            rho,
            shift: &shift_fx,
            prec,
            pi: &pi,
            ab8: lt.scale_int(8 * ab).exp(prec, &pi),
        };
        let edge = |sign: i64| {
            let mut w = lt.scale_int(sign * 2 * ni);
            w.re -= &den_shift_fx;
            w.exp(prec, &pi)
        };
        let (up, down) = (edge(1), edge(-1));
        let den = up.sub(&down);

        let (num, den) = if den.bit_size() > SINGULAR_BITS {
            (pass.sum(&fams, false), den)
        } else {
            // q^N = 1 to working precision: both sum and denominator vanish
            // and J_N is a Laurent polynomial, so take the ratio of
            // derivatives in log t
            let mut dden = up;
            dden.add_assign(&down);
            let dden = dden.scale_int(2 * ni);
            if dden.bit_size() <= SINGULAR_BITS {
                return Err(Error::Pole { q: (approx * 4.0).exp() });
            }
            (pass.sum(&fams, true), dden)
        };
        if num.bit_size() >= needed {
            let residual = shifted_log(&num, prec, shift) / shifted_log(&den, prec, den_shift);
            return Ok(JonesLog { analytic, residual });
        }
        if prec >= MAX_PREC {
            return Err(Error::Domain(format!(
                "torus sum at N = {n} cancels beyond {MAX_PREC} bits"
            )));
        }
        prec *= 2;
    }
}

/// Plain double-precision evaluation of the same sum, for cross-checks at
/// small `N`.
pub(super) fn torus_direct(knot: TorusKnot, n: u32, q: Complex64) -> Result<Complex64> {
    let log_t = crate::numerics::log_branch_neg(q)? / 4.0;
    let t = |e: i64| (log_t * e as f64).exp();
    let ab = knot.ab() as i64;
    let (a, b) = (knot.a() as i64, knot.b() as i64);
    let ni = n as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..ni {
        let j = 2 * i - (ni - 1);
        sum += t(ab * j * j + 2 * (a + b) * j + 2) - t(ab * j * j + 2 * (a - b) * j - 2);
    }
    let den = t(2 * ni) - t(-2 * ni);
    if den.norm() == 0.0 {
        return Err(Error::Pole { q });
    }
    Ok(t(ab * (1 - ni * ni)) * sum / den)
}
