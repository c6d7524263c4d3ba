//! Binary fixed-point complex numbers on big integers.
//!
//! A value `x` is stored as the integer `round(x * 2^prec)`. Only what the
//! torus-knot sums need is provided: products, exact integer scaling,
//! `pi`, and `exp`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use super::LogComplex;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

/// Exact conversion of a finite double to fixed point (truncated below `2^-prec`).
pub(crate) fn fixed_from_f64(x: f64, prec: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let (mantissa, exp, sign) = x.integer_decode();
    let m = BigInt::from(mantissa);
    let e = exp as i64 + prec as i64;
    let v = if e >= 0 { m << e as usize } else { m >> (-e) as usize };
    if sign < 0 {
        -v
    } else {
        v
    }
}

/// `pi * 2^prec` by Machin's formula.
pub(crate) fn fixed_pi(prec: u32) -> BigInt {
    let guard = 16;
    let p = prec + guard;
    let atan_inv = |x: u32| -> BigInt {
        let x2 = BigInt::from(x) * x;
        let mut power = (BigInt::from(1) << p as usize) / x;
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        while !power.is_zero() {
            let term = &power / (2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    pi >> guard as usize
}

/// Extra bits of `pi` expected by [`FixedComplex::exp`], covering the loss
/// in reducing large imaginary parts.
pub(crate) const PI_GUARD: u32 = 64;

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

impl FixedComplex {
    pub fn zero() -> Self {
        FixedComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn one(prec: u32) -> Self {
        FixedComplex {
            re: BigInt::from(1) << prec as usize,
            im: BigInt::zero(),
        }
    }

    pub fn from_complex(z: Complex64, prec: u32) -> Self {
        FixedComplex {
            re: fixed_from_f64(z.re, prec),
            im: fixed_from_f64(z.im, prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Bit length of the larger component; `0` for zero.
    pub fn bit_size(&self) -> u64 {
        bits(&self.re).max(bits(&self.im))
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        FixedComplex {
            re: re >> prec as usize,
            im: im >> prec as usize,
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        FixedComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        FixedComplex {
            re: &self.re / k,
            im: &self.im / k,
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.re -= &other.re;
        self.im -= &other.im;
    }

    pub fn sub(&self, other: &Self) -> Self {
        FixedComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    /// Leading 62 bits of both parts and the binary exponent they carry.
    fn leading(&self, prec: u32) -> (Complex64, i64) {
        let drop = (self.bit_size() as i64 - 62).max(0);
        let re = (&self.re >> drop as usize).to_f64().unwrap_or(0.0);
        let im = (&self.im >> drop as usize).to_f64().unwrap_or(0.0);
        (Complex64::new(re, im), drop - prec as i64)
    }

    /// Nearest double; only meaningful for values inside the double range.
    #[cfg(test)]
    pub fn to_complex(&self, prec: u32) -> Complex64 {
        let (z, e) = self.leading(prec);
        z * 2f64.powi(e as i32)
    }

    /// Log form of the value, for any magnitude.
    pub fn to_log(&self, prec: u32) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        let (z, drop) = self.leading(prec);
        let w = LogComplex::from_complex(z);
        LogComplex::new(
            w.log_mag + drop as f64 * std::f64::consts::LN_2,
            w.phase,
        )
    }

    /// `exp(self)`. `pi` must be `fixed_pi(prec + PI_GUARD)`.
    pub fn exp(&self, prec: u32, pi: &BigInt) -> Self {
        let re_approx = self.re.to_f64().unwrap_or(f64::NEG_INFINITY) / 2f64.powi(prec as i32);
        if re_approx < -((prec + 8) as f64) * std::f64::consts::LN_2 {
            return FixedComplex::zero();
        }
        // reduce the imaginary part into [-pi, pi]
        let two_pi = pi * 2;
        let im_ext = &self.im << PI_GUARD as usize;
        let turns = (&im_ext + pi).div_floor(&two_pi);
        let im = (im_ext - &turns * &two_pi) >> PI_GUARD as usize;

        // halve until |w| < 2^-8, run Taylor, square back
        let size = bits(&self.re.abs()).max(bits(&im.abs())) as i64 - prec as i64;
        let halvings = (size + 8).max(0) as u32;
        let work = prec + 32 + halvings;
        let up = (work - prec) as usize;
        let w = FixedComplex {
            re: (&self.re << up) >> halvings as usize,
            im: (im << up) >> halvings as usize,
        };
        let mut sum = FixedComplex::one(work);
        let mut term = FixedComplex::one(work);
        let mut k = 1i64;
        loop {
            term = term.mul(&w, work).div_int(k);
            if term.is_zero() {
                break;
            }
            sum.add_assign(&term);
            k += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum, work);
        }
        FixedComplex {
            re: sum.re >> up,
            im: sum.im >> up,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn pi_digits() {
        let pi = fixed_pi(P);
        let approx = FixedComplex {
            re: pi.clone(),
            im: BigInt::zero(),
        }
        .to_complex(P);
        assert_eq!(approx.re, std::f64::consts::PI);
        // pi - 3.14159265358979323846264338327950288 < 1e-35
        let digits = BigInt::parse_bytes(b"314159265358979323846264338327950288", 10).unwrap();
        let scaled = (&pi * BigInt::from(10).pow(35)) >> P as usize;
        assert!((scaled - digits).abs() <= BigInt::from(1));
    }

    #[test]
    fn conversion_is_exact() {
        for x in [0.0, 1.0, -2.5, 1e-30, 123456.789, -7.0e-3] {
            let f = FixedComplex::from_complex(Complex64::new(x, -x), P);
            let back = f.to_complex(P);
            assert!((back.re - x).abs() <= 1e-300 + x.abs() * 1e-16);
        }
    }

    #[test]
    fn exp_matches_double() {
        let pi = fixed_pi(P + PI_GUARD);
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.5, 0.3),
            Complex64::new(0.7, -100.0),
            Complex64::new(-30.0, 12345.6),
            Complex64::new(2.0, 3.0),
        ] {
            let got = FixedComplex::from_complex(z, P).exp(P, &pi).to_complex(P);
            let want = z.exp();
            assert!((got - want).norm() <= 1e-12 * want.norm(), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn exp_is_precise_beyond_double() {
        // exp(a) exp(-a) = 1 to far below double precision
        let pi = fixed_pi(P + PI_GUARD);
        let a = FixedComplex::from_complex(Complex64::new(0.37, 2.1), P);
        let b = FixedComplex {
            re: -&a.re,
            im: -&a.im,
        };
        let prod = a.exp(P, &pi).mul(&b.exp(P, &pi), P);
        let err = prod.sub(&FixedComplex::one(P));
        assert!(err.bit_size() < 16, "error bits {}", err.bit_size());
    }

    #[test]
    fn underflow_gives_zero() {
        let pi = fixed_pi(P + PI_GUARD);
        let z = FixedComplex::from_complex(Complex64::new(-1e4, 1.0), P);
        assert!(z.exp(P, &pi).is_zero());
    }
}
