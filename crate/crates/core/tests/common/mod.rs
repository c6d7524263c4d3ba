#![allow(dead_code)]

pub mod reps;
pub mod skein;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use volconj::knots::UnivariatePolynomial;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `q = r e^{i theta}` with `r` in `[0.7, 1.3]`.
pub fn random_q(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.7..1.3), rng.gen_range(-3.1..3.1))
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Bernoulli numbers `B_0..=B_m` from `sum_{k<=m} C(m+1,k) B_k = 0`.
fn bernoulli(m: usize) -> Vec<f64> {
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for n in 1..=m {
        let mut binom = 1.0;
        let mut s = 0.0;
        for (k, bk) in b.iter().enumerate().take(n) {
            s += binom * bk;
            binom = binom * (n + 1 - k) as f64 / (k + 1) as f64;
        }
        b[n] = -s / (n + 1) as f64;
    }
    b
}

/// Clausen function `Cl2(theta) = Im Li2(e^{i theta})` for `0 < theta < 2 pi`,
/// from its Bernoulli series.
pub fn clausen(theta: f64) -> f64 {
    let b = bernoulli(40);
    let mut s = theta - theta * theta.abs().ln();
    let mut fact = 1.0;
    for n in 1..=20 {
        fact *= (2 * n * (2 * n + 1)) as f64;
        s += b[2 * n].abs() * theta.powi(2 * n as i32 + 1) / (2.0 * n as f64 * fact);
    }
    s
}

/// `(a + b sqrt 5) / d` with exact integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QSqrt5 {
    pub a: i128,
    pub b: i128,
    pub d: i128,
}

impl QSqrt5 {
    pub fn mul(self, o: Self) -> Self {
        QSqrt5 {
            a: self.a * o.a + 5 * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
            d: self.d * o.d,
        }
    }

    pub fn add(self, o: Self) -> Self {
        QSqrt5 {
            a: self.a * o.d + o.a * self.d,
            b: self.b * o.d + o.b * self.d,
            d: self.d * o.d,
        }
    }

    /// `p(self)` for an integer Laurent polynomial with nonnegative exponents.
    pub fn eval(self, p: &UnivariatePolynomial) -> Self {
        let mut acc = QSqrt5 { a: 0, b: 0, d: 1 };
        let mut power = QSqrt5 { a: 1, b: 0, d: 1 };
        for e in 0..=p.max_exponent().unwrap_or(0) {
            let c = QSqrt5 { a: p.coeff(e) as i128, b: 0, d: 1 };
            acc = acc.add(c.mul(power));
            power = power.mul(self);
        }
        acc
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}
