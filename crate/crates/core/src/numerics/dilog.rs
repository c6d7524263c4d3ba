use std::f64::consts::PI;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZETA2: f64 = PI * PI / 6.0;

/// Which side of the cut `[1, inf)` a real argument approaches from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Above,
    Below,
}

/// Bernoulli numbers `B_2 .. B_28` as (numerator, denominator).
const BERNOULLI_EVEN: [(f64, f64); 14] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
];

/// `B_{2k} / (2k+1)!` for k = 1..=14.
static COEFFS: LazyLock<[f64; 14]> = LazyLock::new(|| {
    let mut out = [0.0; 14];
    let mut fact = 1.0_f64; // (2k+1)!
    let mut m = 1.0;
    for (k, (num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        while m < (2 * (k + 1) + 1) as f64 {
            m += 1.0;
            fact *= m;
        }
        out[k] = num / den / fact;
    }
    out
});

/// Series `Li2(1 - e^{-w}) = sum_n B_n w^{n+1} / (n+1)!`, valid for `|w| < 2 pi`.
fn bernoulli_series(w: Complex64) -> Complex64 {
    let w2 = w * w;
    let mut pow = w * w2; // w^3
    let mut sum = w - w2 * 0.25;
    for c in COEFFS.iter() {
        sum += pow * *c;
        pow *= w2;
    }
    sum
}

/// Li2 on the closed unit disk.
fn dilog_disk(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if z.re <= 0.5 {
        bernoulli_series(-(one - z).ln())
    } else {
        // reflection z -> 1 - z
        let w = one - z;
        -bernoulli_series(-z.ln()) + ZETA2 - z.ln() * w.ln()
    }
}

/// Principal-branch dilogarithm `Li2(z) = -int_0^z log(1-t)/t dt`.
///
/// Real arguments greater than one sit on the cut and are rejected; use
/// [`dilog_side`] for those.
pub fn dilog(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::BranchCut { z });
    }
    Ok(dilog_unchecked(z))
}

/// Dilogarithm with the limit taken from the given side of the cut when `z`
/// is real and greater than one. Off the cut it agrees with [`dilog`].
pub fn dilog_side(z: Complex64, side: CutSide) -> Complex64 {
    if z.im == 0.0 && z.re > 1.0 {
        let x = z.re;
        let lx = x.ln();
        let re = 2.0 * ZETA2 - 0.5 * lx * lx - dilog_disk(Complex64::new(1.0 / x, 0.0)).re;
        let im = match side {
            CutSide::Above => PI * lx,
            CutSide::Below => -PI * lx,
        };
        return Complex64::new(re, im);
    }
    dilog_unchecked(z)
}

fn dilog_unchecked(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return Complex64::new(ZETA2, 0.0);
    }
    if z.norm_sqr() <= 1.0 {
        return dilog_disk(z);
    }
    // inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
    let l = (-z).ln();
    -dilog_disk(z.inv()) - ZETA2 - l * l * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Plain power series, only for `|z| < 1`.
    fn series_oracle(z: Complex64, terms: usize) -> Complex64 {
        let mut pow = z;
        let mut s = c(0.0, 0.0);
        for k in 1..=terms {
            s += pow / (k * k) as f64;
            pow *= z;
        }
        s
    }

    #[test]
    fn zero_and_one() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn one_from_series_with_richardson() {
        // S(1-h) = L + h log h + c1 h + h^2 (c2 log h + c3) + ...; fit five
        // points approaching 1 and read off L.
        let s = |x: f64| series_oracle(c(x, 0.0), 3_000_000).re;
        let h: Vec<f64> = (0..5).map(|j| 1e-3 / 2f64.powi(j)).collect();
        let v: Vec<f64> = h.iter().map(|&h| s(1.0 - h)).collect();
        let m = nalgebra::DMatrix::from_fn(5, 5, |i, j| {
            let h = h[i];
            [1.0, h * h.ln(), h, h * h * h.ln(), h * h][j]
        });
        let sol = m.lu().solve(&nalgebra::DVector::from_vec(v)).unwrap();
        let expected = sol[0];
        let got = dilog(c(1.0, 0.0)).unwrap().re;
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
    }

    #[test]
    fn minus_one_from_alternating_series() {
        // partial sums of sum (-1)^k/k^2 bracket the limit; average neighbours
        let mut s = 0.0;
        let mut prev = 0.0;
        for k in 1..=200_000u64 {
            prev = s;
            let t = 1.0 / (k * k) as f64;
            s += if k % 2 == 1 { -t } else { t };
        }
        let oracle = 0.5 * (s + prev);
        let got = dilog(c(-1.0, 0.0)).unwrap();
        assert!((got.re - oracle).abs() < 1e-10);
        assert!((got.re + PI * PI / 12.0).abs() < 1e-15);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn agrees_with_series_inside_disk() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(-PI..PI));
            let want = series_oracle(z, 400);
            let got = dilog(z).unwrap();
            assert!((got - want).norm() <= 1e-13 * want.norm().max(1e-300), "{z}");
        }
    }

    #[test]
    fn inversion_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.gen_range(0.05..10.0), rng.gen_range(-3.1..3.1));
            if z.im.abs() < 1e-3 && z.re > 0.0 {
                continue;
            }
            let lhs = dilog(z).unwrap() + dilog(z.inv()).unwrap();
            let l = (-z).ln();
            let rhs = -PI * PI / 6.0 - 0.5 * l * l;
            assert!((lhs - rhs).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn reflection_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.gen_range(0.05..3.0), rng.gen_range(0.1..3.0));
            let w = c(1.0, 0.0) - z;
            let lhs = dilog(z).unwrap() + dilog(w).unwrap();
            let rhs = PI * PI / 6.0 - z.ln() * w.ln();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn cut_requires_side() {
        assert!(matches!(dilog(c(2.0, 0.0)), Err(Error::BranchCut { .. })));
        let above = dilog_side(c(2.0, 0.0), CutSide::Above);
        let near = dilog(c(2.0, 1e-12)).unwrap();
        assert!((above - near).norm() < 1e-10);
        let below = dilog_side(c(2.0, 0.0), CutSide::Below);
        let near = dilog(c(2.0, -1e-12)).unwrap();
        assert!((below - near).norm() < 1e-10);
        // Li2(2) = pi^2/4 - i pi ln 2 from below
        assert!((below - c(PI * PI / 4.0, -PI * 2f64.ln())).norm() < 1e-14);
    }

    #[test]
    fn unit_circle_value() {
        // Im Li2(e^{i pi/3}) = Cl2(pi/3); reference from a 60-digit mpmath run
        let z = Complex64::from_polar(1.0, PI / 3.0);
        let v = dilog(z).unwrap();
        assert!((v.im - 1.014_941_606_409_653_6).abs() < 1e-14);
        assert!((v.re - PI * PI / 36.0).abs() < 1e-14);
    }
}
