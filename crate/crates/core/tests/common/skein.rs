//! Colored Jones polynomials of braid closures from the `U_q(sl2)` R-matrix
//! on the `N`-dimensional module, evaluated numerically at a point.

use nalgebra::DMatrix;
use num_complex::Complex64;

type Mat = DMatrix<Complex64>;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `[n]` in `v = q^{1/2}`.
fn qint(v: Complex64, n: i32) -> Complex64 {
    if n == 0 {
        return c(0.0);
    }
    (v.powi(n) - v.powi(-n)) / (v - v.inv())
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

pub struct Module {
    n: usize,
    v: Complex64,
    pivot_sign: i32,
    braid: Mat,
    braid_inv: Mat,
}

impl Module {
    /// `pivot_sign` picks `v^{+H}` or `v^{-H}` as the pivotal element.
    pub fn new(n: usize, q: Complex64, pivot_sign: i32) -> Self {
        let v = q.sqrt();
        let weight = |i: usize| (n as i32) - 1 - 2 * i as i32;
        let mut e = Mat::zeros(n, n);
        let mut f = Mat::zeros(n, n);
        for i in 0..n {
            if i + 1 < n {
                f[(i + 1, i)] = qint(v, i as i32 + 1);
            }
            if i > 0 {
                e[(i - 1, i)] = qint(v, (n - i) as i32);
            }
        }
        let dim = n * n;
        let mut sum = Mat::zeros(dim, dim);
        let (mut en, mut fnn) = (Mat::identity(n, n), Mat::identity(n, n));
        let mut fact = c(1.0);
        for k in 0..n {
            if k > 0 {
                en = &en * &e;
                fnn = &fnn * &f;
                fact *= qint(v, k as i32);
            }
            let kk = k as i32;
            let coef = v.powi(kk * (kk - 1) / 2) * (v - v.inv()).powi(kk) / fact;
            sum += kron(&en, &fnn) * coef;
        }
        let mut diag = Mat::zeros(dim, dim);
        let mut swap = Mat::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                let h = (weight(i) * weight(j)) as f64 / 2.0;
                diag[(i * n + j, i * n + j)] = (v.ln() * h).exp();
                swap[(j * n + i, i * n + j)] = c(1.0);
            }
        }
        let braid = swap * diag * sum;
        let braid_inv = braid.clone().try_inverse().expect("R-matrix is invertible");
        Module {
            n,
            v,
            pivot_sign,
            braid,
            braid_inv,
        }
    }

    fn generator(&self, strands: usize, k: i32) -> Mat {
        let pos = k.unsigned_abs() as usize - 1;
        let left = Mat::identity(self.n.pow(pos as u32), self.n.pow(pos as u32));
        let right_dim = self.n.pow((strands - pos - 2) as u32);
        let right = Mat::identity(right_dim, right_dim);
        let mid = if k > 0 { &self.braid } else { &self.braid_inv };
        kron(&kron(&left, mid), &right)
    }

    /// Quantum trace of the braid word (generators `+-1, +-2, ...`).
    pub fn trace(&self, strands: usize, word: &[i32]) -> Complex64 {
        let dim = self.n.pow(strands as u32);
        let mut m = Mat::identity(dim, dim);
        for &k in word {
            m = self.generator(strands, k) * m;
        }
        let mut pivot = Mat::identity(1, 1);
        let single = Mat::from_fn(self.n, self.n, |i, j| {
            if i == j {
                let w = (self.n as i32 - 1 - 2 * i as i32) * self.pivot_sign;
                (self.v.ln() * w as f64).exp()
            } else {
                c(0.0)
            }
        });
        for _ in 0..strands {
            pivot = kron(&pivot, &single);
        }
        (pivot * m).trace()
    }

    /// Framing-corrected invariant normalized to 1 on the unknot.
    pub fn invariant(&self, strands: usize, word: &[i32]) -> Complex64 {
        let dim = self.trace(1, &[]);
        let twist = self.trace(2, &[1]) / dim;
        let writhe: i32 = word.iter().map(|k| k.signum()).sum();
        self.trace(strands, word) / dim / twist.powi(writhe)
    }
}

/// Braid words: figure-eight, trefoil, `T(2,5)`, `T(3,4)`.
pub const FIG8: (usize, &[i32]) = (3, &[1, -2, 1, -2]);
pub const TREFOIL: (usize, &[i32]) = (2, &[1, 1, 1]);
pub const T25: (usize, &[i32]) = (2, &[1, 1, 1, 1, 1]);
pub const T34: (usize, &[i32]) = (3, &[1, 2, 1, 2, 1, 2, 1, 2]);
