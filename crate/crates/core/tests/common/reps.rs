//! SL(2,C) representations of knot groups, giving points `(L, M)` on the
//! character variety independently of any stored A-polynomial.

use nalgebra::Matrix2;
use num_complex::Complex64;

pub type M2 = Matrix2<Complex64>;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn inv(a: &M2) -> M2 {
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    M2::new(a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)]) / det
}

fn word(gens: &[(M2, i32)]) -> M2 {
    gens.iter().fold(M2::identity(), |acc, (g, e)| {
        let p = if *e > 0 { *g } else { inv(g) };
        (0..e.abs()).fold(acc, |a, _| a * p)
    })
}

/// Riley representation of the figure-eight group `<x, y | w x = y w>`,
/// `w = x y^-1 x^-1 y`, with `x = [[m, 1], [0, 1/m]]`, `y = [[m, 0], [-z, 1/m]]`.
pub struct Riley {
    pub m: Complex64,
    pub z: Complex64,
    pub x: M2,
    pub y: M2,
}

impl Riley {
    fn mats(m: Complex64, z: Complex64) -> (M2, M2) {
        (M2::new(m, c(1.0), c(0.0), m.inv()), M2::new(m, c(0.0), -z, m.inv()))
    }

    fn w(x: &M2, y: &M2) -> M2 {
        word(&[(*x, 1), (*y, -1), (*x, -1), (*y, 1)])
    }

    pub fn relator_defect(m: Complex64, z: Complex64) -> M2 {
        let (x, y) = Self::mats(m, z);
        let w = Self::w(&x, &y);
        w * x - y * w
    }

    /// Solves the Riley equation for `z` by Newton from `seed`.
    pub fn solve(m: Complex64, seed: Complex64) -> Option<Self> {
        // the (0,0) entry of the defect vanishes on the representation variety
        let f = |z: Complex64| Self::relator_defect(m, z)[(0, 1)];
        let mut z = seed;
        for _ in 0..100 {
            let h = 1e-7 * (1.0 + z.norm());
            let d = (f(z + h) - f(z - h)) / (2.0 * h);
            let step = f(z) / d;
            z -= step;
            if step.norm() < 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        let (x, y) = Self::mats(m, z);
        let ok = Self::relator_defect(m, z).norm() < 1e-9 && z.norm() > 1e-6;
        ok.then_some(Riley { m, z, x, y })
    }

    /// Longitude `w* w` with `w*` the reversed word.
    pub fn longitude(&self) -> M2 {
        let (x, y) = (self.x, self.y);
        let w = Self::w(&x, &y);
        let w_rev = word(&[(y, 1), (x, -1), (y, -1), (x, 1)]);
        w_rev * w
    }

    /// `(L, M)`: longitude eigenvalue on the meridian eigenvector `e_1`.
    pub fn lm(&self) -> (Complex64, Complex64) {
        (self.longitude()[(0, 0)], self.m)
    }
}

/// Nonabelian representation of `<x, y | x^a = y^b>` with `x` of order
/// `2a` up to sign (`x^a = (-1)^k`), `y^b = (-1)^l`, twisted by `s`.
/// Meridian `y^p x^r` with `a p + b r = 1`; longitude `x^a mu^{-ab}`.
pub fn torus_point(a: i32, b: i32, k: i32, l: i32, s: Complex64) -> (Complex64, Complex64, M2) {
    let rot = |n: i32, d: i32| {
        let t = Complex64::new(0.0, std::f64::consts::PI * n as f64 / d as f64).exp();
        M2::new(t, c(0.0), c(0.0), t.inv())
    };
    let x = rot(k, a);
    let g = M2::new(c(1.0), s, c(1.0), c(1.0) + s);
    let y = g * rot(l, b) * inv(&g);
    let (p, r) = (1..=b)
        .flat_map(|r| (-a * b..=a * b).map(move |p| (p, r)))
        .find(|(p, r)| a * p + b * r == 1)
        .expect("a and b are coprime");
    let mu = word(&[(y, p), (x, r)]);
    let lambda = word(&[(x, a), (mu, -a * b)]);
    // eigenvector of mu
    let tr = mu[(0, 0)] + mu[(1, 1)];
    let m = (tr + (tr * tr - c(4.0)).sqrt()) / 2.0;
    let vec = if (mu[(0, 1)]).norm() > 1e-12 {
        nalgebra::Vector2::new(mu[(0, 1)], m - mu[(0, 0)])
    } else {
        nalgebra::Vector2::new(m - mu[(1, 1)], mu[(1, 0)])
    };
    let image = lambda * vec;
    let idx = if vec[0].norm() > vec[1].norm() { 0 } else { 1 };
    let l_val = image[idx] / vec[idx];
    let commutator = x * y - y * x;
    (l_val, m, commutator)
}
