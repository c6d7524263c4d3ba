//! Knot registry: the unknot, the figure-eight knot and torus knots, with
//! their Alexander polynomials and A-polynomials.

mod apoly;
mod bivariate;
mod poly;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use apoly::{a_polynomial, APolynomial, Convention, FactorCandidate};
pub use bivariate::BivariatePolynomial;
pub use poly::UnivariatePolynomial;

/// Torus knot `T(a, b)` with coprime `a, b > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    a: u32,
    b: u32,
}

impl TorusKnot {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::InvalidKnot(format!("torus({a},{b}): need a > 1 and b > 1")));
        }
        if gcd(a, b) != 1 {
            return Err(Error::InvalidKnot(format!("torus({a},{b}): a and b must be coprime")));
        }
        Ok(TorusKnot { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn ab(&self) -> u32 {
        self.a * self.b
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum KnotSpec {
    Unknot,
    FigureEight,
    Torus(TorusKnot),
}

impl KnotSpec {
    pub fn torus(a: u32, b: u32) -> Result<Self> {
        Ok(KnotSpec::Torus(TorusKnot::new(a, b)?))
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Unknot => write!(f, "unknot"),
            KnotSpec::FigureEight => write!(f, "fig8"),
            KnotSpec::Torus(t) => write!(f, "torus:{},{}", t.a, t.b),
        }
    }
}

/// Grammar: `unknot`, `fig8`, `torus:A,B`.
impl FromStr for KnotSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unknot" => return Ok(KnotSpec::Unknot),
            "fig8" => return Ok(KnotSpec::FigureEight),
            _ => {}
        }
        let bad = || Error::InvalidKnot(format!("{s:?}: expected unknot, fig8 or torus:A,B"));
        let rest = s.strip_prefix("torus:").ok_or_else(bad)?;
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        let a = a.parse().map_err(|_| bad())?;
        let b = b.parse().map_err(|_| bad())?;
        KnotSpec::torus(a, b)
    }
}

impl TryFrom<String> for KnotSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KnotSpec> for String {
    fn from(k: KnotSpec) -> String {
        k.to_string()
    }
}

/// `t^n - 1`.
fn t_pow_minus_one(n: u32) -> UnivariatePolynomial {
    UnivariatePolynomial::from_terms([(n as i32, 1), (0, -1)])
}

/// Alexander polynomial, normalized with lowest exponent zero.
pub fn alexander(knot: KnotSpec) -> UnivariatePolynomial {
    match knot {
        KnotSpec::Unknot => UnivariatePolynomial::constant(1),
        KnotSpec::FigureEight => UnivariatePolynomial::from_dense(&[-1, 3, -1]),
        KnotSpec::Torus(t) => {
            let num = t_pow_minus_one(t.ab()).mul(&t_pow_minus_one(1));
            let den = t_pow_minus_one(t.a).mul(&t_pow_minus_one(t.b));
            num.exact_div(&den)
                .expect("torus Alexander quotient is exact for coprime a, b")
        }
    }
}

/// `t^{-d/2} Delta(K;t)` with `d` the degree: the symmetric normalization,
/// invariant under `t -> 1/t` with value 1 at `t = 1`.
pub fn alexander_symmetric(knot: KnotSpec, t: Complex64) -> Complex64 {
    let p = alexander(knot);
    let d = p.max_exponent().unwrap_or(0);
    p.eval(t) * t.powi(-d / 2)
}

/// All complex roots of the Alexander polynomial (empty for the unknot).
pub fn alexander_roots(knot: KnotSpec) -> Vec<Complex64> {
    polynomial_roots(&alexander(knot))
}

/// Roots of an integer polynomial: companion-matrix eigenvalues followed by
/// a few Newton steps on the polynomial itself.
pub fn polynomial_roots(p: &UnivariatePolynomial) -> Vec<Complex64> {
    let Some(lo) = p.min_exponent() else {
        return Vec::new();
    };
    let p = p.shift(-lo);
    let deg = p.max_exponent().unwrap_or(0) as usize;
    if deg == 0 {
        return Vec::new();
    }
    let lead = p.coeff(deg as i32) as f64;
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if i == 0 {
            -(p.coeff((deg - 1 - j) as i32) as f64) / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let dp = p.derivative();
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..8 {
                let d = dp.eval(z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = p.eval(z) / d;
                z -= step;
                if step.norm() <= 1e-17 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}
