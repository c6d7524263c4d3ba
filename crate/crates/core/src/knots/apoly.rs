use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BivariatePolynomial, KnotSpec};

/// Which meridian/longitude orientation a stored factor assumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Factor is invariant under `L -> 1/L`, so orientation does not matter.
    Symmetric,
    /// `L` is the longitude eigenvalue on the meridian's eigenvector.
    LongitudeEigenvalue,
    /// Same with the longitude inverted (`L -> 1/L`, cleared of denominators).
    InvertedLongitude,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorCandidate {
    pub convention: Convention,
    pub factor: BivariatePolynomial,
}

/// A-polynomial split into the abelian factor `L - 1` and the nonabelian
/// factor(s), one per orientation convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct APolynomial {
    pub knot: KnotSpec,
    pub abelian: BivariatePolynomial,
    pub candidates: Vec<FactorCandidate>,
}

impl APolynomial {
    /// `(L - 1)` times the candidate factor; `None` picks the abelian part alone.
    pub fn full(&self, candidate: Option<usize>) -> BivariatePolynomial {
        match candidate.and_then(|i| self.candidates.get(i)) {
            Some(c) => self.abelian.mul(&c.factor),
            None => self.abelian.clone(),
        }
    }

    pub fn eval_full(&self, candidate: usize, l: Complex64, m: Complex64) -> Complex64 {
        self.full(Some(candidate)).eval(l, m)
    }
}

fn term(l: u32, m: u32, c: i64) -> ((u32, u32), i64) {
    ((l, m), c)
}

/// `M^4 L^2 - (M^8 - M^6 - 2M^4 - M^2 + 1) L + M^4`.
fn figure_eight_factor() -> BivariatePolynomial {
    BivariatePolynomial::from_terms([
        term(2, 4, 1),
        term(1, 8, -1),
        term(1, 6, 1),
        term(1, 4, 2),
        term(1, 2, 1),
        term(1, 0, -1),
        term(0, 4, 1),
    ])
}

/// Signs `e` with an irreducible representation sending `x^a = y^b` to `e I`.
/// `-1` always occurs; `+1` needs both `a` and `b` at least three, since an
/// order-two element of SL(2,C) is central.
fn central_signs(a: u32, b: u32) -> Vec<i64> {
    if a >= 3 && b >= 3 {
        vec![-1, 1]
    } else {
        vec![-1]
    }
}

pub fn a_polynomial(knot: KnotSpec) -> APolynomial {
    let abelian = BivariatePolynomial::from_terms([term(1, 0, 1), term(0, 0, -1)]);
    let candidates = match knot {
        KnotSpec::Unknot => Vec::new(),
        KnotSpec::FigureEight => vec![FactorCandidate {
            convention: Convention::Symmetric,
            factor: figure_eight_factor(),
        }],
        KnotSpec::Torus(t) => {
            let ab = t.ab();
            let signs = central_signs(t.a(), t.b());
            // longitude = (x^a) * meridian^(-ab), so L = e M^(-ab)
            let direct = signs.iter().fold(BivariatePolynomial::constant(1), |acc, &e| {
                acc.mul(&BivariatePolynomial::from_terms([term(1, ab, 1), term(0, 0, -e)]))
            });
            let inverted = signs.iter().fold(BivariatePolynomial::constant(1), |acc, &e| {
                acc.mul(&BivariatePolynomial::from_terms([term(0, ab, 1), term(1, 0, -e)]))
            });
            vec![
                FactorCandidate {
                    convention: Convention::LongitudeEigenvalue,
                    factor: direct,
                },
                FactorCandidate {
                    convention: Convention::InvertedLongitude,
                    factor: inverted,
                },
            ]
        }
    };
    APolynomial {
        knot,
        abelian,
        candidates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_factor_vanishes_at_one() {
        for knot in [KnotSpec::Unknot, KnotSpec::FigureEight, KnotSpec::torus(2, 3).unwrap()] {
            let a = a_polynomial(knot);
            let one = Complex64::new(1.0, 0.0);
            assert_eq!(a.full(None).eval(one, one), Complex64::new(0.0, 0.0));
            for i in 0..a.candidates.len() {
                assert!(a.eval_full(i, one, Complex64::new(0.7, 0.2)).norm() < 1e-12);
            }
        }
        assert!(a_polynomial(KnotSpec::Unknot).candidates.is_empty());
    }

    #[test]
    fn stored_shapes() {
        let f8 = a_polynomial(KnotSpec::FigureEight);
        assert_eq!(
            f8.candidates[0].factor.to_string(),
            "L^2*M^4 - L*M^8 + L*M^6 + 2*L*M^4 + L*M^2 - L + M^4"
        );
        let t23 = a_polynomial(KnotSpec::torus(2, 3).unwrap());
        assert_eq!(t23.candidates[0].factor.to_string(), "L*M^6 + 1");
        assert_eq!(t23.candidates[1].factor.to_string(), "L + M^6");
        let t34 = a_polynomial(KnotSpec::torus(3, 4).unwrap());
        assert_eq!(t34.candidates[0].factor.to_string(), "L^2*M^24 - 1");
    }
}
