use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in one variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UnivariatePolynomial {
    coeffs: BTreeMap<i32, i64>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([(0, c)])
    }

    /// `t^e`.
    pub fn monomial(e: i32) -> Self {
        Self::from_terms([(e, 1)])
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        UnivariatePolynomial { coeffs }
    }

    /// Coefficients in ascending order starting at `t^0`.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i32, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Span between the highest and lowest exponent.
    pub fn breadth(&self) -> u32 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (hi - lo) as u32,
            _ => 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms().map(|(e, c)| (e, -c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms()
                .flat_map(|(e1, c1)| other.terms().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }

    /// `t -> 1/t`.
    pub fn reciprocal(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Long division; the quotient must stay integral.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (dlo, dhi) = match (divisor.min_exponent(), divisor.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::Domain("polynomial division by zero".into())),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some(rhi) = rem.max_exponent() {
            // stop once the remainder's span is narrower than the divisor's
            let rlo = rem.min_exponent().unwrap();
            if rhi - rlo < dhi - dlo {
                break;
            }
            let c = rem.coeff(rhi);
            if c % lead != 0 {
                return Err(Error::Domain("quotient leaves the integers".into()));
            }
            let qc = c / lead;
            let qe = rhi - dhi;
            quot.insert(qe, qc);
            rem = rem.sub(&divisor.mul(&Self::from_terms([(qe, qc)])));
        }
        Ok((Self::from_terms(quot), rem))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("division leaves remainder {r}")));
        }
        Ok(q)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.terms()
            .map(|(e, c)| t.powi(e) * c as f64)
            .sum()
    }

    pub fn eval_int(&self, t: i64) -> Option<i64> {
        let mut acc: i64 = 0;
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                t.checked_pow(e as u32)?
            } else if t == 1 || t == -1 {
                t.checked_pow((-e) as u32)?
            } else {
                return None;
            };
            acc = acc.checked_add(c.checked_mul(p)?)?;
        }
        Some(acc)
    }

    /// Derivative with respect to `t`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e - 1, c * e as i64)))
    }

    /// True when `p(1/t) = +-t^k p(t)` for some `k`.
    pub fn is_symmetric_up_to_unit(&self) -> bool {
        let Some(lo) = self.min_exponent() else {
            return true;
        };
        let hi = self.max_exponent().unwrap();
        let rec = self.reciprocal().shift(lo + hi);
        rec == *self || rec == self.mul(&Self::constant(-1))
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}
