use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial in `(L, M)` with non-negative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivariatePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), i64)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        BivariatePolynomial { terms: map }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `((L exponent, M exponent), coefficient)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().flat_map(|((l1, m1), c1)| {
            other
                .terms()
                .map(move |((l2, m2), c2)| ((l1 + l2, m1 + m2), c1 * c2))
        }))
    }

    /// Horner evaluation: outer in `L`, inner in `M`.
    pub fn eval(&self, l: Complex64, m: Complex64) -> Complex64 {
        let Some(&(max_l, _)) = self.terms.keys().next_back() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for li in (0..=max_l).rev() {
            let row: Vec<(u32, i64)> = self
                .terms
                .range((li, 0)..=(li, u32::MAX))
                .map(|(&(_, mj), &c)| (mj, c))
                .collect();
            let mut inner = Complex64::new(0.0, 0.0);
            if let Some(&(max_m, _)) = row.last() {
                let mut idx = row.len();
                for mj in (0..=max_m).rev() {
                    inner *= m;
                    if idx > 0 && row[idx - 1].0 == mj {
                        inner += row[idx - 1].1 as f64;
                        idx -= 1;
                    }
                }
            }
            acc = acc * l + inner;
        }
        acc
    }

    /// Sum of `|c| |L|^i |M|^j`, the natural scale for judging a zero.
    pub fn magnitude_scale(&self, l: Complex64, m: Complex64) -> f64 {
        self.terms()
            .map(|((i, j), c)| (c as f64).abs() * l.norm().powi(i as i32) * m.norm().powi(j as i32))
            .sum()
    }

    /// One `coeff L_exp M_exp` triple per line.
    pub fn to_term_list(&self) -> String {
        self.terms()
            .map(|((l, m), c)| format!("{c} {l} {m}\n"))
            .collect()
    }

    pub fn from_term_list(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Validation(format!("line {}: expected `coeff L_exp M_exp`, got {line:?}", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let c: i64 = fields[0].parse().map_err(|_| bad())?;
            let l: u32 = fields[1].parse().map_err(|_| bad())?;
            let m: u32 = fields[2].parse().map_err(|_| bad())?;
            terms.push(((l, m), c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_term_list(s)
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((l, m), c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mono = match (l, m) {
                (0, 0) => String::new(),
                (0, m) => pow("M", *m),
                (l, 0) => pow("L", *l),
                (l, m) => format!("{}*{}", pow("L", *l), pow("M", *m)),
            };
            match (mag, mono.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                (1, false) => write!(f, "{mono}")?,
                (m, false) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn pow(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}
