use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extrapolated limit of a sequence `f_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub value: Complex64,
    /// Magnitude of the change between the last two extrapolants.
    pub error_estimate: f64,
    pub samples: Vec<(u32, Complex64)>,
}

impl LimitEstimate {
    /// The same estimate with value, error and samples multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> LimitEstimate {
        LimitEstimate {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.norm(),
            samples: self.samples.iter().map(|&(n, f)| (n, f * factor)).collect(),
        }
    }
}

const MIN_SAMPLES: usize = 4;
const BASIS: usize = 3;

/// Least-squares fit of `L + a log(N)/N + b/N` over the trailing half of
/// `samples` (at least three points); returns `L`.
fn fit_tail(samples: &[(u32, Complex64)]) -> Result<Complex64> {
    let window = samples.len().div_ceil(2).max(BASIS);
    let tail = &samples[samples.len() - window..];
    // columns rescaled by the first N of the window; only L is read back
    let scale = tail[0].0 as f64;
    let design = DMatrix::from_fn(tail.len(), BASIS, |i, j| {
        let n = tail[i].0 as f64;
        match j {
            0 => 1.0,
            1 => scale * n.ln() / n / scale.ln().max(1.0),
            _ => scale / n,
        }
    });
    let svd = design.svd(true, true);
    let solve = |rhs: DVector<f64>| -> Result<f64> {
        let sol = svd
            .solve(&rhs, 1e-14)
            .map_err(|e| Error::Domain(format!("least squares failed: {e}")))?;
        Ok(sol[0])
    };
    let re = solve(DVector::from_iterator(tail.len(), tail.iter().map(|s| s.1.re)))?;
    let im = solve(DVector::from_iterator(tail.len(), tail.iter().map(|s| s.1.im)))?;
    Ok(Complex64::new(re, im))
}

/// Estimates `lim f_N` from samples with strictly increasing `N`.
pub fn extrapolate(samples: &[(u32, Complex64)]) -> Result<LimitEstimate> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData {
            needed: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Validation("sample N values must be strictly increasing".into()));
    }
    if samples.iter().any(|s| s.0 == 0) {
        return Err(Error::Validation("sample N values must be positive".into()));
    }
    let last = fit_tail(samples)?;
    let previous = fit_tail(&samples[..samples.len() - 1])?;
    Ok(LimitEstimate {
        value: last,
        error_estimate: (last - previous).norm(),
        samples: samples.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_sequence() {
        let s: Vec<_> = (1..=8).map(|n| (n * 10, c(2.5, -1.0))).collect();
        let est = extrapolate(&s).unwrap();
        assert!((est.value - c(2.5, -1.0)).norm() < 1e-13);
        assert!(est.error_estimate < 1e-13);
    }

    #[test]
    fn one_plus_one_over_n() {
        let s: Vec<_> = (10..=1000).step_by(10).map(|n| (n, c(1.0 + 1.0 / n as f64, 0.0))).collect();
        let est = extrapolate(&s).unwrap();
        assert!((est.value - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn log_term_is_removed() {
        let s: Vec<_> = (100..=2000)
            .step_by(100)
            .map(|n| {
                let x = n as f64;
                (n, c(0.5 + 1.5 * x.ln() / x - 2.0 / x, -1.0 + 0.25 * x.ln() / x))
            })
            .collect();
        let est = extrapolate(&s).unwrap();
        assert!((est.value - c(0.5, -1.0)).norm() < 1e-10);
    }

    #[test]
    fn too_few_samples() {
        let s = vec![(1, c(0.0, 0.0)), (2, c(0.0, 0.0)), (3, c(0.0, 0.0))];
        assert!(matches!(extrapolate(&s), Err(Error::InsufficientData { got: 3, .. })));
    }

    #[test]
    fn non_increasing_rejected() {
        let s = vec![(1, c(0.0, 0.0)), (3, c(0.0, 0.0)), (3, c(0.0, 0.0)), (4, c(0.0, 0.0))];
        assert!(extrapolate(&s).is_err());
    }
}
