use num_complex::Complex64;

use crate::error::Result;

/// Default step for [`derivative`].
pub const DEFAULT_STEP: f64 = 1e-5;

/// Symmetric difference `(f(u+h) - f(u-h)) / 2h` along the real direction.
pub fn central_derivative<F>(f: F, u: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(h > 0.0) {
        return Err(crate::Error::Domain(format!("step must be positive, got {h}")));
    }
    let hc = Complex64::new(h, 0.0);
    Ok((f(u + hc)? - f(u - hc)?) / (2.0 * h))
}

/// Central differences at `h` and `h/2` combined by one Richardson step,
/// cancelling the `h^2` term.
pub fn richardson_derivative<F>(f: F, u: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let coarse = central_derivative(&f, u, h)?;
    let fine = central_derivative(&f, u, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Derivative of an analytic function with the default step.
pub fn derivative<F>(f: F, u: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    richardson_derivative(f, u, DEFAULT_STEP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_derivative() {
        let d = central_derivative(|_| Ok(Complex64::new(3.0, -2.0)), Complex64::new(0.4, 0.1), 1e-3).unwrap();
        assert_eq!(d, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn exact_on_quadratics() {
        for &(re, im) in &[(0.0, 0.0), (1.5, -2.0), (-0.25, 0.75)] {
            let u = Complex64::new(re, im);
            let d = central_derivative(|z| Ok(z * z), u, 0.25).unwrap();
            assert!((d - 2.0 * u).norm() < 1e-14);
        }
    }

    #[test]
    fn second_order_under_halving() {
        let f = |z: Complex64| Ok(z.exp().sin());
        let u = Complex64::new(0.3, 0.2);
        let exact = u.exp().cos() * u.exp();
        let e1 = (central_derivative(f, u, 1e-2).unwrap() - exact).norm();
        let e2 = (central_derivative(f, u, 5e-3).unwrap() - exact).norm();
        let order = (e1 / e2).log2();
        assert!(order > 1.9, "observed order {order}");
    }

    #[test]
    fn rejects_nonpositive_step() {
        assert!(central_derivative(|z| Ok(z), Complex64::new(0.0, 0.0), 0.0).is_err());
    }
}
