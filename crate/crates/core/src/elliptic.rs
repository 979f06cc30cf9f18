//! Complete elliptic integral of the first kind for complex parameter,
//! computed by the arithmetic-geometric mean with the square-root branch
//! chosen closest to the running mean.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::complex::ComplexPoint;
use crate::error::{MetricError, Result};

const MAX_ITER: usize = 64;

pub(crate) fn elliptic_k_c(m: Complex64) -> Result<Complex64> {
    if m.im == 0.0 && m.re >= 1.0 {
        return Err(MetricError::domain(format!(
            "parameter m = {} lies on the branch cut [1, inf)",
            m.re
        )));
    }
    if m == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(FRAC_PI_2, 0.0));
    }
    let mut a = Complex64::new(1.0, 0.0);
    let mut b = (Complex64::new(1.0, 0.0) - m).sqrt();
    for _ in 0..MAX_ITER {
        let an = 0.5 * (a + b);
        let mut bn = (a * b).sqrt();
        // branch closest to the arithmetic mean
        if (an - bn).norm() > (an + bn).norm() {
            bn = -bn;
        }
        // quadratic convergence stalls at a few ulps
        if (an - bn).norm() <= 4.0 * f64::EPSILON * an.norm() {
            return Ok(Complex64::new(FRAC_PI_2, 0.0) / an);
        }
        a = an;
        b = bn;
    }
    if (a - b).norm() <= 1e-12 * a.norm() {
        return Ok(Complex64::new(FRAC_PI_2, 0.0) / (0.5 * (a + b)));
    }
    Err(MetricError::numeric("AGM did not converge in 64 iterations"))
}

/// K as a function of the parameter m = k^2, for m off the cut [1, inf).
pub fn elliptic_k(k2: ComplexPoint) -> Result<ComplexPoint> {
    let m = k2.finite()?;
    Ok(ComplexPoint::Finite(elliptic_k_c(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Simpson quadrature of the defining integral, used as an independent
    /// oracle for the AGM implementation.
    fn k_quadrature(m: Complex64, panels: usize) -> Complex64 {
        let n = 2 * panels;
        let h = FRAC_PI_2 / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            let theta = i as f64 * h;
            let s = theta.sin();
            let f = (Complex64::new(1.0, 0.0) - m * s * s).sqrt().inv();
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * f;
        }
        acc * h / 3.0
    }

    #[test]
    fn degenerate_and_half() {
        let v = elliptic_k_c(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - FRAC_PI_2).abs() < 1e-15 && v.im == 0.0);
        // frozen from the quadrature oracle
        let v = elliptic_k_c(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - 1.8540746773013719).abs() < 1e-12, "{}", v.re);
        assert!(v.im.abs() < 1e-15);
        let q = k_quadrature(Complex64::new(0.5, 0.0), 2000);
        assert!((v - q).norm() < 1e-11);
    }

    #[test]
    fn branch_cut_rejected() {
        assert!(elliptic_k_c(Complex64::new(1.0, 0.0)).is_err());
        assert!(elliptic_k_c(Complex64::new(2.5, 0.0)).is_err());
        assert!(elliptic_k_c(Complex64::new(0.999, 0.0)).is_ok());
    }

    proptest! {
        #[test]
        fn agrees_with_quadrature(re in -3.0f64..0.95, im in -2.0f64..2.0) {
            let m = Complex64::new(re, im);
            prop_assume!(m.im != 0.0 || m.re < 1.0);
            let v = elliptic_k_c(m).unwrap();
            let q = k_quadrature(m, 4000);
            prop_assert!((v - q).norm() <= 1e-9 * v.norm().max(1.0), "{v} vs {q}");
        }

        #[test]
        fn conjugation_symmetry(re in -3.0f64..0.95, im in 0.01f64..2.0) {
            let m = Complex64::new(re, im);
            let v = elliptic_k_c(m).unwrap();
            let vc = elliptic_k_c(m.conj()).unwrap();
            prop_assert!((v.conj() - vc).norm() <= 1e-12 * v.norm());
        }
    }
}
