//! Points of the Riemann sphere and annular coordinates on the punctured disk.

use num_complex::Complex64;

use crate::error::{MetricError, Result};

/// A point of the extended plane: either a finite complex number or the
/// point at infinity. The at-infinity marker carries no components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexPoint {
    Finite(Complex64),
    Infinity,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPoint::Finite(Complex64::new(re, im))
    }

    pub const INFINITY: ComplexPoint = ComplexPoint::Infinity;

    pub fn is_infinity(&self) -> bool {
        matches!(self, ComplexPoint::Infinity)
    }

    /// The finite value, or a domain error for the point at infinity.
    pub fn finite(&self) -> Result<Complex64> {
        match self {
            ComplexPoint::Finite(z) => {
                if z.re.is_finite() && z.im.is_finite() {
                    Ok(*z)
                } else {
                    Err(MetricError::domain("non-finite components"))
                }
            }
            ComplexPoint::Infinity => Err(MetricError::domain("point at infinity")),
        }
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint::Finite(z)
    }
}

impl From<f64> for ComplexPoint {
    fn from(x: f64) -> Self {
        ComplexPoint::new(x, 0.0)
    }
}

impl std::fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexPoint::Finite(z) => {
                if z.im >= 0.0 {
                    write!(f, "{}+{}i", z.re, z.im)
                } else {
                    write!(f, "{}{}i", z.re, z.im)
                }
            }
            ComplexPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Annular coordinates (tau, dir) of a point of the punctured disk:
/// tau = log(1/|z|) > 0 and dir = z/|z| on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnularPoint {
    pub tau: f64,
    pub dir: Complex64,
}

impl AnnularPoint {
    /// Map back to the plane: z = dir * e^{-tau}.
    pub fn to_point(&self) -> ComplexPoint {
        ComplexPoint::Finite(self.dir * (-self.tau).exp())
    }
}

/// Annular coordinates of a point with 0 < |z| < 1.
pub fn to_annular(z: ComplexPoint) -> Result<AnnularPoint> {
    let z = z.finite()?;
    let r = z.norm();
    if r == 0.0 {
        return Err(MetricError::domain("z = 0 has no annular coordinates"));
    }
    if r >= 1.0 {
        return Err(MetricError::domain("|z| >= 1 is outside the punctured disk"));
    }
    Ok(AnnularPoint {
        tau: -r.ln(),
        dir: z / r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn annular_boundary_value() {
        let a = to_annular(ComplexPoint::new((-1.0f64).exp(), 0.0)).unwrap();
        assert!((a.tau - 1.0).abs() < 1e-15);
        assert!((a.dir - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn annular_negative_axis() {
        let a = to_annular(ComplexPoint::new(-(-2.0f64).exp(), 0.0)).unwrap();
        assert!((a.tau - 2.0).abs() < 1e-15);
        assert!((a.dir - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn annular_rejects_excluded_points() {
        assert!(to_annular(ComplexPoint::new(0.0, 0.0)).is_err());
        assert!(to_annular(ComplexPoint::new(1.0, 0.0)).is_err());
        assert!(to_annular(ComplexPoint::new(0.9, 0.9)).is_err());
        assert!(to_annular(ComplexPoint::Infinity).is_err());
    }

    proptest! {
        #[test]
        fn annular_round_trip(tau in 1e-3f64..10.0, theta in 0.0f64..std::f64::consts::TAU) {
            let z = Complex64::from_polar((-tau).exp(), theta);
            let a = to_annular(ComplexPoint::Finite(z)).unwrap();
            prop_assert!((a.dir.norm() - 1.0).abs() < 4e-16);
            let back = a.to_point().finite().unwrap();
            prop_assert!((back - z).norm() <= 1e-15 * z.norm());
        }
    }
}
