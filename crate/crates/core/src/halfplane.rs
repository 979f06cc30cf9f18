//! The upper half-plane model: hyperbolic distance, the level-2 congruence
//! group, and reduction to its fundamental region.

use num_complex::Complex64;

use crate::error::{MetricError, Result};
use crate::special::arth;

/// A point zeta = xi + i eta of the upper half-plane (eta > 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    pub xi: f64,
    pub eta: f64,
}

impl HalfPlanePoint {
    pub fn new(xi: f64, eta: f64) -> Result<Self> {
        if eta <= 0.0 || eta.is_nan() || !eta.is_finite() || !xi.is_finite() {
            return Err(MetricError::domain(format!(
                "zeta = {xi} + {eta}i is not in the upper half-plane"
            )));
        }
        Ok(HalfPlanePoint { xi, eta })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.xi, self.eta)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HalfPlanePoint::new(z.re, z.im)
    }
}

/// Hyperbolic distance of the half-plane with curvature -4:
/// `arth |(z1 - z2) / (z1 - conj z2)|`.
pub fn hyp_dist_halfplane(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> Result<f64> {
    hyp_dist_halfplane_c(z1.to_complex(), z2.to_complex())
}

pub(crate) fn hyp_dist_halfplane_c(z1: Complex64, z2: Complex64) -> Result<f64> {
    if z1 == z2 {
        return Ok(0.0);
    }
    arth(((z1 - z2) / (z1 - z2.conj())).norm())
}

/// An element of the level-2 congruence group: an integer matrix
/// [[a, b], [c, d]] with determinant one, a and d odd, b and c even,
/// normalised modulo global sign so that c > 0, or c = 0 and d > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaTwoElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaTwoElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(MetricError::domain("determinant must be one"));
        }
        if a.rem_euclid(2) != 1 || d.rem_euclid(2) != 1 || b.rem_euclid(2) != 0 || c.rem_euclid(2) != 0
        {
            return Err(MetricError::domain("matrix is not congruent to I mod 2"));
        }
        Ok(GammaTwoElement { a, b, c, d }.normalized())
    }

    fn normalized(self) -> Self {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            GammaTwoElement {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    pub fn identity() -> Self {
        GammaTwoElement { a: 1, b: 0, c: 0, d: 1 }
    }

    /// Translation tau -> tau + 2k.
    pub fn translation(k: i64) -> Self {
        GammaTwoElement { a: 1, b: 2 * k, c: 0, d: 1 }.normalized()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply_c(&self, z: Complex64) -> Complex64 {
        let (a, b, c, d) = (self.a as f64, self.b as f64, self.c as f64, self.d as f64);
        (a * z + b) / (c * z + d)
    }

    pub fn apply(&self, z: &HalfPlanePoint) -> Result<HalfPlanePoint> {
        HalfPlanePoint::from_complex(self.apply_c(z.to_complex()))
    }

    /// Matrix product self * other (apply other first).
    pub fn compose(&self, other: &Self) -> Self {
        GammaTwoElement {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .normalized()
    }
}

/// Membership in the fundamental region
/// `{-1 < Re tau <= 1, |tau + 1/2| >= 1/2, |tau - 1/2| > 1/2}`.
pub fn in_fundamental_domain(tau: &HalfPlanePoint) -> bool {
    let z = tau.to_complex();
    z.re > -1.0
        && z.re <= 1.0
        && (z + 0.5).norm_sqr() >= 0.25
        && (z - 0.5).norm_sqr() > 0.25
}

const REDUCE_CAP: usize = 10_000;

/// Reduce a half-plane point into the fundamental region of the level-2
/// group, returning the reduced point and the group element carrying the
/// input to the output.
pub fn reduce_fundamental(tau: HalfPlanePoint) -> Result<(HalfPlanePoint, GammaTwoElement)> {
    let mut z = tau.to_complex();
    let mut g = GammaTwoElement::identity();
    // generators: V = [[1,0],[2,1]] and its inverse
    let v = GammaTwoElement { a: 1, b: 0, c: 2, d: 1 };
    let v_inv = GammaTwoElement { a: 1, b: 0, c: -2, d: 1 }.normalized();
    for _ in 0..REDUCE_CAP {
        // translate the real part into (-1, 1]
        let k = ((z.re - 1.0) / 2.0).ceil();
        if k != 0.0 {
            let t = GammaTwoElement::translation(-(k as i64));
            z = Complex64::new(z.re - 2.0 * k, z.im);
            g = t.compose(&g);
        }
        if (z + 0.5).norm_sqr() < 0.25 {
            // inside the left half-disk: V expands it outward
            z = v.apply_c(z);
            g = v.compose(&g);
        } else if (z - 0.5).norm_sqr() <= 0.25 {
            // inside the right half-disk or on its excluded boundary
            z = v_inv.apply_c(z);
            g = v_inv.compose(&g);
        } else {
            let out = HalfPlanePoint::from_complex(z)?;
            return Ok((out, g.normalized()));
        }
    }
    Err(MetricError::numeric("fundamental-domain reduction did not terminate"))
}

/// Sample the hyperbolic geodesic between two half-plane points: a vertical
/// segment, or the circular arc orthogonal to the real axis.
pub(crate) fn geodesic_points(z1: Complex64, z2: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    if (z1.re - z2.re).abs() <= 1e-13 * (1.0 + z1.norm().max(z2.norm())) {
        // vertical: interpolate log-height
        let (l1, l2) = (z1.im.ln(), z2.im.ln());
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            out.push(Complex64::new(
                z1.re + t * (z2.re - z1.re),
                (l1 + t * (l2 - l1)).exp(),
            ));
        }
    } else {
        let c = (z1.norm_sqr() - z2.norm_sqr()) / (2.0 * (z1.re - z2.re));
        let r = (z1 - c).norm();
        let phi1 = z1.im.atan2(z1.re - c);
        let phi2 = z2.im.atan2(z2.re - c);
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            let phi = phi1 + t * (phi2 - phi1);
            out.push(Complex64::new(c + r * phi.cos(), r * phi.sin()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hp(xi: f64, eta: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(xi, eta).unwrap()
    }

    #[test]
    fn distance_closed_forms() {
        assert_eq!(hyp_dist_halfplane(&hp(0.0, 1.0), &hp(0.0, 1.0)).unwrap(), 0.0);
        // (i, 2i) -> arth(1/3)
        let v = hyp_dist_halfplane(&hp(0.0, 1.0), &hp(0.0, 2.0)).unwrap();
        assert!((v - 0.34657359027997264).abs() < 1e-15);
        // (i, 1+i) -> arth(1/sqrt 5)
        let v = hyp_dist_halfplane(&hp(0.0, 1.0), &hp(1.0, 1.0)).unwrap();
        assert!((v - 0.4812118250596034).abs() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HalfPlanePoint::new(0.0, 0.0).is_err());
        assert!(HalfPlanePoint::new(1.0, -0.5).is_err());
    }

    #[test]
    fn group_element_validation() {
        assert!(GammaTwoElement::new(1, 0, 0, 1).is_ok());
        assert!(GammaTwoElement::new(1, 2, 0, 1).is_ok());
        assert!(GammaTwoElement::new(1, 0, 2, 1).is_ok());
        // determinant failure
        assert!(GammaTwoElement::new(1, 2, 2, 1).is_err());
        // parity failure (in SL(2,Z) but not congruent to I mod 2)
        assert!(GammaTwoElement::new(0, -1, 1, 0).is_err());
        // sign normalisation identifies +/- pairs
        let g = GammaTwoElement::new(-1, 0, -2, -1).unwrap();
        assert_eq!(g, GammaTwoElement::new(1, 0, 2, 1).unwrap());
    }

    #[test]
    fn reduction_examples() {
        // already reduced: identity element
        let (z, g) = reduce_fundamental(hp(0.3, 5.0)).unwrap();
        assert!(g.is_identity());
        assert_eq!((z.xi, z.eta), (0.3, 5.0));
        // single translation by -2
        let (z, g) = reduce_fundamental(hp(2.3, 5.0)).unwrap();
        assert!((z.xi - 0.3).abs() < 1e-12 && (z.eta - 5.0).abs() < 1e-12);
        assert_eq!(g, GammaTwoElement::translation(-1));
        // right boundary is kept
        let (z, g) = reduce_fundamental(hp(1.0, 2.0)).unwrap();
        assert!(g.is_identity());
        assert_eq!(z.xi, 1.0);
        // left boundary moves to the right one
        let (z, _) = reduce_fundamental(hp(-1.0, 2.0)).unwrap();
        assert_eq!(z.xi, 1.0);
    }

    #[test]
    fn reduction_lands_on_included_circle() {
        // a point on the right circle (excluded) maps onto the left circle
        let z = Complex64::new(0.5, 0.0) + Complex64::from_polar(0.5, 1.1);
        let (r, g) = reduce_fundamental(hp(z.re, z.im)).unwrap();
        assert!(in_fundamental_domain(&r));
        assert!(((r.to_complex() + 0.5).norm() - 0.5).abs() < 1e-12);
        let back = g.apply_c(z);
        assert!((back - r.to_complex()).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn distance_invariances(
            xi in -3.0f64..3.0, eta in 0.05f64..5.0,
            xi2 in -3.0f64..3.0, eta2 in 0.05f64..5.0,
            shift in -4.0f64..4.0, scale in 0.1f64..8.0,
        ) {
            let p = hp(xi, eta);
            let q = hp(xi2, eta2);
            let d = hyp_dist_halfplane(&p, &q).unwrap();
            let ds = hyp_dist_halfplane(&hp(xi + shift, eta), &hp(xi2 + shift, eta2)).unwrap();
            let dl = hyp_dist_halfplane(&hp(scale * xi, scale * eta), &hp(scale * xi2, scale * eta2)).unwrap();
            prop_assert!((d - ds).abs() < 1e-12);
            prop_assert!((d - dl).abs() < 1e-11);
            prop_assert!((d - hyp_dist_halfplane(&q, &p).unwrap()).abs() < 1e-13);
        }

        #[test]
        fn reduction_contract(xi in -40.0f64..40.0, eta in 0.02f64..30.0) {
            let (z, g) = reduce_fundamental(hp(xi, eta)).unwrap();
            prop_assert!(in_fundamental_domain(&z));
            // the returned element maps input to output
            let back = g.apply_c(Complex64::new(xi, eta));
            prop_assert!((back - z.to_complex()).norm() <= 1e-12 * (1.0 + z.to_complex().norm()));
            // applying a group element never changes hyperbolic distances
            let w = hp(0.11, 1.7);
            let d = hyp_dist_halfplane(&hp(xi, eta), &w).unwrap();
            let dg = hyp_dist_halfplane(&g.apply(&hp(xi, eta)).unwrap(), &g.apply(&w).unwrap()).unwrap();
            prop_assert!((d - dg).abs() <= 1e-9 * (1.0 + d));
        }
    }

    #[test]
    fn geodesic_endpoint_interpolation() {
        let a = Complex64::new(-0.4, 0.7);
        let b = Complex64::new(1.3, 2.1);
        let pts = geodesic_points(a, b, 33);
        assert_eq!(pts.len(), 33);
        assert!((pts[0] - a).norm() < 1e-12);
        assert!((pts[32] - b).norm() < 1e-12);
        for p in &pts {
            assert!(p.im > 0.0);
        }
        // vertical case: midpoint is the geometric mean of the heights
        let v = geodesic_points(Complex64::new(0.2, 0.5), Complex64::new(0.2, 4.0), 9);
        assert!((v[4].im - (0.5f64 * 4.0).sqrt()).abs() < 1e-12);
        assert!((v[0].re - 0.2).abs() < 1e-14 && (v[8].re - 0.2).abs() < 1e-14);
    }
}
