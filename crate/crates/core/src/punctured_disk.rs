//! Distances and densities on the punctured unit disk.
//!
//! The punctured disk `D* = {0 < |z| < 1}` carries the complete hyperbolic
//! metric of curvature -4 with density `1/(2 |z| log(1/|z|))`. On the bordered
//! subset `E* = {0 < |z| <= 1/e}` the crate's distance function
//!
//! ```text
//! D(z1, z2) = 2 sin(theta/2) / max(tau1, tau2) + |log tau1 - log tau2|
//! ```
//!
//! with `tau_j = log(1/|z_j|)` and `theta = |arg(z2/z1)|` in `[0, pi]`, is a
//! metric comparable with the hyperbolic distance from both sides. The
//! variant `D'` replaces `2 sin(theta/2)` by `theta` and sandwiches `D`
//! between `(2/pi) D'` and `D'`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::complex::ComplexPoint;
use crate::error::{MetricError, Result};
use crate::special::arth;

/// Outer radius of the bordered punctured disk E*.
pub fn e_star_radius() -> f64 {
    (-1.0f64).exp()
}

// Membership slack: points constructed as r e^{i theta}, or as crossings of
// a segment with the boundary circle, land within a few dozen ulps of the
// closed disk; must dominate the boundary slack of the region classifier.
const MEMBERSHIP_SLACK: f64 = 1e-11;

fn check_disk_star(z: ComplexPoint) -> Result<Complex64> {
    let z = z.finite()?;
    let r = z.norm();
    if r == 0.0 {
        return Err(MetricError::domain("the puncture z = 0 is excluded"));
    }
    if r >= 1.0 {
        return Err(MetricError::domain(format!(
            "|z| = {r} is outside the punctured unit disk"
        )));
    }
    Ok(z)
}

fn check_e_star(z: ComplexPoint) -> Result<Complex64> {
    let z = check_disk_star(z)?;
    let r = z.norm();
    let bound = e_star_radius();
    if r > bound * (1.0 + MEMBERSHIP_SLACK) {
        return Err(MetricError::domain(format!(
            "|z| = {r} exceeds the outer radius 1/e of E*"
        )));
    }
    Ok(z)
}

/// Angle |arg(z2/z1)| clamped to [0, pi]; values within an ulp of pi are pi.
fn angle_between(z1: Complex64, z2: Complex64) -> f64 {
    let theta = (z2 / z1).arg().abs();
    if theta > PI || PI - theta < PI * 1e-15 {
        PI
    } else {
        theta
    }
}

/// The distance function on the bordered punctured disk E* = {0 < |z| <= 1/e}.
pub fn metric_d(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let z1 = check_e_star(z1)?;
    let z2 = check_e_star(z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let tau1 = -z1.norm().ln();
    let tau2 = -z2.norm().ln();
    let theta = angle_between(z1, z2);
    Ok(2.0 * (0.5 * theta).sin() / tau1.max(tau2) + (tau1.ln() - tau2.ln()).abs())
}

/// The auxiliary distance D' with first term theta instead of 2 sin(theta/2).
///
/// Defined on the whole punctured disk; on E* it satisfies
/// `(2/pi) D' <= D <= D'`.
pub fn metric_d_prime(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let z1 = check_disk_star(z1)?;
    let z2 = check_disk_star(z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let tau1 = -z1.norm().ln();
    let tau2 = -z2.norm().ln();
    let theta = angle_between(z1, z2);
    Ok(theta / tau1.max(tau2) + (tau1.ln() - tau2.ln()).abs())
}

/// Exact hyperbolic distance of the punctured unit disk (curvature -4):
///
/// ```text
/// h(z1, z2) = arth sqrt((theta^2 + (tau1-tau2)^2) / (theta^2 + (tau1+tau2)^2))
/// ```
pub fn hyp_dist_punctured_disk(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let z1 = check_disk_star(z1)?;
    let z2 = check_disk_star(z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let tau1 = -z1.norm().ln();
    let tau2 = -z2.norm().ln();
    let theta = angle_between(z1, z2);
    let num = theta * theta + (tau1 - tau2) * (tau1 - tau2);
    let den = theta * theta + (tau1 + tau2) * (tau1 + tau2);
    arth((num / den).sqrt())
}

/// Hyperbolic density of the punctured unit disk: 1/(2 |z| log(1/|z|)).
pub fn hyp_density_punctured_disk(z: ComplexPoint) -> Result<f64> {
    let z = check_disk_star(z)?;
    let r = z.norm();
    Ok(1.0 / (2.0 * r * (1.0 / r).ln()))
}

/// Height margin of a geodesic over the half-plane lift of its higher cusp
/// point: delta = sqrt(eta1^2 + 1/4) - eta1, computed in the
/// cancellation-free form 1/(4 (eta1 + sqrt(eta1^2 + 1/4))).
pub fn geodesic_delta(eta1: f64) -> Result<f64> {
    if eta1 <= 0.0 || eta1.is_nan() || !eta1.is_finite() {
        return Err(MetricError::domain(format!("eta1 = {eta1} must be positive")));
    }
    Ok(1.0 / (4.0 * (eta1 + (eta1 * eta1 + 0.25).sqrt())))
}

/// Closed annulus containing every shortest geodesic between z1 and z2 in
/// the punctured disk: `e^{-pi delta} min(|z1|,|z2|) <= |z| <= max(|z1|,|z2|)`.
pub fn geodesic_annulus(z1: ComplexPoint, z2: ComplexPoint) -> Result<(f64, f64)> {
    let z1 = check_disk_star(z1)?;
    let z2 = check_disk_star(z2)?;
    let (r_lo, r_hi) = if z1.norm() <= z2.norm() {
        (z1.norm(), z2.norm())
    } else {
        (z2.norm(), z1.norm())
    };
    let eta1 = -r_lo.ln() / PI;
    let delta = geodesic_delta(eta1)?;
    Ok(((-PI * delta).exp() * r_lo, r_hi))
}

/// Polyline along the shortest hyperbolic geodesic of the punctured disk,
/// traced through the covering z = e^{i pi zeta} of the upper half-plane.
pub fn trace_geodesic_disk(
    z1: ComplexPoint,
    z2: ComplexPoint,
    samples: usize,
) -> Result<Vec<Complex64>> {
    let z1 = check_disk_star(z1)?;
    let z2 = check_disk_star(z2)?;
    if samples < 2 {
        return Err(MetricError::domain("need at least two samples"));
    }
    let zeta1 = Complex64::new(z1.arg() / PI, -z1.norm().ln() / PI);
    let xi2_raw = z2.arg() / PI;
    // choose the lift of z2 with |xi1 - xi2| <= 1 (the shortest geodesic)
    let k = ((zeta1.re - xi2_raw) / 2.0).round();
    let zeta2 = Complex64::new(xi2_raw + 2.0 * k, -z2.norm().ln() / PI);
    Ok(crate::halfplane::geodesic_points(zeta1, zeta2, samples)
        .into_iter()
        .map(|zeta| (Complex64::i() * PI * zeta).exp())
        .collect())
}
