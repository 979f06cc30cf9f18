//! The intermediate covering map Q of the punctured disk onto the twice
//! punctured plane, its growth bounds, and the explicit constants built
//! from it.
//!
//! Q has the theta-quotient and product representations
//!
//! ```text
//! Q(z) = 16 z [ sum z^{n(n+1)} / (1 + 2 sum z^{n^2}) ]^4
//!      = 16 z prod ((1 + z^{2n}) / (1 + z^{2n-1}))^8
//!      = 16 (z - 8 z^2 + 44 z^3 - 192 z^4 + 718 z^5 - ...)
//! ```
//!
//! and is univalent on |z| < e^{-pi/2}. Every evaluation with |z| <= 1/2 is
//! cross-checked against the product form.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::LazyLock;

use crate::complex::ComplexPoint;
use crate::error::{MetricError, Result};
use crate::punctured_disk::geodesic_delta;
use crate::special::gamma;

/// Univalence radius of Q: e^{-pi/2}.
pub fn univalence_radius() -> f64 {
    (-FRAC_PI_2).exp()
}

/// Upper endpoint 4 e^{-pi/2} of the admissible range for rho.
pub fn rho_max() -> f64 {
    4.0 * (-FRAC_PI_2).exp()
}

const MAX_TERMS: usize = 4096;

fn theta_quotient(z: Complex64, tol: f64) -> Result<Complex64> {
    let r = z.norm();
    let cutoff = tol * (1.0 - r);
    // numerator: sum_{n>=0} z^{n(n+1)} (exponents 0, 2, 6, 12, ...)
    let mut num = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    loop {
        num += term;
        n += 1;
        if n > MAX_TERMS {
            return Err(MetricError::numeric("theta numerator did not converge"));
        }
        term *= z.powu(2 * n as u32);
        if term.norm() < cutoff {
            num += term;
            break;
        }
    }
    // denominator: 1 + 2 sum_{n>=1} z^{n^2} (exponent increments 2n+1)
    let mut den = Complex64::new(1.0, 0.0);
    let mut pw = z;
    let mut n = 1usize;
    loop {
        den += 2.0 * pw;
        n += 1;
        if n > MAX_TERMS {
            return Err(MetricError::numeric("theta denominator did not converge"));
        }
        pw *= z.powu(2 * n as u32 - 1);
        if pw.norm() < cutoff {
            den += 2.0 * pw;
            break;
        }
    }
    Ok(num / den)
}

fn product_form(z: Complex64, tol: f64) -> Result<Complex64> {
    let r = z.norm();
    let cutoff = tol * (1.0 - r) / 16.0;
    let mut prod = Complex64::new(1.0, 0.0);
    for n in 1..=MAX_TERMS {
        let even = z.powu(2 * n as u32);
        let odd = z.powu(2 * n as u32 - 1);
        let factor = (Complex64::new(1.0, 0.0) + even) / (Complex64::new(1.0, 0.0) + odd);
        prod *= factor.powu(8);
        if odd.norm() < cutoff {
            return Ok(16.0 * z * prod);
        }
    }
    Err(MetricError::numeric("product form did not converge"))
}

pub(crate) fn q_eval_c(z: Complex64, tol: f64) -> Result<Complex64> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(MetricError::domain("tolerance must be positive"));
    }
    let r = z.norm();
    if r >= 1.0 {
        return Err(MetricError::domain(format!("|z| = {r} is outside the unit disk")));
    }
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let quot = theta_quotient(z, tol)?;
    let val = 16.0 * z * quot.powu(4);
    if r <= 0.5 {
        let prod = product_form(z, tol)?;
        let err = (val - prod).norm();
        if err > 10.0 * tol * (1.0 + val.norm()) {
            return Err(MetricError::numeric(format!(
                "theta and product forms disagree by {err} at z = {z}"
            )));
        }
    }
    Ok(val)
}

/// Evaluate Q(z) for |z| < 1 with a truncation tolerance `tol`.
pub fn q_eval(z: ComplexPoint, tol: f64) -> Result<ComplexPoint> {
    let z = z.finite()?;
    Ok(ComplexPoint::Finite(q_eval_c(z, tol)?))
}

/// First `count` Taylor coefficients of Q at the origin, recovered from
/// q_eval by a Cauchy integral on the circle of radius 0.05 with 64 nodes.
pub fn q_taylor_coefficients(count: usize) -> Result<Vec<f64>> {
    if !(1..=5).contains(&count) {
        return Err(MetricError::domain(format!(
            "count = {count} outside the supported range 1..=5"
        )));
    }
    const NODES: usize = 64;
    const RADIUS: f64 = 0.05;
    let mut values = Vec::with_capacity(NODES);
    for j in 0..NODES {
        let angle = 2.0 * PI * j as f64 / NODES as f64;
        values.push(q_eval_c(Complex64::from_polar(RADIUS, angle), 1e-14)?);
    }
    let mut coeffs = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let angle = 2.0 * PI * (j * k % NODES) as f64 / NODES as f64;
            acc += v * Complex64::from_polar(1.0, -angle);
        }
        coeffs.push(acc.re / (NODES as f64 * RADIUS.powi(k as i32)));
    }
    Ok(coeffs)
}

/// Two-sided growth bounds for |Q| on |z| = r < e^{-pi/2}:
/// `16 r / (1 + r e^{pi/2})^2 <= |Q(z)| <= 16 r / (1 - r e^{pi/2})^2`.
pub fn q_growth_bounds(r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < univalence_radius()) {
        return Err(MetricError::domain(format!(
            "r = {r} outside (0, e^(-pi/2))"
        )));
    }
    let s = r * FRAC_PI_2.exp();
    Ok((16.0 * r / ((1.0 + s) * (1.0 + s)), 16.0 * r / ((1.0 - s) * (1.0 - s))))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho < rho_max()) {
        return Err(MetricError::domain(format!(
            "rho = {rho} outside (0, 4 e^(-pi/2))"
        )));
    }
    Ok(())
}

/// Invert the lower growth bound: the mu = r e^{pi/2} in (0, 1) with
/// `16 r / (1 + r e^{pi/2})^2 = rho`.
pub fn mu_of_rho(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let s = rho * FRAC_PI_2.exp();
    let mu = (8.0 - s - 4.0 * (4.0 - s).sqrt()) * (-FRAC_PI_2).exp() / rho;
    if !(mu > 0.0 && mu < 1.0) {
        return Err(MetricError::numeric(format!("mu = {mu} escaped (0, 1)")));
    }
    Ok(mu)
}

/// The constants attached to a radius rho: the cusp-avoidance factor
/// `K(rho) = pi delta + 2 log((1 + mu e^{-pi delta}) / (1 - mu))` together
/// with all intermediate quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverConstants {
    pub rho: f64,
    pub r: f64,
    pub mu: f64,
    pub eta1: f64,
    pub delta: f64,
    pub k: f64,
}

pub fn k_of_rho(rho: f64) -> Result<CoverConstants> {
    let mu = mu_of_rho(rho)?;
    let r = mu * (-FRAC_PI_2).exp();
    let eta1 = -r.ln() / PI;
    let delta = geodesic_delta(eta1)?;
    let k = PI * delta + 2.0 * ((1.0 + mu * (-PI * delta).exp()) / (1.0 - mu)).ln();
    if k <= 0.0 || k.is_nan() {
        return Err(MetricError::numeric(format!("K(rho) = {k} not positive")));
    }
    Ok(CoverConstants { rho, r, mu, eta1, delta, k })
}

/// The constant C0 = Gamma(1/4)^4 / (4 pi^2) = 1 / (2 lambda(-1)).
static C0: LazyLock<f64> = LazyLock::new(|| gamma(0.25).powi(4) / (4.0 * PI * PI));

pub fn c0() -> f64 {
    *C0
}

/// Explicit lower bound for the hyperbolic density of the twice punctured
/// plane: `1 / (2 |z| (C0 + |log |z||))`.
pub fn hempel_density_lower(z: ComplexPoint) -> Result<f64> {
    let z = z.finite()?;
    let r = z.norm();
    if r == 0.0 || z == Complex64::new(1.0, 0.0) {
        return Err(MetricError::domain("z must avoid the punctures 0 and 1"));
    }
    Ok(1.0 / (2.0 * r * (c0() + r.ln().abs())))
}

/// Radius sigma e^{-K(rho)} of the disk around 0 avoided by every shortest
/// geodesic between points of modulus at least sigma.
pub fn geodesic_avoidance_radius(sigma: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if !(sigma > 0.0 && sigma <= rho) {
        return Err(MetricError::domain(format!(
            "sigma = {sigma} outside (0, rho = {rho}]"
        )));
    }
    Ok(sigma * (-k_of_rho(rho)?.k).exp())
}
