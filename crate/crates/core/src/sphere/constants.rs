//! The explicit comparability constants bounding the sphere distances
//! against the hyperbolic distance.

use super::PunctureConfiguration;
use crate::modular_cover::{c0, k_of_rho};

/// Floor applied to U2 so the derived maxima stay positive even for
/// degenerate radii (cannot trigger for normalised configurations, where
/// the outer radius is at least e).
const U2_FLOOR: f64 = 1e-12;

/// Comparability constants of a configuration:
/// `n1 * h <= d_X <= e_X <= n2 * h` and, on the bordered disk charts,
/// `(4/pi) h <= D <= m0 * h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparabilityConstants {
    pub m1: f64,
    pub m2: f64,
    pub m0: f64,
    pub u1: f64,
    pub u2: f64,
    pub b1: f64,
    pub b2: f64,
    pub n1: f64,
    pub n2_prime: f64,
    pub n2_double_prime: f64,
    pub n2: f64,
}

pub fn comparability_constants(cfg: &PunctureConfiguration) -> ComparabilityConstants {
    let e = std::f64::consts::E;
    let k0 = k_of_rho(e.recip()).expect("1/e is inside the admissible range").k;
    let c0 = c0();
    let m1 = 2.0 * (c0 + k0 + 1.0);
    let m2 = 2.0 * (c0 + 1.0);
    let m0 = m1 + m2;

    let n = cfg.n();
    let rho_n = cfg.rho(n - 1);
    let rho_1 = cfg.rho(0);
    let m = (0..n - 1).map(|j| cfg.rho(j)).fold(f64::INFINITY, f64::min);

    let u1 = 2.0 * rho_n * k0.exp() * (c0 - k0 - 1.0 + (rho_n / rho_1).ln());
    let u2 = (6.0 * rho_n * (c0 + 3.0f64.ln() + rho_n.ln())).max(U2_FLOOR);
    let b2 = u1.max(u2);
    let n1 = 2.0 * m / std::f64::consts::PI;
    let b1 = m0 * rho_n * (1.0 + b2 / n1);
    let n2_prime = b1 + b2;
    let gap = super::disk_gap_factor();
    let n2_double_prime = b2 + 2.0 * (2.0 * m0 * rho_n).max(4.0 * b2 / gap);
    let n2 = n2_prime.max(n2_double_prime);

    ComparabilityConstants {
        m1,
        m2,
        m0,
        u1,
        u2,
        b1,
        b2,
        n1,
        n2_prime,
        n2_double_prime,
        n2,
    }
}
