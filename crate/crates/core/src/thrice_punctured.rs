//! Numerical oracle for the hyperbolic geometry of the twice punctured
//! plane (the thrice punctured sphere): lifting points through the
//! covering, exact distance by minimising over the covering group orbit,
//! the density, and geodesic traces.
//!
//! The covering of `C \ {0, 1}` factors as `w = Q(e^{i pi tau})` for
//! tau in the upper half-plane, with covering group the level-2 congruence
//! group. A point is lifted by the classical inversion
//! `tau = i K(1-w) / K(w)` (parameter convention), moved into the
//! fundamental region, and validated by running the covering map forward.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::complex::ComplexPoint;
use crate::elliptic::elliptic_k_c;
use crate::error::{MetricError, Result};
use crate::halfplane::{
    geodesic_points, hyp_dist_halfplane_c, reduce_fundamental, GammaTwoElement, HalfPlanePoint,
};
use crate::modular_cover::q_eval_c;

/// Accuracy demanded from the forward check `Q(e^{i pi tau}) = w`.
pub const LIFT_FORWARD_TOL: f64 = 1e-9;

/// Forward covering map at a half-plane point.
pub(crate) fn covering_map(tau: Complex64, tol: f64) -> Result<Complex64> {
    q_eval_c((Complex64::i() * PI * tau).exp(), tol)
}

fn forward_ok(tau: Complex64, w: Complex64) -> bool {
    match covering_map(tau, 1e-12) {
        Ok(v) => (v - w).norm() <= LIFT_FORWARD_TOL * w.norm().max(1.0),
        Err(_) => false,
    }
}

fn check_in_c01(w: ComplexPoint) -> Result<Complex64> {
    let w = w.finite()?;
    if w == Complex64::new(0.0, 0.0) || w == Complex64::new(1.0, 0.0) {
        return Err(MetricError::domain("w must avoid the punctures 0 and 1"));
    }
    Ok(w)
}

/// First lift candidate from the elliptic-integral inversion. Real inputs
/// on the half-lines [1, inf) and (-inf, 0] are routed through the
/// covering-map identities for 1/w and 1/(1-w) to stay off the branch cut.
fn lift_candidate(w: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if w.im == 0.0 && w.re >= 1.0 {
        // lambda(sigma) = 1/w, then lambda(sigma/(sigma+1)) = w
        let m = one / w;
        let sigma = Complex64::i() * (elliptic_k_c(one - m)? / elliptic_k_c(m)?);
        return Ok(sigma / (sigma + one));
    }
    if w.im == 0.0 && w.re < 0.0 {
        // lambda(sigma) = 1/(1-w), then lambda(-1/sigma - 1) = w
        let m = one / (one - w);
        let sigma = Complex64::i() * (elliptic_k_c(one - m)? / elliptic_k_c(m)?);
        return Ok(-one / sigma - one);
    }
    Ok(Complex64::i() * (elliptic_k_c(one - w)? / elliptic_k_c(w)?))
}

/// Lift w through the covering: a fundamental-region point tau with
/// `Q(e^{i pi tau}) = w` within [`LIFT_FORWARD_TOL`].
pub fn lift(w: ComplexPoint) -> Result<HalfPlanePoint> {
    let w = check_in_c01(w)?;
    let tau0 = lift_candidate(w)?;
    // retry ladder: conjugate reflection and unit translations cover the
    // branch ambiguities of the inverse
    let candidates = [
        tau0,
        Complex64::new(-tau0.re, tau0.im),
        tau0 + 2.0,
        tau0 - 2.0,
    ];
    for cand in candidates {
        if cand.im <= 0.0 || cand.im.is_nan() {
            continue;
        }
        let Ok(hp) = HalfPlanePoint::from_complex(cand) else {
            continue;
        };
        let Ok((reduced, _)) = reduce_fundamental(hp) else {
            continue;
        };
        let tau = reduced.to_complex();
        if forward_ok(tau, w) {
            return Ok(reduced);
        }
    }
    Err(MetricError::numeric(format!(
        "forward check failed for every lift candidate of w = {w}"
    )))
}

/// Result of the orbit minimisation: the distance value, the minimising
/// group element, and whether the ball-exclusion certificate was attained
/// (when it is not, the value is only an upper bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThriceDistance {
    pub value: f64,
    pub element: GammaTwoElement,
    pub certified: bool,
}

const ROW_CAP: usize = 2_000_000;

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (x, y) with x*d - y*c = 1 for coprime (c, d).
fn bezout_row(c: i64, d: i64) -> (i64, i64) {
    // solve x*d + y'*c = 1, then y = -y'
    let (mut r0, mut r1) = (d, c);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        s0 = -s0;
        t0 = -t0;
    }
    (s0, -t0)
}

/// Exact minimum of `h(tau1, g tau2)` over the covering group, by
/// enumerating every bottom row (c, d) that the triangle-inequality height
/// bound cannot exclude, and for each row scanning the translates that can
/// compete.
fn orbit_minimum(tau1: Complex64, tau2: Complex64, tol: f64) -> Result<ThriceDistance> {
    struct State {
        tau1: Complex64,
        tau2: Complex64,
        best: f64,
        best_g: GammaTwoElement,
    }
    impl State {
        fn try_candidate(&mut self, g: GammaTwoElement) {
            let image = g.apply_c(self.tau2);
            // candidates beyond the reach of arth are never minimisers
            if let Ok(d) = hyp_dist_halfplane_c(self.tau1, image) {
                if d < self.best {
                    self.best = d;
                    self.best_g = g;
                }
            }
        }
    }

    let (xi1, eta1) = (tau1.re, tau1.im);
    let eta2 = tau2.im;
    let mut st = State {
        tau1,
        tau2,
        best: f64::INFINITY,
        best_g: GammaTwoElement::identity(),
    };

    // translations seed the upper bound
    let k_near = ((xi1 - tau2.re) / 2.0).round() as i64;
    for k in [k_near - 1, k_near, k_near + 1] {
        st.try_candidate(GammaTwoElement::translation(k));
    }
    if !st.best.is_finite() {
        return Err(MetricError::numeric(
            "points too far apart for the orbit minimisation",
        ));
    }

    // Every group element with h(tau1, g tau2) <= M satisfies
    // Im(g tau2) = eta2 / |c tau2 + d|^2 >= eta1 e^{-2M}, i.e.
    // |c tau2 + d|^2 <= (eta2/eta1) e^{2M}; beyond that bound the vertical
    // projection alone already exceeds M.
    let bound = (eta2 / eta1) * (2.0 * (st.best + tol)).exp();
    let c_max = (bound.sqrt() / eta2).floor() as i64;
    let mut rows = 0usize;
    let mut c = 2i64;
    while c <= c_max {
        let cf = c as f64;
        let slack = bound - cf * cf * eta2 * eta2;
        if slack >= 0.0 {
            let half_width = slack.sqrt();
            let center = -cf * tau2.re;
            let mut d = {
                let lo = (center - half_width).ceil() as i64;
                if lo.rem_euclid(2) == 0 {
                    lo + 1
                } else {
                    lo
                }
            };
            let d_hi = (center + half_width).floor() as i64;
            while d <= d_hi {
                if gcd(c, d) == 1 {
                    rows += 1;
                    if rows > ROW_CAP {
                        return Ok(ThriceDistance {
                            value: st.best,
                            element: st.best_g,
                            certified: false,
                        });
                    }
                    let (mut a0, mut b0) = bezout_row(c, d);
                    // force b even (a is odd automatically since a d is odd)
                    if b0.rem_euclid(2) != 0 {
                        a0 += c;
                        b0 += d;
                    }
                    let g0 = GammaTwoElement { a: a0, b: b0, c, d };
                    let u0 = g0.apply_c(tau2).re;
                    let k_row = ((xi1 - u0) / 2.0).round() as i64;
                    for k in [k_row - 1, k_row, k_row + 1] {
                        st.try_candidate(GammaTwoElement::translation(k).compose(&g0));
                    }
                }
                d += 2;
            }
        }
        c += 2;
    }
    Ok(ThriceDistance {
        value: st.best,
        element: st.best_g,
        certified: true,
    })
}

/// Hyperbolic distance of the twice punctured plane, exact within `tol`.
pub fn hyp_dist_thrice_punctured(
    w1: ComplexPoint,
    w2: ComplexPoint,
    tol: f64,
) -> Result<ThriceDistance> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(MetricError::domain("tolerance must be positive"));
    }
    let w1c = check_in_c01(w1)?;
    let w2c = check_in_c01(w2)?;
    if w1c == w2c {
        return Ok(ThriceDistance {
            value: 0.0,
            element: GammaTwoElement::identity(),
            certified: true,
        });
    }
    let tau1 = lift(w1)?.to_complex();
    let tau2 = lift(w2)?.to_complex();
    orbit_minimum(tau1, tau2, tol)
}

/// Hyperbolic density of the twice punctured plane at w, from the lift and
/// a central-difference derivative of the forward covering map.
pub fn hyp_density_thrice_punctured(w: ComplexPoint) -> Result<f64> {
    let tau = lift(w)?.to_complex();
    const STEP: f64 = 1e-6;
    let plus = covering_map(tau + STEP, 1e-12)?;
    let minus = covering_map(tau - STEP, 1e-12)?;
    let deriv = (plus - minus).norm() / (2.0 * STEP);
    if deriv <= 0.0 || deriv.is_nan() {
        return Err(MetricError::numeric("vanishing covering derivative"));
    }
    Ok(1.0 / (2.0 * tau.im * deriv))
}

/// Polyline along a shortest hyperbolic geodesic of the twice punctured
/// plane, traced through the covering map.
pub fn trace_geodesic_thrice(
    w1: ComplexPoint,
    w2: ComplexPoint,
    samples: usize,
    tol: f64,
) -> Result<Vec<Complex64>> {
    if samples < 2 {
        return Err(MetricError::domain("need at least two samples"));
    }
    let w1c = check_in_c01(w1)?;
    let tau1 = lift(w1)?.to_complex();
    let tau2 = lift(w2)?.to_complex();
    if (check_in_c01(w2)? - w1c).norm() == 0.0 {
        return Ok(vec![w1c; samples]);
    }
    let min = orbit_minimum(tau1, tau2, tol)?;
    let end = min.element.apply_c(tau2);
    geodesic_points(tau1, end, samples)
        .into_iter()
        .map(|zeta| covering_map(zeta, 1e-12))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_cover::{c0, k_of_rho};
    use crate::punctured_disk::hyp_dist_punctured_disk;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn lift_forward_contract_samples() {
        let samples = [
            pt(0.3, 0.4),
            pt(-2.0, 0.5),
            pt(0.05, 0.0),
            pt(5.0, 0.0),
            pt(-1.0, 0.0),
            pt(0.3, 0.0),
            pt(1.01, 0.0),
            pt(0.2, -3.0),
            pt(-0.7, -0.1),
        ];
        for w in samples {
            let tau = lift(w).unwrap().to_complex();
            let v = covering_map(tau, 1e-12).unwrap();
            let wc = w.finite().unwrap();
            assert!(
                (v - wc).norm() <= 1e-9 * wc.norm().max(1.0),
                "forward check failed at {w}: {v}"
            );
        }
        assert!(lift(pt(0.0, 0.0)).is_err());
        assert!(lift(pt(1.0, 0.0)).is_err());
        assert!(lift(ComplexPoint::Infinity).is_err());
    }

    #[test]
    fn lift_of_two_hits_the_univalence_point() {
        // e^{i pi tau} = +/- i e^{-pi/2} modulo the covering group
        let tau = lift(pt(2.0, 0.0)).unwrap().to_complex();
        let z = (Complex64::i() * PI * tau).exp();
        let target = (-std::f64::consts::FRAC_PI_2).exp();
        assert!(
            ((z.norm() - target).abs() < 1e-9) && (z.re.abs() < 1e-9),
            "z = {z}"
        );
    }

    #[test]
    fn lift_of_unit_interval_is_imaginary() {
        for x in [0.05, 0.3, 0.62, 0.9] {
            let tau = lift(pt(x, 0.0)).unwrap();
            assert!(tau.xi.abs() < 1e-9, "Re tau = {} at w = {x}", tau.xi);
        }
    }

    #[test]
    fn distance_identity_and_symmetries() {
        let zero = hyp_dist_thrice_punctured(pt(0.3, 0.0), pt(0.3, 0.0), 1e-9).unwrap();
        assert_eq!(zero.value, 0.0);
        // w -> 1 - w is an isometry: d(0.3, 0.4) = d(0.7, 0.6)
        let a = hyp_dist_thrice_punctured(pt(0.3, 0.0), pt(0.4, 0.0), 1e-9).unwrap();
        let b = hyp_dist_thrice_punctured(pt(0.7, 0.0), pt(0.6, 0.0), 1e-9).unwrap();
        assert!(a.certified && b.certified);
        assert!((a.value - b.value).abs() < 1e-9, "{} vs {}", a.value, b.value);
        // w -> 1/w as well
        let inv = hyp_dist_thrice_punctured(pt(1.0 / 0.3, 0.0), pt(2.5, 0.0), 1e-9).unwrap();
        assert!((inv.value - a.value).abs() < 1e-8);
    }

    #[test]
    fn distance_dominated_by_punctured_disk() {
        // monotonicity under domain inclusion D* subset C_{0,1}
        let h01 = hyp_dist_thrice_punctured(pt(0.1, 0.0), pt(0.2, 0.0), 1e-9)
            .unwrap()
            .value;
        let hd = hyp_dist_punctured_disk(pt(0.1, 0.0), pt(0.2, 0.0)).unwrap();
        assert!((hd - 0.17907372496042265).abs() < 1e-12);
        assert!(h01 <= hd + 1e-9, "{h01} vs {hd}");
        assert!(h01 > 0.0);
    }

    #[test]
    fn distance_triangle_inequality_spot() {
        let a = pt(0.15, 0.1);
        let b = pt(-0.4, 0.2);
        let c = pt(0.6, -0.3);
        let dab = hyp_dist_thrice_punctured(a, b, 1e-9).unwrap().value;
        let dac = hyp_dist_thrice_punctured(a, c, 1e-9).unwrap().value;
        let dcb = hyp_dist_thrice_punctured(c, b, 1e-9).unwrap().value;
        assert!(dab <= dac + dcb + 2e-9);
    }

    #[test]
    fn density_at_minus_one() {
        let v = hyp_density_thrice_punctured(pt(-1.0, 0.0)).unwrap();
        assert!((v - 1.0 / (2.0 * c0())).abs() < 1e-6, "{v}");
        // symmetry under w -> 1 - w
        let a = hyp_density_thrice_punctured(pt(0.3, 0.2)).unwrap();
        let b = hyp_density_thrice_punctured(pt(0.7, -0.2)).unwrap();
        assert!((a - b).abs() < 1e-6 * a);
    }

    #[test]
    fn traced_geodesic_respects_avoidance_annulus() {
        let rho = 4.0 * (-std::f64::consts::FRAC_PI_2).exp() - 0.01;
        let kc = k_of_rho(rho).unwrap();
        let w1 = pt(0.5, 0.1);
        let w2 = pt(-0.3, 0.4);
        let lo = w1
            .finite()
            .unwrap()
            .norm()
            .min(w2.finite().unwrap().norm())
            * (-kc.k).exp();
        let hi = w1
            .finite()
            .unwrap()
            .norm()
            .max(w2.finite().unwrap().norm());
        for w in trace_geodesic_thrice(w1, w2, 300, 1e-9).unwrap() {
            assert!(w.norm() >= lo - 1e-9, "|w| = {} below {lo}", w.norm());
            assert!(w.norm() <= hi + 1e-9, "|w| = {} above {hi}", w.norm());
        }
    }
}
