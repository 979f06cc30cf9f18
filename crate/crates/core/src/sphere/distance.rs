//! The piecewise distances on a punctured sphere: the metric `d_X` with
//! boundary infima, its infimum-free companion `e_X` built from
//! segment-circle crossings, and the two-puncture analogue on the
//! punctured plane.

use num_complex::Complex64;

use super::{PunctureConfiguration, RegionTag};
use crate::complex::ComplexPoint;
use crate::error::{MetricError, Result};
use crate::minimize::{circle_min, two_circle_min};
use crate::punctured_disk::metric_d;

const CIRCLE_STARTS: usize = 16;
const ANGLE_TOL: f64 = 1e-10;

/// Scaled pullback of the disk distance to the region around puncture `j`:
/// `rho_j D((w1 - a_j)/rho~_j, (w2 - a_j)/rho~_j)` for a finite puncture,
/// `rho_n D(rho~_n / w1, rho~_n / w2)` for the puncture at infinity.
/// On the boundary circle it agrees with the Euclidean distance.
pub fn metric_dj(
    cfg: &PunctureConfiguration,
    j: usize,
    w1: ComplexPoint,
    w2: ComplexPoint,
) -> Result<f64> {
    let n = cfg.n();
    if j >= n {
        return Err(MetricError::domain(format!("no puncture with index {j}")));
    }
    for w in [w1, w2] {
        if cfg.classify(w)? != RegionTag::NearPuncture(j) {
            return Err(MetricError::domain(format!(
                "point {w} is not in the region of puncture {j}"
            )));
        }
    }
    let z1 = pullback(cfg, j, w1.finite()?);
    let z2 = pullback(cfg, j, w2.finite()?);
    Ok(cfg.rho(j) * metric_d(z1.into(), z2.into())?)
}

/// Chart around puncture j mapping its region into the bordered punctured
/// disk E*.
fn pullback(cfg: &PunctureConfiguration, j: usize, w: Complex64) -> Complex64 {
    if j == cfg.n() - 1 {
        cfg.rho_tilde(j) / w
    } else {
        (w - cfg.puncture(j).finite().expect("finite puncture")) / cfg.rho_tilde(j)
    }
}

/// A point of the boundary circle of region j at the given angle.
fn boundary_point(cfg: &PunctureConfiguration, j: usize, angle: f64) -> Complex64 {
    if j == cfg.n() - 1 {
        Complex64::from_polar(cfg.rho(j), angle)
    } else {
        cfg.puncture(j).finite().expect("finite puncture") + Complex64::from_polar(cfg.rho(j), angle)
    }
}

fn boundary_angle(cfg: &PunctureConfiguration, j: usize, zeta: Complex64) -> f64 {
    if j == cfg.n() - 1 {
        zeta.arg()
    } else {
        (zeta - cfg.puncture(j).finite().expect("finite puncture")).arg()
    }
}

/// Crossing of the segment [w1, w2] with the boundary circle of region j,
/// used to seed the minimisers; `None` when the segment misses the circle.
fn crossing_seed(
    cfg: &PunctureConfiguration,
    j: usize,
    w1: Complex64,
    w2: Complex64,
) -> Option<Complex64> {
    let (center, radius) = if j == cfg.n() - 1 {
        (Complex64::new(0.0, 0.0), cfg.rho(j))
    } else {
        (cfg.puncture(j).finite().ok()?, cfg.rho(j))
    };
    segment_circle_crossing(w1.into(), w2.into(), center.into(), radius)
        .ok()
        .and_then(|p| p.finite().ok())
}

fn ordered(w1: ComplexPoint, w2: ComplexPoint) -> Result<(Complex64, Complex64)> {
    let a = w1.finite()?;
    let b = w2.finite()?;
    if (a.re, a.im) <= (b.re, b.im) {
        Ok((a, b))
    } else {
        Ok((b, a))
    }
}

/// The distance `d_X`: piecewise by region membership, with the boundary
/// infima computed by seeded multistart golden-section refined to the
/// absolute tolerance `tol`.
pub fn dist_dx(
    cfg: &PunctureConfiguration,
    w1: ComplexPoint,
    w2: ComplexPoint,
    tol: f64,
) -> Result<f64> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(MetricError::domain("tolerance must be positive"));
    }
    // canonical argument order makes the result exactly symmetric
    let (a, b) = ordered(w1, w2)?;
    let ta = cfg.classify(a.into())?;
    let tb = cfg.classify(b.into())?;
    match (ta, tb) {
        (RegionTag::Core, RegionTag::Core) => Ok((a - b).norm()),
        (RegionTag::NearPuncture(j), RegionTag::NearPuncture(k)) if j == k => {
            metric_dj(cfg, j, a.into(), b.into())
        }
        (RegionTag::NearPuncture(j), RegionTag::Core) => one_boundary_inf(cfg, j, a, b, tol),
        (RegionTag::Core, RegionTag::NearPuncture(j)) => one_boundary_inf(cfg, j, b, a, tol),
        (RegionTag::NearPuncture(j), RegionTag::NearPuncture(k)) => {
            two_boundary_inf(cfg, j, k, a, b, tol)
        }
    }
}

/// inf over zeta on the boundary of region j of D_j(inside, zeta) + |zeta - outside|.
fn one_boundary_inf(
    cfg: &PunctureConfiguration,
    j: usize,
    inside: Complex64,
    outside: Complex64,
    tol: f64,
) -> Result<f64> {
    let zin = pullback(cfg, j, inside);
    let rho = cfg.rho(j);
    let objective = |angle: f64| -> f64 {
        let zeta = boundary_point(cfg, j, angle);
        let zb = pullback(cfg, j, zeta);
        match metric_d(zin.into(), zb.into()) {
            Ok(d) => rho * d + (zeta - outside).norm(),
            Err(_) => f64::INFINITY,
        }
    };
    let mut seeds = vec![
        boundary_angle(cfg, j, outside),
        boundary_angle(cfg, j, inside),
    ];
    if let Some(z) = crossing_seed(cfg, j, inside, outside) {
        seeds.push(boundary_angle(cfg, j, z));
    }
    let (_, value) = circle_min(&objective, CIRCLE_STARTS, ANGLE_TOL.min(tol), &seeds);
    Ok(value)
}

/// inf over zeta1, zeta2 on the boundaries of regions j and k of
/// D_j(a, zeta1) + |zeta1 - zeta2| + D_k(zeta2, b).
fn two_boundary_inf(
    cfg: &PunctureConfiguration,
    j: usize,
    k: usize,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<f64> {
    let za = pullback(cfg, j, a);
    let zb = pullback(cfg, k, b);
    let (rj, rk) = (cfg.rho(j), cfg.rho(k));
    let objective = |phi1: f64, phi2: f64| -> f64 {
        let zeta1 = boundary_point(cfg, j, phi1);
        let zeta2 = boundary_point(cfg, k, phi2);
        let d1 = metric_d(za.into(), pullback(cfg, j, zeta1).into());
        let d2 = metric_d(pullback(cfg, k, zeta2).into(), zb.into());
        match (d1, d2) {
            (Ok(d1), Ok(d2)) => rj * d1 + (zeta1 - zeta2).norm() + rk * d2,
            _ => f64::INFINITY,
        }
    };
    let mut seeds = Vec::new();
    if let (Some(z1), Some(z2)) = (crossing_seed(cfg, j, a, b), crossing_seed(cfg, k, a, b)) {
        seeds.push((boundary_angle(cfg, j, z1), boundary_angle(cfg, k, z2)));
    }
    // angles facing the other region
    seeds.push((boundary_angle(cfg, j, b), boundary_angle(cfg, k, a)));
    let (value, _) = two_circle_min(&objective, CIRCLE_STARTS, ANGLE_TOL.min(tol), tol * 0.1, &seeds);
    Ok(value)
}

/// The infimum-free companion `e_X`: the same case split as `d_X`, with the
/// boundary points fixed as the crossings of the segment [w1, w2] with the
/// relevant circles.
pub fn dist_ex(cfg: &PunctureConfiguration, w1: ComplexPoint, w2: ComplexPoint) -> Result<f64> {
    let (a, b) = ordered(w1, w2)?;
    let ta = cfg.classify(a.into())?;
    let tb = cfg.classify(b.into())?;
    match (ta, tb) {
        (RegionTag::Core, RegionTag::Core) => Ok((a - b).norm()),
        (RegionTag::NearPuncture(j), RegionTag::NearPuncture(k)) if j == k => {
            metric_dj(cfg, j, a.into(), b.into())
        }
        (RegionTag::NearPuncture(j), RegionTag::Core) => ex_one_boundary(cfg, j, a, b),
        (RegionTag::Core, RegionTag::NearPuncture(j)) => ex_one_boundary(cfg, j, b, a),
        (RegionTag::NearPuncture(j), RegionTag::NearPuncture(k)) => {
            let zeta1 = ex_crossing(cfg, j, a, b)?;
            let zeta2 = ex_crossing(cfg, k, a, b)?;
            let d1 = cfg.rho(j)
                * metric_d(pullback(cfg, j, a).into(), pullback(cfg, j, zeta1).into())?;
            let d2 = cfg.rho(k)
                * metric_d(pullback(cfg, k, zeta2).into(), pullback(cfg, k, b).into())?;
            Ok(d1 + (zeta1 - zeta2).norm() + d2)
        }
    }
}

fn ex_crossing(
    cfg: &PunctureConfiguration,
    j: usize,
    a: Complex64,
    b: Complex64,
) -> Result<Complex64> {
    let center = if j == cfg.n() - 1 {
        Complex64::new(0.0, 0.0)
    } else {
        cfg.puncture(j).finite()?
    };
    let raw = segment_circle_crossing(a.into(), b.into(), center.into(), cfg.rho(j))?.finite()?;
    // project radially onto the circle so the pullback lands in the closed
    // disk chart to the last ulp
    let offset = raw - center;
    Ok(center + offset * (cfg.rho(j) / offset.norm()))
}

fn ex_one_boundary(
    cfg: &PunctureConfiguration,
    j: usize,
    inside: Complex64,
    outside: Complex64,
) -> Result<f64> {
    let zeta = ex_crossing(cfg, j, inside, outside)?;
    let d = cfg.rho(j)
        * metric_d(pullback(cfg, j, inside).into(), pullback(cfg, j, zeta).into())?;
    Ok(d + (zeta - outside).norm())
}

/// Unique crossing of the segment [w1, w2] with the circle of the given
/// center and radius, solved from the real quadratic along the segment.
/// Exactly one endpoint must lie strictly inside the circle; an endpoint on
/// the circle (to machine precision) is returned as the crossing.
pub fn segment_circle_crossing(
    w1: ComplexPoint,
    w2: ComplexPoint,
    center: ComplexPoint,
    radius: f64,
) -> Result<ComplexPoint> {
    if radius <= 0.0 || radius.is_nan() {
        return Err(MetricError::domain("radius must be positive"));
    }
    let a = w1.finite()?;
    let b = w2.finite()?;
    let c = center.finite()?;
    let f1 = (a - c).norm() - radius;
    let f2 = (b - c).norm() - radius;
    let on_circle = 1e-12 * radius;
    if f1.abs() <= on_circle {
        return Ok(ComplexPoint::Finite(a));
    }
    if f2.abs() <= on_circle {
        return Ok(ComplexPoint::Finite(b));
    }
    if f1.signum() == f2.signum() {
        return Err(MetricError::domain(
            "endpoints on the same side of the circle",
        ));
    }
    // |a + t (b - a) - c|^2 = radius^2
    let d = b - a;
    let e = a - c;
    let qa = d.norm_sqr();
    let qb = 2.0 * (e.re * d.re + e.im * d.im);
    let qc = e.norm_sqr() - radius * radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 1e-14 * (qb * qb).max(4.0 * (qa * qc).abs()) {
        return Err(MetricError::domain("tangent or degenerate crossing geometry"));
    }
    let sq = disc.sqrt();
    let q = -0.5 * (qb + qb.signum() * sq);
    let mut roots = [q / qa, qc / q];
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
    let t = roots
        .iter()
        .copied()
        .find(|t| (-1e-12..=1.0 + 1e-12).contains(t))
        .ok_or_else(|| MetricError::domain("no crossing inside the segment"))?;
    let t = t.clamp(0.0, 1.0);
    Ok(ComplexPoint::Finite(a + t * d))
}

/// The two-puncture analogue on the punctured plane, with the unit circle
/// as the interface between the two charts.
pub fn dist_cstar(w1: ComplexPoint, w2: ComplexPoint, tol: f64) -> Result<f64> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(MetricError::domain("tolerance must be positive"));
    }
    let e = std::f64::consts::E;
    let (a, b) = ordered(w1, w2)?;
    for w in [a, b] {
        if w.norm() == 0.0 {
            return Err(MetricError::domain("the puncture 0 is excluded"));
        }
    }
    let inner = |w: Complex64| w / e;
    let outer = |w: Complex64| (e * w).inv();
    match (a.norm() <= 1.0, b.norm() <= 1.0) {
        (true, true) => metric_d(inner(a).into(), inner(b).into()),
        (false, false) => metric_d(outer(a).into(), outer(b).into()),
        (in_a, _) => {
            let (p, q) = if in_a { (a, b) } else { (b, a) };
            let objective = |angle: f64| -> f64 {
                let zeta = Complex64::from_polar(1.0, angle);
                let first = metric_d(inner(p).into(), inner(zeta).into());
                let second = metric_d(outer(zeta).into(), outer(q).into());
                match (first, second) {
                    (Ok(x), Ok(y)) => x + y,
                    _ => f64::INFINITY,
                }
            };
            let seeds = [p.arg(), q.arg()];
            let (_, value) = circle_min(&objective, CIRCLE_STARTS, ANGLE_TOL.min(tol), &seeds);
            Ok(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    fn standard() -> PunctureConfiguration {
        PunctureConfiguration::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), ComplexPoint::Infinity]).unwrap()
    }

    #[test]
    fn dj_radial_value() {
        let cfg = standard();
        let v = metric_dj(&cfg, 0, pt((-2.0f64).exp(), 0.0), pt((-3.0f64).exp(), 0.0)).unwrap();
        let expect = 1.5f64.ln() / std::f64::consts::E;
        assert!((v - expect).abs() < 1e-14, "{v} vs {expect}");
        assert!((v - 0.14916227738534996).abs() < 1e-14);
    }

    #[test]
    fn dj_boundary_is_euclidean() {
        let cfg = standard();
        let r = cfg.rho(0);
        let z1 = Complex64::from_polar(r, 0.3);
        let z2 = Complex64::from_polar(r, 1.4);
        let v = metric_dj(&cfg, 0, z1.into(), z2.into()).unwrap();
        assert!((v - (z1 - z2).norm()).abs() < 1e-13);
        // outer region boundary too
        let rn = cfg.rho(2);
        let z1 = Complex64::from_polar(rn, 0.2);
        let z2 = Complex64::from_polar(rn, -0.9);
        let v = metric_dj(&cfg, 2, z1.into(), z2.into()).unwrap();
        assert!((v - (z1 - z2).norm()).abs() < 1e-12);
    }

    #[test]
    fn dj_identity_at_infinity_region() {
        let cfg = standard();
        let w = pt(2.0 * std::f64::consts::E, 0.0);
        assert_eq!(metric_dj(&cfg, 2, w, w).unwrap(), 0.0);
        // outside the region: domain error
        assert!(metric_dj(&cfg, 0, pt(0.5, 0.0), pt(0.1, 0.0)).is_err());
    }

    #[test]
    fn crossing_real_axis() {
        let r = (-1.0f64).exp();
        let z = segment_circle_crossing(pt(0.1, 0.0), pt(0.9, 0.0), pt(0.0, 0.0), r)
            .unwrap()
            .finite()
            .unwrap();
        assert!((z - Complex64::new(r, 0.0)).norm() < 1e-14);
        // both endpoints inside: error
        assert!(segment_circle_crossing(
            pt((-2.0f64).exp(), 0.0),
            pt((-3.0f64).exp(), 0.0),
            pt(0.0, 0.0),
            r
        )
        .is_err());
        // endpoint on the circle comes back unchanged
        let z = segment_circle_crossing(pt(r, 0.0), pt(0.9, 0.0), pt(0.0, 0.0), r)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(z, Complex64::new(r, 0.0));
    }

    #[test]
    fn ex_hand_value() {
        let cfg = standard();
        let v = dist_ex(&cfg, pt((-2.0f64).exp(), 0.0), pt(0.5, 0.0)).unwrap();
        let e = std::f64::consts::E;
        let expect = 2.0f64.ln() / e + 0.5 - 1.0 / e;
        assert!((v - expect).abs() < 1e-13, "{v} vs {expect}");
        assert!((v - 0.38711515626251125).abs() < 1e-13);
    }

    #[test]
    fn dx_cases() {
        let cfg = standard();
        // both in core: Euclidean
        let v = dist_dx(&cfg, pt(0.5, 0.0), pt(0.45, 0.2), 1e-9).unwrap();
        assert!((v - Complex64::new(0.05, -0.2).norm()).abs() < 1e-14);
        // both in one region: the pullback metric
        let a = pt((-2.0f64).exp(), 0.0);
        let b = pt((-3.0f64).exp(), 0.0);
        let v = dist_dx(&cfg, a, b, 1e-9).unwrap();
        assert!((v - metric_dj(&cfg, 0, a, b).unwrap()).abs() < 1e-14);
        // mixed: bounded by the feasible crossing value and by e_X
        let w1 = pt((-2.0f64).exp(), 0.0);
        let w2 = pt(0.5, 0.0);
        let v = dist_dx(&cfg, w1, w2, 1e-9).unwrap();
        let ex = dist_ex(&cfg, w1, w2).unwrap();
        assert!(v <= ex + 1e-12, "{v} vs ex {ex}");
        assert!(v <= 0.38711515626251125 + 1e-12);
        assert!(v > 0.0);
        // puncture input is rejected
        assert!(dist_dx(&cfg, pt(0.0, 0.0), pt(0.5, 0.0), 1e-9).is_err());
    }

    #[test]
    fn dx_symmetry_is_exact() {
        let cfg = standard();
        let pairs = [
            (pt(0.09, 0.05), pt(0.62, -0.33)),
            (pt(0.09, 0.05), pt(1.05, 0.21)),
            (pt(3.1, 0.4), pt(0.62, -0.33)),
            (pt(3.1, 0.4), pt(0.05, -0.1)),
        ];
        for (a, b) in pairs {
            let v1 = dist_dx(&cfg, a, b, 1e-9).unwrap();
            let v2 = dist_dx(&cfg, b, a, 1e-9).unwrap();
            assert_eq!(v1, v2);
            let e1 = dist_ex(&cfg, a, b).unwrap();
            let e2 = dist_ex(&cfg, b, a).unwrap();
            assert_eq!(e1, e2);
            assert!(v1 <= e1 + 1e-12);
        }
    }

    #[test]
    fn ex_segment_through_third_disk_is_finite() {
        // puncture 0.5 sits between 0 and 1; a real segment from the region
        // of 0 to the region of 1 passes straight through its disk
        let cfg = PunctureConfiguration::new(vec![
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.5, 0.0),
            ComplexPoint::Infinity,
        ])
        .unwrap();
        let a = pt(0.05, 0.0);
        let b = pt(0.93, 0.0);
        assert_eq!(cfg.classify(a).unwrap(), RegionTag::NearPuncture(0));
        assert_eq!(cfg.classify(b).unwrap(), RegionTag::NearPuncture(1));
        let v = dist_ex(&cfg, a, b).unwrap();
        assert!(v.is_finite() && v > 0.0);
        // manual three-term sum
        let z1 = ex_crossing(&cfg, 0, a.finite().unwrap(), b.finite().unwrap()).unwrap();
        let z2 = ex_crossing(&cfg, 1, a.finite().unwrap(), b.finite().unwrap()).unwrap();
        let manual = cfg.rho(0)
            * metric_d(pullback(&cfg, 0, a.finite().unwrap()).into(), pullback(&cfg, 0, z1).into())
                .unwrap()
            + (z1 - z2).norm()
            + cfg.rho(1)
                * metric_d(pullback(&cfg, 1, z2).into(), pullback(&cfg, 1, b.finite().unwrap()).into())
                    .unwrap();
        assert!((v - manual).abs() < 1e-14);
        // d_X stays below it
        let d = dist_dx(&cfg, a, b, 1e-9).unwrap();
        assert!(d <= v + 1e-12);
    }

    #[test]
    fn cstar_cases() {
        // identical unit-modulus points
        assert_eq!(dist_cstar(pt(1.0, 0.0), pt(1.0, 0.0), 1e-9).unwrap(), 0.0);
        // both small: D(w1/e, w2/e)
        let a = pt(0.4, 0.1);
        let b = pt(-0.3, 0.2);
        let e = std::f64::consts::E;
        let direct = metric_d(
            (a.finite().unwrap() / e).into(),
            (b.finite().unwrap() / e).into(),
        )
        .unwrap();
        assert!((dist_cstar(a, b, 1e-9).unwrap() - direct).abs() < 1e-14);
        // inversion symmetry of the construction
        let inv_a = pt(1.0 / 0.4, 0.0);
        let inv_b = pt(2.0, 0.0);
        let v1 = dist_cstar(pt(0.4, 0.0), pt(0.5, 0.0), 1e-9).unwrap();
        let v2 = dist_cstar(inv_a, inv_b, 1e-9).unwrap();
        assert!((v1 - v2).abs() < 1e-12);
        assert!(dist_cstar(pt(0.0, 0.0), pt(1.0, 0.0), 1e-9).is_err());
        assert!(dist_cstar(ComplexPoint::Infinity, pt(1.0, 0.0), 1e-9).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn cstar_triangle(
            r in prop::array::uniform3(-1.2f64..1.2),
            th in prop::array::uniform3(0.0f64..std::f64::consts::TAU),
        ) {
            let p: Vec<ComplexPoint> = (0..3)
                .map(|i| ComplexPoint::Finite(Complex64::from_polar(r[i].exp(), th[i])))
                .collect();
            let dab = dist_cstar(p[0], p[1], 1e-9).unwrap();
            let dac = dist_cstar(p[0], p[2], 1e-9).unwrap();
            let dcb = dist_cstar(p[2], p[1], 1e-9).unwrap();
            prop_assert!(dab <= dac + dcb + 3e-9);
            prop_assert!((dab - dist_cstar(p[1], p[0], 1e-9).unwrap()).abs() == 0.0);
        }

        #[test]
        fn crossing_lands_on_circle(
            t1 in 0.0f64..std::f64::consts::TAU,
            r1 in 0.05f64..0.3,
            r2 in 1.2f64..3.0,
            t2 in 0.0f64..std::f64::consts::TAU,
        ) {
            let a = Complex64::from_polar(r1, t1);
            let b = Complex64::from_polar(r2, t2);
            let z = segment_circle_crossing(a.into(), b.into(), pt(0.0, 0.0), 1.0)
                .unwrap().finite().unwrap();
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }
}
