//! Checks backed by the hyperbolic-distance oracle for the twice punctured
//! plane: metric axioms, isometry invariance, geodesic localisation, the
//! density bound, and the upper comparability of D.

use num_complex::Complex64;
use rayon::prelude::*;

use super::sampling::{rng_for, sample_c01, sample_e_star};
use super::{Check, CheckRecord, TOL_ORACLE};
use crate::complex::ComplexPoint;
use crate::error::Result;
use crate::modular_cover::{c0, hempel_density_lower, k_of_rho, rho_max};
use crate::punctured_disk::metric_d;
use crate::thrice_punctured::{
    hyp_density_thrice_punctured, hyp_dist_thrice_punctured, lift, trace_geodesic_thrice,
};

const ORACLE_TOL: f64 = 1e-8;

fn dist(a: Complex64, b: Complex64) -> f64 {
    let d = hyp_dist_thrice_punctured(a.into(), b.into(), ORACLE_TOL).expect("oracle distance");
    assert!(d.certified, "uncertified distance for {a}, {b}");
    d.value
}

pub(super) fn run(seed: u64, samples: Option<u64>) -> Result<Vec<CheckRecord>> {
    let base = samples.unwrap_or(1000) as usize;
    Ok(vec![
        lift_forward(seed, base)?,
        metric_axioms(seed, base.min(1000))?,
        isometry_invariance(seed, base.min(300))?,
        geodesic_containment(seed, (base / 10).clamp(20, 100))?,
        convexity(seed, (base / 10).clamp(20, 100))?,
        density_lower_bound(seed, base)?,
        density_symmetry(seed, base.min(300))?,
        density_at_minus_one()?,
        upper_comparability(seed, base)?,
    ])
}

fn lift_forward(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "oracle.lift_forward");
    let pts: Vec<Complex64> = (0..n).map(|_| sample_c01(&mut rng)).collect();
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|w| {
            let tau = lift((*w).into()).expect("lift").to_complex();
            let v = crate::thrice_punctured::covering_map(tau, 1e-12).expect("forward map");
            (v - w).norm() / w.norm().max(1.0)
        })
        .collect();
    let mut check = Check::new(
        "oracle.lift_forward",
        "Q(e^{i pi lift(w)}) = w",
        1e-9,
    );
    check.record_batch(&slacks, |i| format!("w = {}", pts[i]));
    Ok(check.finish())
}

fn metric_axioms(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "oracle.metric_axioms");
    let triples: Vec<[Complex64; 3]> = (0..n)
        .map(|_| [sample_c01(&mut rng), sample_c01(&mut rng), sample_c01(&mut rng)])
        .collect();
    let slacks: Vec<f64> = triples
        .par_iter()
        .map(|[a, b, c]| {
            let dab = dist(*a, *b);
            let dba = dist(*b, *a);
            let dac = dist(*a, *c);
            let dcb = dist(*c, *b);
            let triangle = dab - dac - dcb;
            let symmetry = (dab - dba).abs();
            triangle.max(symmetry).max(-dab)
        })
        .collect();
    let mut check = Check::new(
        "oracle.metric_axioms",
        "h on the twice punctured plane: symmetric, positive, triangle inequality",
        2.0 * ORACLE_TOL,
    );
    check.record_batch(&slacks, |i| format!("triple {:?}", triples[i]));
    Ok(check.finish())
}

fn isometry_invariance(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "oracle.isometry");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_c01(&mut rng), sample_c01(&mut rng)])
        .collect();
    let one = Complex64::new(1.0, 0.0);
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let d = dist(*a, *b);
            let d_mirror = dist(one - a, one - b);
            let d_inverse = dist(a.inv(), b.inv());
            (d - d_mirror).abs().max((d - d_inverse).abs())
        })
        .collect();
    let mut check = Check::new(
        "oracle.isometry_invariance",
        "h is invariant under w -> 1-w and w -> 1/w",
        TOL_ORACLE,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn geodesic_containment(seed: u64, n: usize) -> Result<CheckRecord> {
    // pairs with both moduli below rho stay, along the traced geodesic,
    // above min(|w1|, |w2|) e^{-K(rho)}
    let rho = rho_max() - 0.01;
    let k = k_of_rho(rho)?.k;
    let mut rng = rng_for(seed, "oracle.containment");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| {
            let mut p = [Complex64::default(); 2];
            for q in &mut p {
                use rand::Rng;
                let r = rng.gen_range(0.05..rho);
                *q = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            }
            p
        })
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let lo = a.norm().min(b.norm()) * (-k).exp();
            let trace =
                trace_geodesic_thrice((*a).into(), (*b).into(), 512, ORACLE_TOL).expect("trace");
            trace
                .iter()
                .map(|w| lo - w.norm())
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let mut check = Check::new(
        "oracle.containment",
        "geodesics between points of modulus <= rho avoid |w| < min|w_i| e^{-K(rho)}",
        1e-6,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn convexity(seed: u64, n: usize) -> Result<CheckRecord> {
    // the punctured disk around 0 inside the domain is hyperbolically
    // convex: traced geodesics stay inside |w| <= max(|w1|, |w2|)
    let mut rng = rng_for(seed, "oracle.convexity");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| {
            let mut p = [Complex64::default(); 2];
            for q in &mut p {
                use rand::Rng;
                let r = rng.gen_range(0.05..0.9);
                *q = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            }
            p
        })
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let hi = a.norm().max(b.norm());
            let trace =
                trace_geodesic_thrice((*a).into(), (*b).into(), 512, ORACLE_TOL).expect("trace");
            trace
                .iter()
                .map(|w| w.norm() - hi)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let mut check = Check::new(
        "oracle.convexity",
        "geodesics stay inside the punctured disk of their endpoints",
        1e-6,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn density_lower_bound(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "oracle.density_lower");
    let pts: Vec<Complex64> = (0..n).map(|_| sample_c01(&mut rng)).collect();
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|w| {
            let bound = hempel_density_lower((*w).into()).expect("bound");
            let density = hyp_density_thrice_punctured((*w).into()).expect("density");
            bound - density
        })
        .collect();
    let mut check = Check::new(
        "oracle.density_lower_bound",
        "1/(2|w|(C0+|log|w||)) <= lambda(w)",
        1e-8,
    );
    check.record_batch(&slacks, |i| format!("w = {}", pts[i]));
    Ok(check.finish())
}

fn density_symmetry(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "oracle.density_symmetry");
    let pts: Vec<Complex64> = (0..n).map(|_| sample_c01(&mut rng)).collect();
    let one = Complex64::new(1.0, 0.0);
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|w| {
            let a = hyp_density_thrice_punctured((*w).into()).expect("density");
            let b = hyp_density_thrice_punctured((one - w).into()).expect("density");
            (a - b).abs() / a.max(b)
        })
        .collect();
    let mut check = Check::new(
        "oracle.density_symmetry",
        "lambda(w) = lambda(1-w)",
        TOL_ORACLE,
    );
    check.record_batch(&slacks, |i| format!("w = {}", pts[i]));
    Ok(check.finish())
}

fn density_at_minus_one() -> Result<CheckRecord> {
    let mut check = Check::new(
        "oracle.density_at_minus_one",
        "lambda(-1) = 1/(2 C0)",
        TOL_ORACLE,
    );
    let v = hyp_density_thrice_punctured(ComplexPoint::new(-1.0, 0.0))?;
    check.record((v - 1.0 / (2.0 * c0())).abs(), || format!("lambda(-1) = {v}"));
    Ok(check.finish())
}

fn upper_comparability(seed: u64, n: usize) -> Result<CheckRecord> {
    // D <= M0 h on pairs of the bordered punctured disk
    let cc = k_of_rho((-1.0f64).exp())?;
    let m0 = 4.0 * c0() + 4.0 + 2.0 * cc.k;
    let mut rng = rng_for(seed, "oracle.upper_comparability");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let d = metric_d((*a).into(), (*b).into()).expect("sample in E*");
            let h = dist(*a, *b);
            d - m0 * h
        })
        .collect();
    let mut check = Check::new(
        "oracle.upper_comparability",
        "D <= M0 h on E*",
        TOL_ORACLE,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}
