//! Checks for the bordered punctured disk: metric axioms, the sandwich
//! against D', both comparability inequalities, the sharpness limit, and
//! geodesic containment.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::sampling::{rng_for, sample_e_star};
use super::{Check, CheckRecord, TOL_CLOSED_FORM};
use crate::error::Result;
use crate::punctured_disk::{
    geodesic_annulus, hyp_dist_punctured_disk, metric_d, metric_d_prime, trace_geodesic_disk,
};
use crate::special::arth;

pub(super) fn run(seed: u64, samples: Option<u64>) -> Result<Vec<CheckRecord>> {
    let base = samples.unwrap_or(100_000) as usize;
    Ok(vec![
        metric_axioms(seed, base)?,
        sandwich(seed, base.min(20_000))?,
        lower_comparability(seed, base.min(20_000))?,
        stronger_bound(seed, base.min(20_000))?,
        sharpness(seed)?,
        geodesic_containment(seed, (base / 1000).clamp(20, 200))?,
    ])
}

fn metric_axioms(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "disk.metric_axioms");
    let triples: Vec<[Complex64; 3]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = triples
        .par_iter()
        .map(|[a, b, c]| {
            let dab = metric_d((*a).into(), (*b).into()).expect("sample in E*");
            let dba = metric_d((*b).into(), (*a).into()).expect("sample in E*");
            let dac = metric_d((*a).into(), (*c).into()).expect("sample in E*");
            let dcb = metric_d((*c).into(), (*b).into()).expect("sample in E*");
            let triangle = dab - dac - dcb;
            let symmetry = (dab - dba).abs();
            let nonneg = -dab;
            let identity = metric_d((*a).into(), (*a).into()).expect("sample in E*");
            // vanishing distance must pin equal points
            let separating = if dab == 0.0 && a != b { 1.0 } else { 0.0 };
            triangle.max(symmetry).max(nonneg).max(identity).max(separating)
        })
        .collect();
    let mut check = Check::new(
        "disk.metric_axioms",
        "D is a distance on E*: zero exactly on the diagonal, symmetric, triangle inequality",
        TOL_CLOSED_FORM,
    );
    check.record_batch(&slacks, |i| format!("triple {:?}", triples[i]));
    Ok(check.finish())
}

fn sandwich(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "disk.sandwich");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let d = metric_d((*a).into(), (*b).into()).expect("sample in E*");
            let dp = metric_d_prime((*a).into(), (*b).into()).expect("sample in E*");
            (2.0 / PI * dp - d).max(d - dp)
        })
        .collect();
    let mut check = Check::new(
        "disk.sandwich",
        "(2/pi) D' <= D <= D' on E*",
        TOL_CLOSED_FORM,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn lower_comparability(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "disk.lower_comparability");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let d = metric_d((*a).into(), (*b).into()).expect("sample in E*");
            let h = hyp_dist_punctured_disk((*a).into(), (*b).into()).expect("sample in E*");
            4.0 / PI * h - d
        })
        .collect();
    let mut check = Check::new(
        "disk.lower_comparability",
        "(4/pi) h_{D*} <= D on E*",
        TOL_CLOSED_FORM,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn stronger_bound(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "disk.stronger_bound");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let dp = metric_d_prime((*a).into(), (*b).into()).expect("sample in E*");
            let h = hyp_dist_punctured_disk((*a).into(), (*b).into()).expect("sample in E*");
            2.0 * h - dp
        })
        .collect();
    let mut check = Check::new(
        "disk.stronger_bound",
        "2 h_{D*} <= D' on E*",
        TOL_CLOSED_FORM,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn sharpness(_seed: u64) -> Result<CheckRecord> {
    // ratio h/D on the antipodal family: (tau/2) arth(pi / sqrt(pi^2 + 4 tau^2))
    let ratio = |tau: f64| -> Result<f64> {
        Ok(tau / 2.0 * arth(PI / (PI * PI + 4.0 * tau * tau).sqrt())?)
    };
    let mut check = Check::new(
        "disk.sharpness",
        "h/D on antipodal pairs increases to pi/4; within 1e-4 at tau = 100",
        1e-4,
    );
    let mut prev = f64::NEG_INFINITY;
    for k in 1..=100 {
        let tau = k as f64;
        let r = ratio(tau)?;
        // monotonicity slack: positive when the sequence fails to increase
        check.record(prev - r, || format!("tau = {tau}"));
        prev = r;
    }
    let r100 = ratio(100.0)?;
    check.record((r100 - PI / 4.0).abs(), || "limit gap at tau = 100".into());
    Ok(check.finish())
}

fn geodesic_containment(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "disk.geodesic_containment");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_e_star(&mut rng), sample_e_star(&mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let (lo, hi) = geodesic_annulus((*a).into(), (*b).into()).expect("sample in E*");
            let trace = trace_geodesic_disk((*a).into(), (*b).into(), 512).expect("trace");
            trace
                .iter()
                .map(|z| (lo - z.norm()).max(z.norm() - hi))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let mut check = Check::new(
        "disk.geodesic_containment",
        "traced geodesics stay inside the annulus e^{-pi delta}|z1| <= |z| <= |z2|",
        1e-9,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}
