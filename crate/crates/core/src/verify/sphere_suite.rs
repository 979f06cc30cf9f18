//! Checks for the punctured-sphere distances: metric axioms for d_X, case
//! consistency at region boundaries, the two-sided comparability with the
//! hyperbolic distance on the three-puncture configuration, covariance
//! under normalisation, and the triangle inequality for the two-puncture
//! analogue.

use num_complex::Complex64;
use rayon::prelude::*;

use super::sampling::{rng_for, sample_sphere_point};
use super::{Check, CheckRecord, TOL_ORACLE};
use crate::complex::ComplexPoint;
use crate::error::Result;
use crate::sphere::{
    comparability_constants, dist_cstar, dist_dx, dist_ex, metric_dj, normalize,
    PunctureConfiguration, RegionTag,
};
use crate::thrice_punctured::hyp_dist_thrice_punctured;

const MIN_TOL: f64 = 1e-7;
const ORACLE_TOL: f64 = 1e-8;

fn standard() -> PunctureConfiguration {
    PunctureConfiguration::new(vec![
        ComplexPoint::new(0.0, 0.0),
        ComplexPoint::new(1.0, 0.0),
        ComplexPoint::Infinity,
    ])
    .expect("standard configuration")
}

fn four_punctures() -> PunctureConfiguration {
    PunctureConfiguration::new(vec![
        ComplexPoint::new(0.0, 0.0),
        ComplexPoint::new(1.0, 0.0),
        ComplexPoint::new(2.0, 2.0),
        ComplexPoint::Infinity,
    ])
    .expect("four-puncture configuration")
}

pub(super) fn run(seed: u64, samples: Option<u64>) -> Result<Vec<CheckRecord>> {
    let base = samples.unwrap_or(10_000) as usize;
    Ok(vec![
        dx_metric_axioms(seed, base, &standard(), "sphere.dx_axioms_n3")?,
        dx_metric_axioms(seed, base, &four_punctures(), "sphere.dx_axioms_n4")?,
        dx_below_ex(seed, base.min(2000))?,
        case_consistency(seed, base.min(200))?,
        comparability(seed, (base / 10).clamp(50, 1000))?,
        scaling_covariance(seed, base.min(200))?,
        ex_degenerate()?,
        cstar_triangle(seed, base)?,
    ])
}

fn dx_metric_axioms(
    seed: u64,
    n: usize,
    cfg: &PunctureConfiguration,
    id: &'static str,
) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, id);
    let triples: Vec<[Complex64; 3]> = (0..n)
        .map(|_| {
            [
                sample_sphere_point(cfg, &mut rng),
                sample_sphere_point(cfg, &mut rng),
                sample_sphere_point(cfg, &mut rng),
            ]
        })
        .collect();
    let slacks: Vec<f64> = triples
        .par_iter()
        .map(|[a, b, c]| {
            let dab = dist_dx(cfg, (*a).into(), (*b).into(), MIN_TOL).expect("d_X");
            let dba = dist_dx(cfg, (*b).into(), (*a).into(), MIN_TOL).expect("d_X");
            let dac = dist_dx(cfg, (*a).into(), (*c).into(), MIN_TOL).expect("d_X");
            let dcb = dist_dx(cfg, (*c).into(), (*b).into(), MIN_TOL).expect("d_X");
            // symmetry must hold exactly by construction
            let symmetry = if dab == dba { 0.0 } else { f64::INFINITY };
            let triangle = dab - dac - dcb;
            symmetry.max(triangle).max(-dab)
        })
        .collect();
    let mut check = Check::new(
        id,
        "d_X is a distance: exact symmetry, triangle inequality",
        3.0 * MIN_TOL,
    );
    check.record_batch(&slacks, |i| format!("triple {:?}", triples[i]));
    Ok(check.finish())
}

fn dx_below_ex(seed: u64, n: usize) -> Result<CheckRecord> {
    let cfg = four_punctures();
    let mut rng = rng_for(seed, "sphere.dx_below_ex");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_sphere_point(&cfg, &mut rng), sample_sphere_point(&cfg, &mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let d = dist_dx(&cfg, (*a).into(), (*b).into(), MIN_TOL).expect("d_X");
            let e = dist_ex(&cfg, (*a).into(), (*b).into()).expect("e_X");
            d - e
        })
        .collect();
    let mut check = Check::new("sphere.dx_below_ex", "d_X <= e_X", 1e-12);
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn case_consistency(seed: u64, n: usize) -> Result<CheckRecord> {
    // as w2 approaches the boundary of region j from the core, the
    // one-boundary infimum converges to the in-region formula
    let cfg = standard();
    let mut rng = rng_for(seed, "sphere.case_consistency");
    let mut check = Check::new(
        "sphere.case_consistency",
        "boundary cases of d_X agree in the limit",
        1e-5,
    );
    for _ in 0..n {
        use rand::Rng;
        let j = rng.gen_range(0usize..2);
        let a = cfg.puncture(j).finite()?;
        let w1 = a + Complex64::from_polar(
            cfg.rho(j) * rng.gen_range(0.05..0.8),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let eps = 1e-7;
        let w2_out = a + Complex64::from_polar(cfg.rho(j) * (1.0 + eps), angle);
        let w2_on = a + Complex64::from_polar(cfg.rho(j), angle);
        if cfg.classify(w2_out.into())? != RegionTag::Core {
            continue;
        }
        let outside = dist_dx(&cfg, w1.into(), w2_out.into(), 1e-9)?;
        let inside = metric_dj(&cfg, j, w1.into(), w2_on.into())?;
        check.record((outside - inside).abs(), || {
            format!("w1 = {w1}, boundary angle {angle} at region {j}")
        });
    }
    Ok(check.finish())
}

fn comparability(seed: u64, n: usize) -> Result<CheckRecord> {
    // N1 h <= d_X <= e_X <= N2 h on the three-puncture configuration,
    // where h comes from the oracle
    let cfg = standard();
    let cc = comparability_constants(&cfg);
    let mut rng = rng_for(seed, "sphere.comparability");
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| [sample_sphere_point(&cfg, &mut rng), sample_sphere_point(&cfg, &mut rng)])
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[a, b]| {
            let h = hyp_dist_thrice_punctured((*a).into(), (*b).into(), ORACLE_TOL)
                .expect("oracle");
            assert!(h.certified);
            let d = dist_dx(&cfg, (*a).into(), (*b).into(), MIN_TOL).expect("d_X");
            let e = dist_ex(&cfg, (*a).into(), (*b).into()).expect("e_X");
            let lower = cc.n1 * h.value - d;
            let middle = d - e;
            let upper = e - cc.n2 * h.value;
            lower.max(middle).max(upper)
        })
        .collect();
    let mut check = Check::new(
        "sphere.comparability",
        "N1 h <= d_X <= e_X <= N2 h on the three-puncture configuration",
        TOL_ORACLE,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn scaling_covariance(seed: u64, n: usize) -> Result<CheckRecord> {
    // shifting the configuration and mapping the points through the
    // normalisation reproduces the distances
    let cfg = standard();
    let shift = Complex64::new(0.7, 0.3);
    let shifted: Vec<ComplexPoint> = vec![
        ComplexPoint::Finite(shift),
        ComplexPoint::Finite(Complex64::new(1.0, 0.0) + shift),
        ComplexPoint::Infinity,
    ];
    let (cfg_shifted, map) = normalize(&shifted)?;
    let mut rng = rng_for(seed, "sphere.scaling_covariance");
    let mut check = Check::new(
        "sphere.scaling_covariance",
        "d_X and e_X are reproduced through the normalisation map",
        1e-7,
    );
    for _ in 0..n {
        let a = sample_sphere_point(&cfg, &mut rng);
        let b = sample_sphere_point(&cfg, &mut rng);
        let d_direct = dist_dx(&cfg, a.into(), b.into(), 1e-9)?;
        let e_direct = dist_ex(&cfg, a.into(), b.into())?;
        // move the points to the shifted chart, then map them back through
        // the normalisation
        let a_shift = map.apply(ComplexPoint::Finite(a + shift));
        let b_shift = map.apply(ComplexPoint::Finite(b + shift));
        let d_mapped = dist_dx(&cfg_shifted, a_shift, b_shift, 1e-9)?;
        let e_mapped = dist_ex(&cfg_shifted, a_shift, b_shift)?;
        check.record(
            (d_direct - d_mapped).abs().max((e_direct - e_mapped).abs()),
            || format!("pair ({a}, {b})"),
        );
    }
    Ok(check.finish())
}

fn ex_degenerate() -> Result<CheckRecord> {
    // segments through a third disk, and through a puncture, still produce
    // the finite three-term sum
    let cfg = PunctureConfiguration::new(vec![
        ComplexPoint::new(0.0, 0.0),
        ComplexPoint::new(1.0, 0.0),
        ComplexPoint::new(0.5, 0.0),
        ComplexPoint::Infinity,
    ])?;
    let mut check = Check::new(
        "sphere.ex_degenerate",
        "e_X stays finite on segments grazing other disks or a puncture",
        1e-12,
    );
    let a = ComplexPoint::new(0.05, 0.0);
    let b = ComplexPoint::new(0.93, 0.0);
    let v = dist_ex(&cfg, a, b)?;
    check.record(if v.is_finite() && v > 0.0 { 0.0 } else { 1.0 }, || {
        format!("segment through the middle puncture: {v}")
    });
    let d = dist_dx(&cfg, a, b, 1e-9)?;
    check.record(d - v, || format!("d_X = {d} above e_X = {v}"));
    // grazing without hitting the puncture
    let a2 = ComplexPoint::new(0.05, 0.02);
    let b2 = ComplexPoint::new(0.93, 0.02);
    let v2 = dist_ex(&cfg, a2, b2)?;
    check.record(if v2.is_finite() && v2 > 0.0 { 0.0 } else { 1.0 }, || {
        format!("grazing segment: {v2}")
    });
    Ok(check.finish())
}

fn cstar_triangle(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "sphere.cstar_triangle");
    let triples: Vec<[Complex64; 3]> = (0..n)
        .map(|_| {
            use rand::Rng;
            let mut p = [Complex64::default(); 3];
            for q in &mut p {
                let logr = rng.gen_range(-1.5f64..1.5);
                *q = Complex64::from_polar(logr.exp(), rng.gen_range(0.0..std::f64::consts::TAU));
            }
            p
        })
        .collect();
    let slacks: Vec<f64> = triples
        .par_iter()
        .map(|[a, b, c]| {
            let dab = dist_cstar((*a).into(), (*b).into(), 1e-9).expect("d on C*");
            let dba = dist_cstar((*b).into(), (*a).into(), 1e-9).expect("d on C*");
            let dac = dist_cstar((*a).into(), (*c).into(), 1e-9).expect("d on C*");
            let dcb = dist_cstar((*c).into(), (*b).into(), 1e-9).expect("d on C*");
            let symmetry = if dab == dba { 0.0 } else { f64::INFINITY };
            (dab - dac - dcb).max(symmetry).max(-dab)
        })
        .collect();
    let mut check = Check::new(
        "sphere.cstar_triangle",
        "the two-puncture distance satisfies the metric axioms",
        3e-9,
    );
    check.record_batch(&slacks, |i| format!("triple {:?}", triples[i]));
    Ok(check.finish())
}
