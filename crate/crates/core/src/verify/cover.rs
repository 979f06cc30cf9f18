//! Checks for the covering map Q and the explicit constants derived from it.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::sampling::rng_for;
use super::{Check, CheckRecord, TOL_CLOSED_FORM};
use crate::error::Result;
use crate::modular_cover::{
    c0, hempel_density_lower, k_of_rho, q_eval, q_growth_bounds, q_taylor_coefficients, rho_max,
    univalence_radius,
};

pub(super) fn run(seed: u64, samples: Option<u64>) -> Result<Vec<CheckRecord>> {
    let base = samples.unwrap_or(1000) as usize;
    Ok(vec![
        constants()?,
        special_value()?,
        functional_identity(seed, base)?,
        representation_agreement(seed, base)?,
        taylor_coefficients()?,
        growth_envelope(seed, base)?,
        univalence_evidence(seed, base)?,
        hempel_monotone()?,
        k_monotone()?,
    ])
}

fn q_at(z: Complex64) -> Complex64 {
    q_eval(z.into(), 1e-13)
        .expect("evaluation inside the disk")
        .finite()
        .expect("finite value")
}

fn constants() -> Result<CheckRecord> {
    let mut check = Check::new(
        "cover.constants",
        "r0, mu0, eta0, delta0, K0, e^{K0}, C0, M0 reproduce their printed values",
        1.0, // slack is measured in units of each constant's tolerance
    );
    let cc = k_of_rho((-1.0f64).exp())?;
    let m0 = 4.0 * c0() + 4.0 + 2.0 * cc.k;
    let targets: [(&str, f64, f64, f64); 8] = [
        ("r0", cc.r, 0.0301441, 1e-6),
        ("mu0", cc.mu, 0.145007, 1e-5),
        ("eta0", cc.eta1, 1.11465, 1e-4),
        ("delta0", cc.delta, 0.107007, 1e-5),
        ("K0", cc.k, 0.846666, 1e-5),
        ("exp(K0)", cc.k.exp(), 2.33186, 1e-4),
        ("C0", c0(), 4.37688, 1e-5),
        ("M0", m0, 23.2008, 1e-3),
    ];
    for (name, got, want, tol) in targets {
        check.record((got - want).abs() / tol, || format!("{name}: {got} vs {want}"));
    }
    Ok(check.finish())
}

fn special_value() -> Result<CheckRecord> {
    let mut check = Check::new(
        "cover.special_value",
        "Q(i e^{-pi/2}) = 2",
        1e-9,
    );
    let z = Complex64::new(0.0, univalence_radius());
    check.record((q_at(z) - Complex64::new(2.0, 0.0)).norm(), || "Q(i e^{-pi/2})".into());
    // the sharpness pair must agree within 1e-10; scaled to this check's
    // 1e-9 tolerance
    check.record(10.0 * (q_at(z) - q_at(-z)).norm(), || {
        "sharpness pair Q(i e^{-pi/2}) = Q(-i e^{-pi/2})".into()
    });
    Ok(check.finish())
}

fn sample_half_disk(rng: &mut rand_chacha::ChaCha8Rng) -> Complex64 {
    let r = rng.gen_range(0.0f64..0.5);
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, th)
}

fn functional_identity(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "cover.functional_identity");
    let pts: Vec<Complex64> = (0..n).map(|_| sample_half_disk(&mut rng)).collect();
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|z| {
            let q = q_at(*z);
            let qm = q_at(-*z);
            // cross-multiplied residual: the division form is
            // ill-conditioned where Q(z) is close to 1
            (qm * (q - 1.0) - q).norm() / (1.0 + qm.norm() * (1.0 + q.norm()))
        })
        .collect();
    let mut check = Check::new(
        "cover.functional_identity",
        "Q(-z) (Q(z)-1) = Q(z) for |z| <= 1/2",
        1e-10,
    );
    check.record_batch(&slacks, |i| format!("z = {}", pts[i]));
    Ok(check.finish())
}

fn representation_agreement(seed: u64, n: usize) -> Result<CheckRecord> {
    // q_eval already cross-checks the theta quotient against the product
    // form for |z| <= 1/2 and fails loudly on disagreement; sampling it is
    // the agreement check.
    let mut rng = rng_for(seed, "cover.representation_agreement");
    let pts: Vec<Complex64> = (0..n).map(|_| sample_half_disk(&mut rng)).collect();
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|z| match q_eval((*z).into(), 1e-12) {
            Ok(_) => 0.0,
            Err(_) => 1.0,
        })
        .collect();
    let mut check = Check::new(
        "cover.representation_agreement",
        "theta-quotient and product forms of Q agree for |z| <= 1/2",
        0.0,
    );
    check.record_batch(&slacks, |i| format!("z = {}", pts[i]));
    Ok(check.finish())
}

fn taylor_coefficients() -> Result<CheckRecord> {
    let mut check = Check::new(
        "cover.taylor",
        "Q = 16(z - 8 z^2 + 44 z^3 - 192 z^4 + 718 z^5 - ...)",
        1e-4,
    );
    let expect = [16.0, -128.0, 704.0, -3072.0, 11488.0];
    let got = q_taylor_coefficients(5)?;
    for ((g, e), k) in got.iter().zip(expect.iter()).zip(1..) {
        check.record(((g - e) / e).abs(), || format!("coefficient of z^{k}: {g} vs {e}"));
    }
    Ok(check.finish())
}

fn growth_envelope(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "cover.growth_envelope");
    let pts: Vec<Complex64> = (0..n)
        .map(|_| {
            let r = rng.gen_range(1e-3..univalence_radius() * 0.9999);
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    let slacks: Vec<f64> = pts
        .par_iter()
        .map(|z| {
            let (lo, hi) = q_growth_bounds(z.norm()).expect("radius in range");
            let q = q_at(*z).norm();
            (lo - q).max(q - hi)
        })
        .collect();
    let mut check = Check::new(
        "cover.growth_envelope",
        "16r/(1+r e^{pi/2})^2 <= |Q| <= 16r/(1-r e^{pi/2})^2",
        TOL_CLOSED_FORM,
    );
    check.record_batch(&slacks, |i| format!("z = {}", pts[i]));
    Ok(check.finish())
}

fn univalence_evidence(seed: u64, n: usize) -> Result<CheckRecord> {
    let mut rng = rng_for(seed, "cover.univalence");
    let radius = univalence_radius() * 0.9999;
    let pairs: Vec<[Complex64; 2]> = (0..n)
        .map(|_| {
            let mut p = [Complex64::default(); 2];
            for q in &mut p {
                let r = rng.gen_range(0.0..radius);
                *q = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            }
            p
        })
        .collect();
    let slacks: Vec<f64> = pairs
        .par_iter()
        .map(|[z1, z2]| {
            if (z1 - z2).norm() <= 1e-6 {
                return 0.0;
            }
            // distinct arguments must give distinct values
            let gap = (q_at(*z1) - q_at(*z2)).norm();
            if gap > 1e-12 {
                0.0
            } else {
                1e-12 - gap
            }
        })
        .collect();
    let mut check = Check::new(
        "cover.univalence",
        "Q separates points of |z| < e^{-pi/2}",
        0.0,
    );
    check.record_batch(&slacks, |i| format!("pair {:?}", pairs[i]));
    Ok(check.finish())
}

fn hempel_monotone() -> Result<CheckRecord> {
    let mut check = Check::new(
        "cover.hempel_monotone",
        "1/(2|z|(C0+|log|z||)) decreases in |z|",
        0.0,
    );
    let mut prev = f64::INFINITY;
    for k in 1..400 {
        let r = 0.02 * k as f64;
        if (r - 1.0).abs() < 1e-12 {
            continue;
        }
        let v = hempel_density_lower(Complex64::new(r, 0.0).into())?;
        check.record(v - prev, || format!("|z| = {r}"));
        prev = v;
    }
    Ok(check.finish())
}

fn k_monotone() -> Result<CheckRecord> {
    let mut check = Check::new(
        "cover.k_monotone",
        "K(rho) increases on (0, 4 e^{-pi/2})",
        0.0,
    );
    let mut prev = f64::NEG_INFINITY;
    for k in 1..200 {
        let rho = rho_max() * k as f64 / 201.0;
        let cc = k_of_rho(rho)?;
        check.record(prev - cc.k, || format!("rho = {rho}"));
        prev = cc.k;
    }
    Ok(check.finish())
}
