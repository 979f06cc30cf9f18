//! Puncture configurations on the sphere: normalisation, the derived radii
//! and regions, and the piecewise distances built from them.
//!
//! A configuration is a list of punctures `a_1, ..., a_n` (n >= 3) with
//! `a_1 = 0`, `a_n = infinity`, and 1 among the punctures. Around each
//! finite puncture sits the closed disk `E_j` of radius `rho_j =
//! rho~_j / e`, where `rho~_j` is the distance to the nearest other finite
//! puncture; around infinity sits `E_n = {|w| >= rho_n}` with `rho_n =
//! e rho~_n` and `rho~_n` the largest finite puncture modulus. The disks
//! are pairwise disjoint with a definite gap, and the leftover set W is the
//! core of the configuration.

mod constants;
mod distance;

pub use constants::{comparability_constants, ComparabilityConstants};
pub use distance::{dist_cstar, dist_dx, dist_ex, metric_dj, segment_circle_crossing};

use num_complex::Complex64;
use serde::Deserialize;

use crate::complex::ComplexPoint;
use crate::error::{MetricError, Result};

/// Minimal relative gap between the disks, (1 - 1/e - 1/e^2) ~ 0.4968.
pub fn disk_gap_factor() -> f64 {
    1.0 - (-1.0f64).exp() - (-2.0f64).exp()
}

/// A Moebius transformation of the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MoebiusMap {
    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.b.norm() == 0.0
            && self.c.norm() == 0.0
            && self.a == self.d
            && self.a.norm() > 0.0
    }

    pub fn apply(&self, w: ComplexPoint) -> ComplexPoint {
        match w {
            ComplexPoint::Infinity => {
                if self.c.norm() == 0.0 {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite(self.a / self.c)
                }
            }
            ComplexPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }
}

/// Region membership of a point: inside the disk around puncture `j`
/// (0-based index into the puncture list) or in the core W.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    NearPuncture(usize),
    Core,
}

/// A normalised puncture configuration with its derived radii.
#[derive(Debug, Clone, PartialEq)]
pub struct PunctureConfiguration {
    punctures: Vec<ComplexPoint>,
    rho_tilde: Vec<f64>,
    rho: Vec<f64>,
}

fn radii_of(finite: &[Complex64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = finite.len();
    let mut rho_tilde = Vec::with_capacity(m + 1);
    for j in 0..m {
        let mut nearest = f64::INFINITY;
        for k in 0..m {
            if k != j {
                nearest = nearest.min((finite[k] - finite[j]).norm());
            }
        }
        rho_tilde.push(nearest);
    }
    // outer radius: largest modulus among the finite punctures other than 0
    let outer = finite
        .iter()
        .skip(1)
        .map(|a| a.norm())
        .fold(0.0f64, f64::max);
    rho_tilde.push(outer);
    let e = std::f64::consts::E;
    let mut rho: Vec<f64> = rho_tilde[..m].iter().map(|rt| rt / e).collect();
    rho.push(e * outer);
    Ok((rho_tilde, rho))
}

impl PunctureConfiguration {
    /// Build a configuration from an already normalised puncture list:
    /// the first entry must be 0, the last infinity, some entry 1, all
    /// entries pairwise distinct.
    pub fn new(punctures: Vec<ComplexPoint>) -> Result<Self> {
        let n = punctures.len();
        if n < 3 {
            return Err(MetricError::domain("need at least three punctures"));
        }
        if punctures[n - 1] != ComplexPoint::Infinity {
            return Err(MetricError::domain("the last puncture must be infinity"));
        }
        let mut finite = Vec::with_capacity(n - 1);
        for p in &punctures[..n - 1] {
            finite.push(p.finite().map_err(|_| {
                MetricError::domain("only the last puncture may be infinity")
            })?);
        }
        if finite[0] != Complex64::new(0.0, 0.0) {
            return Err(MetricError::domain("the first puncture must be 0"));
        }
        if !finite.contains(&Complex64::new(1.0, 0.0)) {
            return Err(MetricError::domain("one puncture must equal 1"));
        }
        for j in 0..finite.len() {
            for k in (j + 1)..finite.len() {
                if finite[j] == finite[k] {
                    return Err(MetricError::domain("punctures must be pairwise distinct"));
                }
            }
        }
        let (rho_tilde, rho) = radii_of(&finite)?;
        let cfg = PunctureConfiguration { punctures, rho_tilde, rho };
        cfg.check_invariants()?;
        Ok(cfg)
    }

    /// Structural facts the radii definitions guarantee; violations can
    /// only come from rounding and are treated as domain errors.
    fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let slack = 1e-12;
        for j in 1..n - 1 {
            let aj = self.punctures[j].finite()?.norm();
            if std::f64::consts::E * self.rho[j] > aj * (1.0 + slack) {
                return Err(MetricError::domain(format!(
                    "radius invariant e rho_{j} <= |a_{j}| violated"
                )));
            }
        }
        // outer radius dominates: rho_n >= e (since 1 is a puncture)
        if self.rho[n - 1] < std::f64::consts::E * (1.0 - slack) {
            return Err(MetricError::domain("outer radius below e"));
        }
        // pairwise disk separation with the definite gap of the construction
        let gap = disk_gap_factor();
        for j in 0..n - 1 {
            for k in 0..n - 1 {
                if j == k {
                    continue;
                }
                let aj = self.punctures[j].finite()?;
                let ak = self.punctures[k].finite()?;
                let dist = (aj - ak).norm() - self.rho[j] - self.rho[k];
                if dist < gap * self.rho[j] * (1.0 - 1e-9) {
                    return Err(MetricError::domain(format!(
                        "disks around punctures {j} and {k} too close"
                    )));
                }
            }
            // separation from the outer region
            let aj = self.punctures[j].finite()?.norm();
            let dist = self.rho[n - 1] - aj - self.rho[j];
            if dist < gap * self.rho[j] * (1.0 - 1e-9) {
                return Err(MetricError::domain(format!(
                    "disk around puncture {j} too close to the outer region"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.punctures.len()
    }

    pub fn punctures(&self) -> &[ComplexPoint] {
        &self.punctures
    }

    pub fn puncture(&self, j: usize) -> ComplexPoint {
        self.punctures[j]
    }

    /// The derived radii (rho~_j, rho_j) in puncture order.
    pub fn radii(&self) -> (&[f64], &[f64]) {
        (&self.rho_tilde, &self.rho)
    }

    pub fn rho(&self, j: usize) -> f64 {
        self.rho[j]
    }

    pub fn rho_tilde(&self, j: usize) -> f64 {
        self.rho_tilde[j]
    }

    /// Region membership of a point of the configuration's domain. Points
    /// within a few ulps of a boundary circle count as inside the closed
    /// disk, so that boundary parameterisations classify consistently.
    pub fn classify(&self, w: ComplexPoint) -> Result<RegionTag> {
        const BOUNDARY_SLACK: f64 = 4e-12;
        let n = self.n();
        if w == ComplexPoint::Infinity {
            return Err(MetricError::domain("infinity is a puncture"));
        }
        let wc = w.finite()?;
        for (j, p) in self.punctures[..n - 1].iter().enumerate() {
            let a = p.finite()?;
            if wc == a {
                return Err(MetricError::domain(format!("w equals puncture {j}")));
            }
            if (wc - a).norm() <= self.rho[j] * (1.0 + BOUNDARY_SLACK) {
                return Ok(RegionTag::NearPuncture(j));
            }
        }
        if wc.norm() >= self.rho[n - 1] * (1.0 - BOUNDARY_SLACK) {
            return Ok(RegionTag::NearPuncture(n - 1));
        }
        Ok(RegionTag::Core)
    }

    /// Parse the JSON configuration format
    /// `{"punctures": [[re, im], ..., "inf"]}` and normalise it.
    pub fn from_json_str(text: &str) -> Result<(Self, MoebiusMap)> {
        #[derive(Deserialize)]
        struct File {
            punctures: Vec<Entry>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Finite([f64; 2]),
            Symbol(String),
        }
        let parsed: File = serde_json::from_str(text)
            .map_err(|e| MetricError::domain(format!("config parse failure: {e}")))?;
        let mut points = Vec::with_capacity(parsed.punctures.len());
        for entry in parsed.punctures {
            match entry {
                Entry::Finite([re, im]) => points.push(ComplexPoint::new(re, im)),
                Entry::Symbol(s) if s == "inf" => points.push(ComplexPoint::Infinity),
                Entry::Symbol(s) => {
                    return Err(MetricError::domain(format!("unknown puncture symbol {s:?}")))
                }
            }
        }
        normalize(&points)
    }
}

fn lex_key(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

fn lex_less(a: Complex64, b: Complex64) -> bool {
    lex_key(a) < lex_key(b)
}

/// Normalise an arbitrary list of at least three distinct sphere points:
/// designate punctures to send to infinity, 0 and 1, build the Moebius map,
/// and return the mapped configuration (input order preserved, with the
/// image of 0 first and infinity last) together with the map.
///
/// Designation rule: a configuration already containing 0, 1 and infinity
/// is kept as is (identity map). Otherwise the point at infinity, or the
/// finite puncture of largest modulus, goes to infinity; among the rest the
/// closest pair goes to (0, 1), the lexicographically smaller of the two
/// to 0.
pub fn normalize(points: &[ComplexPoint]) -> Result<(PunctureConfiguration, MoebiusMap)> {
    let n = points.len();
    if n < 3 {
        return Err(MetricError::domain("need at least three punctures"));
    }
    for j in 0..n {
        for k in (j + 1)..n {
            if points[j] == points[k] {
                return Err(MetricError::domain("punctures must be pairwise distinct"));
            }
        }
    }

    let zero = ComplexPoint::new(0.0, 0.0);
    let one = ComplexPoint::new(1.0, 0.0);
    let already = points.contains(&zero) && points.contains(&one) && points.contains(&ComplexPoint::Infinity);
    let map = if already {
        MoebiusMap::identity()
    } else {
        // point sent to infinity
        let p_inf = if points.contains(&ComplexPoint::Infinity) {
            ComplexPoint::Infinity
        } else {
            let mut best = points[0].finite()?;
            for p in &points[1..] {
                let z = p.finite()?;
                if z.norm() > best.norm() || (z.norm() == best.norm() && lex_less(z, best)) {
                    best = z;
                }
            }
            ComplexPoint::Finite(best)
        };
        // closest remaining pair -> (0, 1)
        let rest: Vec<Complex64> = points
            .iter()
            .filter(|p| **p != p_inf)
            .map(|p| p.finite())
            .collect::<Result<_>>()?;
        let mut pair = (rest[0], rest[1]);
        let mut pair_dist = f64::INFINITY;
        for j in 0..rest.len() {
            for k in (j + 1)..rest.len() {
                let (p, q) = if lex_less(rest[j], rest[k]) {
                    (rest[j], rest[k])
                } else {
                    (rest[k], rest[j])
                };
                let d = (p - q).norm();
                let better = d < pair_dist
                    || (d == pair_dist && lex_key(p) < lex_key(pair.0))
                    || (d == pair_dist && lex_key(p) == lex_key(pair.0) && lex_key(q) < lex_key(pair.1));
                if better {
                    pair = (p, q);
                    pair_dist = d;
                }
            }
        }
        let (p0, p1) = pair;
        match p_inf {
            ComplexPoint::Infinity => {
                // affine: w -> (w - p0) / (p1 - p0)
                let den = p1 - p0;
                MoebiusMap {
                    a: Complex64::new(1.0, 0.0) / den,
                    b: -p0 / den,
                    c: Complex64::new(0.0, 0.0),
                    d: Complex64::new(1.0, 0.0),
                }
            }
            ComplexPoint::Finite(pi) => {
                // cross ratio sending p0 -> 0, p1 -> 1, pi -> infinity
                let k = (p1 - pi) / (p1 - p0);
                MoebiusMap {
                    a: k,
                    b: -k * p0,
                    c: Complex64::new(1.0, 0.0),
                    d: -pi,
                }
            }
        }
    };

    let mapped: Vec<ComplexPoint> = points.iter().map(|p| map.apply(*p)).collect();

    // reindex: image of 0 first, infinity last, everything else in order
    let mut ordered = Vec::with_capacity(n);
    let zero_at = mapped
        .iter()
        .position(|p| *p == zero)
        .ok_or_else(|| MetricError::numeric("normalisation lost the origin"))?;
    ordered.push(mapped[zero_at]);
    for (i, p) in mapped.iter().enumerate() {
        if i != zero_at && !p.is_infinity() {
            ordered.push(*p);
        }
    }
    ordered.push(ComplexPoint::Infinity);

    Ok((PunctureConfiguration::new(ordered)?, map))
}
