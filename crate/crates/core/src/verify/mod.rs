//! Seeded verification suites and their machine-readable reports.
//!
//! Each suite runs a batch of checks; a check draws a deterministic sample
//! set from its own seeded generator, measures the worst slack of an
//! inequality or identity over the samples, and passes when that slack
//! stays at or below its tolerance. Reports are reproducible: the same
//! seed, sample count and tolerances give the same numeric fields.

mod cover;
mod disk;
mod oracle;
mod sampling;
mod sphere_suite;

use serde::Serialize;
use std::time::Instant;

use crate::error::{MetricError, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PUNCT_METRICS_THREADS";

/// Default closed-form tolerance (well-conditioned elementary formulas).
pub const TOL_CLOSED_FORM: f64 = 1e-12;
/// Default tolerance for oracle-backed inequalities.
pub const TOL_ORACLE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Disk,
    Cover,
    Oracle,
    Sphere,
    All,
}

impl SuiteKind {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Disk => "disk",
            SuiteKind::Cover => "cover",
            SuiteKind::Oracle => "oracle",
            SuiteKind::Sphere => "sphere",
            SuiteKind::All => "all",
        }
    }
}

impl std::str::FromStr for SuiteKind {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk" => Ok(SuiteKind::Disk),
            "cover" => Ok(SuiteKind::Cover),
            "oracle" => Ok(SuiteKind::Oracle),
            "sphere" => Ok(SuiteKind::Sphere),
            "all" => Ok(SuiteKind::All),
            other => Err(MetricError::domain(format!("unknown suite {other:?}"))),
        }
    }
}

/// One worst offender of a check, kept for the debugging CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Offender {
    pub slack: f64,
    pub detail: String,
}

/// Result of a single check.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub samples: u64,
    pub worst_slack: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip)]
    pub offenders: Vec<Offender>,
}

/// The report written by the `verify` subcommand.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    /// The sample-count override; checks use their own defaults when absent.
    pub samples: Option<u64>,
    pub tol_closed_form: f64,
    pub tol_oracle: f64,
    pub passed: bool,
    pub wall_time_ms: u64,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// CSV of the worst offenders (up to ten per check), for debugging.
    pub fn offenders_csv(&self) -> String {
        let mut out = String::from("check_id,rank,slack,detail\n");
        for check in &self.checks {
            for (rank, off) in check.offenders.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{:e},\"{}\"\n",
                    check.id,
                    rank + 1,
                    off.slack,
                    off.detail.replace('"', "'")
                ));
            }
        }
        out
    }
}

/// Collects sample slacks for one check and keeps the ten worst.
pub(crate) struct Check {
    id: &'static str,
    anchor: &'static str,
    tolerance: f64,
    samples: u64,
    worst: f64,
    offenders: Vec<Offender>,
}

impl Check {
    pub(crate) fn new(id: &'static str, anchor: &'static str, tolerance: f64) -> Self {
        Check {
            id,
            anchor,
            tolerance,
            samples: 0,
            worst: f64::NEG_INFINITY,
            offenders: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, slack: f64, detail: impl FnOnce() -> String) {
        self.samples += 1;
        if slack > self.worst {
            self.worst = slack;
        }
        let keep = self.offenders.len() < 10
            || slack > self.offenders.last().map(|o| o.slack).unwrap_or(f64::NEG_INFINITY);
        if keep {
            self.offenders.push(Offender { slack, detail: detail() });
            self.offenders
                .sort_by(|a, b| b.slack.partial_cmp(&a.slack).expect("finite slacks"));
            self.offenders.truncate(10);
        }
    }

    /// Record a batch of (slack, detail) pairs computed elsewhere
    /// (typically in parallel); aggregation is order-independent.
    pub(crate) fn record_batch(&mut self, slacks: &[f64], detail: impl Fn(usize) -> String) {
        let mut order: Vec<usize> = (0..slacks.len()).collect();
        order.sort_by(|&i, &j| {
            slacks[j]
                .partial_cmp(&slacks[i])
                .expect("finite slacks")
                .then(i.cmp(&j))
        });
        for &i in order.iter().take(10) {
            self.offenders.push(Offender {
                slack: slacks[i],
                detail: detail(i),
            });
        }
        self.offenders
            .sort_by(|a, b| b.slack.partial_cmp(&a.slack).expect("finite slacks"));
        self.offenders.truncate(10);
        self.samples += slacks.len() as u64;
        for &s in slacks {
            if s > self.worst {
                self.worst = s;
            }
        }
    }

    pub(crate) fn finish(self) -> CheckRecord {
        CheckRecord {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            samples: self.samples,
            worst_slack: if self.worst == f64::NEG_INFINITY { 0.0 } else { self.worst },
            tolerance: self.tolerance,
            pass: self.worst <= self.tolerance,
            offenders: self.offenders,
        }
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.trim().parse::<usize>() {
            let cap = n.max(1);
            let avail = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1);
            builder = builder.num_threads(cap.min(avail));
        }
    }
    builder.build().expect("thread pool")
}

/// Run a suite with the given seed. `samples` overrides each check's base
/// sample count (heavyweight checks scale it down, see the suite sources).
pub struct SuiteOutput {
    pub report: VerificationReport,
    pub offenders_csv: String,
}

pub fn run_suite(kind: SuiteKind, seed: u64, samples: Option<u64>) -> Result<SuiteOutput> {
    let start = Instant::now();
    let pool = thread_pool();
    let mut checks = Vec::new();
    pool.install(|| -> Result<()> {
        match kind {
            SuiteKind::Disk => checks.extend(disk::run(seed, samples)?),
            SuiteKind::Cover => checks.extend(cover::run(seed, samples)?),
            SuiteKind::Oracle => checks.extend(oracle::run(seed, samples)?),
            SuiteKind::Sphere => checks.extend(sphere_suite::run(seed, samples)?),
            SuiteKind::All => {
                checks.extend(disk::run(seed, samples)?);
                checks.extend(cover::run(seed, samples)?);
                checks.extend(oracle::run(seed, samples)?);
                checks.extend(sphere_suite::run(seed, samples)?);
            }
        }
        Ok(())
    })?;
    let passed = checks.iter().all(|c| c.pass);
    let report = VerificationReport {
        schema: 1,
        suite: kind.name().to_string(),
        seed,
        samples,
        tol_closed_form: TOL_CLOSED_FORM,
        tol_oracle: TOL_ORACLE,
        passed,
        wall_time_ms: start.elapsed().as_millis() as u64,
        checks,
    };
    let offenders_csv = report.offenders_csv();
    Ok(SuiteOutput { report, offenders_csv })
}
