//! Command-line interface: point distances, constant tables, and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 usage or parse
//! errors, 3 domain errors, 4 numeric errors.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use parse::{format_sig12, parse_point};
use punct_metrics::{
    c0, comparability_constants, dist_cstar, dist_dx, dist_ex, hyp_dist_punctured_disk,
    hyp_dist_thrice_punctured, k_of_rho, metric_d, run_suite, MetricError,
    PunctureConfiguration, SuiteKind,
};

#[derive(Parser)]
#[command(name = "punct-metrics", version, about = "Distances comparable with the hyperbolic distance on punctured disks and spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistKind {
    /// Piecewise sphere distance d_X (requires --config)
    #[value(name = "dX")]
    Dx,
    /// Infimum-free companion e_X (requires --config)
    #[value(name = "eX")]
    Ex,
    /// Hyperbolic distance of the punctured unit disk
    #[value(name = "hDstar")]
    HDstar,
    /// Hyperbolic distance of the twice punctured plane (oracle)
    #[value(name = "hC01")]
    HC01,
    /// The distance D on the bordered punctured disk
    #[value(name = "D")]
    D,
    /// The two-puncture distance on the punctured plane
    #[value(name = "cstar")]
    Cstar,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a distance between two points
    Dist {
        /// Which distance to evaluate
        #[arg(value_enum)]
        kind: DistKind,
        /// First point, e.g. "0.25", "-0.3+0.2i", "inf"
        #[arg(allow_hyphen_values = true)]
        w1: String,
        /// Second point
        #[arg(allow_hyphen_values = true)]
        w2: String,
        /// Puncture configuration file (JSON) for the sphere distances
        #[arg(long)]
        config: Option<PathBuf>,
        /// Tolerance for minimisers and the oracle
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print the explicit constants
    Constants {
        /// Radius parameter rho (default 1/e)
        #[arg(long)]
        rho: Option<f64>,
        /// Optional configuration for the per-configuration constants
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run verification suites and write a JSON report
    Verify {
        /// Suite: disk, cover, oracle, sphere, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Base sample count per check (suite defaults when omitted)
        #[arg(long)]
        samples: Option<u64>,
        /// Report output path (also writes <out>.offenders.csv)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Metric(MetricError),
    ChecksFailed,
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        CliError::Metric(e)
    }
}

fn load_config(path: &PathBuf) -> Result<PunctureConfiguration, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let (cfg, _) = PunctureConfiguration::from_json_str(&text)?;
    Ok(cfg)
}

fn cmd_dist(
    kind: DistKind,
    w1: &str,
    w2: &str,
    config: Option<&PathBuf>,
    tol: f64,
) -> Result<(), CliError> {
    let w1 = parse_point(w1).map_err(CliError::Usage)?;
    let w2 = parse_point(w2).map_err(CliError::Usage)?;
    let value = match kind {
        DistKind::D => metric_d(w1, w2)?,
        DistKind::HDstar => hyp_dist_punctured_disk(w1, w2)?,
        DistKind::Cstar => dist_cstar(w1, w2, tol)?,
        DistKind::HC01 => {
            let d = hyp_dist_thrice_punctured(w1, w2, tol)?;
            if !d.certified {
                eprintln!("note: orbit certificate not attained; value is an upper bound");
            }
            d.value
        }
        DistKind::Dx | DistKind::Ex => {
            let path = config.ok_or_else(|| {
                CliError::Usage("kinds dX and eX require --config".to_string())
            })?;
            let cfg = load_config(path)?;
            match kind {
                DistKind::Dx => dist_dx(&cfg, w1, w2, tol)?,
                _ => dist_ex(&cfg, w1, w2)?,
            }
        }
    };
    println!("{}", format_sig12(value));
    Ok(())
}

fn cmd_constants(rho: Option<f64>, config: Option<&PathBuf>) -> Result<(), CliError> {
    let rho = rho.unwrap_or((-1.0f64).exp());
    let cc = k_of_rho(rho)?;
    println!("rho    = {}", format_sig12(cc.rho));
    println!("r      = {}", format_sig12(cc.r));
    println!("mu     = {}", format_sig12(cc.mu));
    println!("eta1   = {}", format_sig12(cc.eta1));
    println!("delta  = {}", format_sig12(cc.delta));
    println!("K      = {}", format_sig12(cc.k));
    println!("exp(K) = {}", format_sig12(cc.k.exp()));
    let k0 = k_of_rho((-1.0f64).exp())?.k;
    let c0 = c0();
    println!("C0     = {}", format_sig12(c0));
    println!("M1     = {}", format_sig12(2.0 * (c0 + k0 + 1.0)));
    println!("M2     = {}", format_sig12(2.0 * (c0 + 1.0)));
    println!("M0     = {}", format_sig12(4.0 * c0 + 4.0 + 2.0 * k0));
    if let Some(path) = config {
        let cfg = load_config(path)?;
        let cons = comparability_constants(&cfg);
        println!("U1     = {}", format_sig12(cons.u1));
        println!("U2     = {}", format_sig12(cons.u2));
        println!("B1     = {}", format_sig12(cons.b1));
        println!("B2     = {}", format_sig12(cons.b2));
        println!("N1     = {}", format_sig12(cons.n1));
        println!("N2'    = {}", format_sig12(cons.n2_prime));
        println!("N2''   = {}", format_sig12(cons.n2_double_prime));
        println!("N2     = {}", format_sig12(cons.n2));
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    samples: Option<u64>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let kind: SuiteKind = suite
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown suite {suite:?}")))?;
    let output = run_suite(kind, seed, samples)?;
    let report = &output.report;
    for check in &report.checks {
        println!(
            "{} {} (worst slack {:.3e}, tolerance {:.3e}, {} samples)",
            if check.pass { "pass" } else { "FAIL" },
            check.id,
            check.worst_slack,
            check.tolerance,
            check.samples
        );
    }
    println!(
        "suite {}: {} ({} checks, {} ms)",
        report.suite,
        if report.passed { "pass" } else { "FAIL" },
        report.checks.len(),
        report.wall_time_ms
    );
    if let Some(path) = out {
        std::fs::write(path, report.to_json())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        let csv_path = path.with_extension("offenders.csv");
        std::fs::write(&csv_path, &output.offenders_csv)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", csv_path.display())))?;
        println!("report written to {}", path.display());
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dist { kind, w1, w2, config, tol } => {
            cmd_dist(*kind, w1, w2, config.as_ref(), *tol)
        }
        Command::Constants { rho, config } => cmd_constants(*rho, config.as_ref()),
        Command::Verify { suite, seed, samples, out } => {
            cmd_verify(suite, *seed, *samples, out.as_ref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ChecksFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Metric(MetricError::Domain(msg))) => {
            eprintln!("domain error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Metric(MetricError::Numeric(msg))) => {
            eprintln!("numeric error: {msg}");
            ExitCode::from(4)
        }
    }
}
