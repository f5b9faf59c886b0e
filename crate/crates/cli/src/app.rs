use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qcft::mock::MAX_MOCK_TERMS;
use qcft::report::CheckReport;
use qcft::special::{dedekind_eta, eisenstein, rr_product, EisensteinWeight, RogersRamanujan};
use qcft::virasoro::algebra::MAX_GRAM_LEVEL;

use crate::checks::{self, Group};
use crate::config::{env_order, resolve, validate_order, validate_tolerance, Overrides, RunConfig};
use crate::error::CliError;
use crate::golden::{compare_golden, render, write_golden};

#[derive(Debug, Parser)]
#[command(name = "qcft", version, about = "Exact and numeric checks for q-series, minimal models, the free boson and mock modular forms")]
struct Cli {
    /// Number of stored series coefficients.
    #[arg(long, global = true, value_parser = parse_order_flag)]
    order: Option<usize>,
    /// Tolerance for numeric checks and golden comparison.
    #[arg(long, global = true, value_parser = parse_tolerance_flag)]
    tolerance: Option<f64>,
    /// Line-based `key = value` settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the report array here.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Write the reports here if the file is absent, otherwise compare against it.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    /// Skip the floating-point groups.
    #[arg(long, global = true)]
    exact_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesKind {
    Eta,
    E2,
    E4,
    G,
    H,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact q-series identities; `--kind` adds an expansion.
    Series {
        #[arg(long, value_enum)]
        kind: Option<SeriesKind>,
    },
    /// Casimir exponents, the regularization defect and the critical dimension.
    Casimir {
        /// One step and its residues, e.g. `5:1,4`.
        #[arg(long)]
        progressions: Option<String>,
    },
    /// Rogers-Ramanujan and Andrews-Gordon identities.
    Rr,
    /// Minimal-model constants, characters and the (2,5) torus function.
    MinimalModel {
        #[arg(long, requires = "q")]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        q: Option<i64>,
    },
    /// Gram matrices and the level-4 vacuum null vector.
    Gram {
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, requires = "level")]
        vacuum: bool,
    },
    /// The second-order modular ODE of the (2,5) characters.
    Ode,
    /// Compact boson duality, modular invariance and the twisted trace.
    Boson {
        #[arg(long, requires = "tau")]
        radius: Option<f64>,
        /// `re,im`
        #[arg(long, requires = "radius", value_parser = parse_tau)]
        tau: Option<Complex64>,
    },
    /// Lattice against continuum determinant ratios.
    LatticeDet {
        #[arg(long, requires_all = ["m2", "sites"])]
        m1: Option<f64>,
        #[arg(long, requires_all = ["m1", "sites"])]
        m2: Option<f64>,
        #[arg(long, requires_all = ["m1", "m2"])]
        sites: Option<usize>,
    },
    /// Mock-modular coefficient extraction.
    Mock {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=MAX_MOCK_TERMS as u64))]
        terms: u64,
    },
    /// Every group, in registry order.
    All,
}

fn parse_order_flag(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a non-negative integer: {s:?}"))?;
    validate_order(n)
}

fn parse_tolerance_flag(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    validate_tolerance(t)
}

fn parse_tau(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part {re:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part {im:?}"))?;
    Ok(Complex64::new(re, im))
}

fn expansion(kind: SeriesKind, order: usize) -> CheckReport {
    let series = match kind {
        SeriesKind::Eta => dedekind_eta(order),
        SeriesKind::E2 => eisenstein(EisensteinWeight::Two, order),
        SeriesKind::E4 => eisenstein(EisensteinWeight::Four, order),
        SeriesKind::G => rr_product(RogersRamanujan::G, order),
        SeriesKind::H => rr_product(RogersRamanujan::H, order),
    };
    CheckReport::new("series.expansion", true, "0/1")
        .param("kind", format!("{kind:?}").to_lowercase())
        .param("order", order)
        .details(serde_json::to_value(series.to_record()).expect("serializes"))
}

fn reports_for(command: &Command, config: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    match command {
        Command::Series { kind } => {
            if let Some(kind) = kind {
                out.push(expansion(*kind, config.order));
            }
            out.extend(Group::Series.run(config));
        }
        Command::Casimir { progressions } => match progressions {
            Some(spec) => {
                let set = checks::parse_progressions(spec).map_err(CliError::Usage)?;
                out.push(checks::casimir_value(spec, &set).map_err(|e| CliError::Usage(e.to_string()))?);
            }
            None => out.extend(Group::Casimir.run(config)),
        },
        Command::Rr => out.extend(Group::Rr.run(config)),
        Command::MinimalModel { p, q } => match (p, q) {
            (Some(p), Some(q)) => {
                out.push(checks::minimal_model_summary(*p, *q).map_err(|e| CliError::Usage(e.to_string()))?)
            }
            _ => out.extend(Group::MinimalModel.run(config)),
        },
        Command::Gram { level, vacuum } => match level {
            Some(level) => {
                if *level == 0 || *level > MAX_GRAM_LEVEL {
                    return Err(CliError::Usage(format!("level must lie in 1..={MAX_GRAM_LEVEL}")));
                }
                out.push(checks::gram_summary(*level, *vacuum)?);
            }
            None => out.extend(Group::Gram.run(config)),
        },
        Command::Ode => out.extend(Group::Ode.run(config)),
        Command::Boson { radius, tau } => match (radius, tau) {
            (Some(r), Some(t)) => out.push(checks::boson_value(*r, *t).map_err(|e| CliError::Usage(e.to_string()))?),
            _ => out.extend(Group::Boson.run(config)),
        },
        Command::LatticeDet { m1, m2, sites } => match (m1, m2, sites) {
            (Some(a), Some(b), Some(n)) => {
                out.push(checks::lattice_value(*n, *a, *b).map_err(|e| CliError::Usage(e.to_string()))?)
            }
            _ => out.extend(Group::LatticeDet.run(config)),
        },
        Command::Mock { terms } => {
            if !config.exact_only {
                out.extend(checks::mock_checks(config, *terms as usize));
            }
        }
        Command::All => out.extend(checks::run_all(config)),
    }
    Ok(out)
}

fn execute(cli: Cli, env: impl Fn(&str) -> Option<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Overrides {
        order: cli.order,
        float_tolerance: cli.tolerance,
        exact_only: cli.exact_only.then_some(true),
        output_path: cli.output.clone(),
    };
    let config = resolve(env_order(env)?, cli.config.as_deref(), &flags)?;
    let reports = reports_for(&cli.command, &config)?;
    let text = render(&reports);
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Io("stdout".into(), e.to_string()))?;
    if let Some(path) = &config.output_path {
        write_golden(&reports, path)?;
    }
    if let Some(path) = &cli.golden {
        if path.exists() {
            compare_golden(&reports, path, config.float_tolerance)?;
        } else {
            write_golden(&reports, path)?;
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        let _ = writeln!(stderr, "failed checks: {}", failed.join(", "));
        Ok(1)
    }
}

/// Runs one invocation and returns its exit code: 0 when every check
/// passes, 1 on a failed check or golden mismatch, 2 on a usage error.
pub fn run<I, T>(args: I, env: impl Fn(&str) -> Option<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, env, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
