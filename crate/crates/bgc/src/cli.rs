//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::PathBuf;

use bgc_core::bounds::{
    bounds_additive, bounds_amplifier, bounds_attenuator, coherent_info_thermal, extended_attenuator_capacity,
    flagged_additive_capacity, OracleStrategy, DEFAULT_GRID, DEFAULT_MEAN_PHOTONS,
};
use bgc_core::channels::{complementary, make_channel, ChannelFamily, GaussianChannel};
use bgc_core::symplectic::bosonic_entropy_h;
use bgc_core::verify::{run_check, sort_outcomes, CheckOutcome, SuiteConfig, DEFAULT_SEED, SUITE};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::figure::{build_figure, plot_script, FigureId, FigureSpec, Grid};
use crate::format::sig;
use crate::report::{bound_report_csv, BoundReportJson, OracleJson};
use crate::{CliError, OUTPUT_DIR_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "bgc",
    version,
    about = "Capacity bounds for phase-insensitive bosonic Gaussian channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report every bound for one channel.
    Bound(BoundArgs),
    /// Write the data series of a figure as CSV.
    Figure(FigureArgs),
    /// Run the numerical verification suite.
    Verify(VerifyArgs),
    /// Coherent information of an extended channel on a thermal input.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("family").required(true).args(["additive", "amplifier", "attenuator"])))]
pub struct BoundArgs {
    /// Additive Gaussian noise; needs --beta.
    #[arg(long, requires = "beta")]
    pub additive: bool,
    /// Thermal amplifier; needs --g and --n.
    #[arg(long, requires_all = ["g", "n"])]
    pub amplifier: bool,
    /// Thermal attenuator; needs --eta and --n.
    #[arg(long, requires_all = ["eta", "n"])]
    pub attenuator: bool,
    /// Inverse temperature of the additive noise.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Amplifier gain.
    #[arg(long)]
    pub g: Option<f64>,
    /// Attenuator transmissivity.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Bath photon number.
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also search data-processing decompositions and fold them into `combined`.
    #[arg(long)]
    pub decomposition: bool,
    /// Grid points of the decomposition search.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FigureArgs {
    /// fig1, fig2, fig3 or fig3-inset.
    pub id: FigureId,
    /// Grid start (1/beta for fig1, g - 1 for fig2, eta for fig3).
    #[arg(long)]
    pub from: Option<f64>,
    /// Grid end, inclusive.
    #[arg(long)]
    pub to: Option<f64>,
    /// Step of the linear grids (fig1, fig3, fig3-inset).
    #[arg(long)]
    pub step: Option<f64>,
    /// Number of points of the logarithmic grid (fig2).
    #[arg(long)]
    pub points: Option<usize>,
    /// Bath photon number (fig2, fig3, fig3-inset).
    #[arg(long)]
    pub n: Option<f64>,
    /// Grid points of the decomposition search (fig3-inset).
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub decomposition_grid: usize,
    /// Output directory; defaults to $BGC_OUTPUT_DIR, then the working directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Print the CSV instead of writing a file.
    #[arg(long)]
    pub stdout: bool,
    /// Also write a matplotlib script plotting the CSV.
    #[arg(long, conflicts_with = "stdout")]
    pub plot_script: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Rescaling factor used by the flag-condition check.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// List the checks and exit.
    #[arg(long)]
    pub list: bool,
    /// Emit JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Run only these checks (repeatable).
    #[arg(long = "check")]
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Entropy of the channel applied to the purification of the input.
    Purified,
    /// Entropy of the closed-form complementary channel.
    Complement,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("channel").required(true).args(["flagged", "extended_attenuator", "identity"])))]
pub struct OracleArgs {
    /// Flagged additive-noise channel; needs --beta.
    #[arg(long, requires = "beta")]
    pub flagged: bool,
    /// Attenuator with a vacuum ancilla; needs --eta and --n.
    #[arg(long, requires_all = ["eta", "n"])]
    pub extended_attenuator: bool,
    /// Single-mode identity channel.
    #[arg(long)]
    pub identity: bool,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    /// Mean photon number of the thermal probe.
    #[arg(long = "m", default_value_t = DEFAULT_MEAN_PHOTONS)]
    pub mean_photons: f64,
    /// Defaults to `complement` for the extended attenuator, `purified` otherwise.
    #[arg(long, value_enum)]
    pub strategy: Option<Strategy>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OracleFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleFormat {
    Json,
    Text,
}

fn io_err(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(io_err("writing output"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialise");
    s.push('\n');
    s
}

/// Runs a parsed command, returning the process exit code on success.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Figure(a) => cmd_figure(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
    }
}

fn required(v: Option<f64>, flag: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let report = if a.additive {
        bounds_additive(required(a.beta, "beta")?)?
    } else if a.amplifier {
        bounds_amplifier(required(a.g, "g")?, required(a.n, "n")?)?
    } else {
        bounds_attenuator(required(a.eta, "eta")?, required(a.n, "n")?)?
    };
    let report = if a.decomposition {
        report.with_decomposition(a.grid)?
    } else {
        report
    };
    let text = match a.format {
        Format::Json => to_json(&BoundReportJson::from(&report)),
        Format::Csv => bound_report_csv(&report).render(),
    };
    write_out(out, &text)?;
    Ok(0)
}

fn figure_spec(a: &FigureArgs) -> Result<FigureSpec, CliError> {
    let mut spec = FigureSpec::default_for(a.id);
    spec.grid = match spec.grid {
        Grid::Linear { from, to, step } => {
            if a.points.is_some() {
                return Err(CliError::Usage(format!("{} uses a linear grid; use --step", a.id)));
            }
            Grid::Linear {
                from: a.from.unwrap_or(from),
                to: a.to.unwrap_or(to),
                step: a.step.unwrap_or(step),
            }
        }
        Grid::Log { from, to, points } => {
            if a.step.is_some() {
                return Err(CliError::Usage(format!(
                    "{} uses a logarithmic grid; use --points",
                    a.id
                )));
            }
            Grid::Log {
                from: a.from.unwrap_or(from),
                to: a.to.unwrap_or(to),
                points: a.points.unwrap_or(points),
            }
        }
    };
    if let Some(n) = a.n {
        if a.id == FigureId::Fig1 {
            return Err(CliError::Usage("fig1 has no bath photon number".into()));
        }
        spec.n = n;
    }
    spec.decomposition_grid = a.decomposition_grid;
    Ok(spec)
}

fn output_dir(a: &FigureArgs) -> PathBuf {
    a.out_dir
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn cmd_figure(a: &FigureArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let series = build_figure(&figure_spec(a)?)?;
    let csv = series.to_csv().render();
    if a.stdout {
        write_out(out, &csv)?;
        return Ok(0);
    }
    let dir = output_dir(a);
    std::fs::create_dir_all(&dir).map_err(io_err(format!("creating {}", dir.display())))?;
    let name = format!("{}.csv", a.id);
    let path = dir.join(&name);
    std::fs::write(&path, csv).map_err(io_err(format!("writing {}", path.display())))?;
    write_out(out, &format!("{}\n", path.display()))?;
    if a.plot_script {
        let script = dir.join(format!("{}.py", a.id));
        std::fs::write(&script, plot_script(&series, &name))
            .map_err(io_err(format!("writing {}", script.display())))?;
        write_out(out, &format!("{}\n", script.display()))?;
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    applicable: bool,
    max_residual: Option<f64>,
    tolerance: Option<f64>,
    samples: usize,
    details: &'a str,
}

#[derive(Debug, Serialize)]
struct VerifyJson<'a> {
    seed: u64,
    gamma: f64,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

/// A check fails the run when it applies and misses its tolerance.
fn failed(o: &CheckOutcome) -> bool {
    o.applicable && !o.passed
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if a.list {
        let text: String = SUITE.iter().map(|k| format!("{k}\n")).collect();
        write_out(out, &text)?;
        return Ok(0);
    }
    let keys: Vec<&str> = if a.checks.is_empty() {
        SUITE.to_vec()
    } else {
        for k in &a.checks {
            if !SUITE.contains(&k.as_str()) {
                return Err(CliError::Usage(format!("unknown check '{k}' (see --list)")));
            }
        }
        a.checks.iter().map(String::as_str).collect()
    };
    let config = SuiteConfig {
        seed: a.seed,
        gamma: a.gamma,
        ..SuiteConfig::default()
    };
    let mut outcomes: Vec<CheckOutcome> = keys
        .par_iter()
        .map(|k| run_check(k, &config).expect("keys were validated"))
        .collect();
    sort_outcomes(&mut outcomes);
    let all_passed = !outcomes.iter().any(failed);

    let text = if a.json {
        to_json(&VerifyJson {
            seed: a.seed,
            gamma: a.gamma,
            passed: all_passed,
            checks: outcomes
                .iter()
                .map(|o| CheckJson {
                    name: &o.name,
                    passed: o.passed,
                    applicable: o.applicable,
                    max_residual: finite(o.max_residual),
                    tolerance: finite(o.tolerance),
                    samples: o.samples,
                    details: &o.details,
                })
                .collect(),
        })
    } else {
        let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(4).max(4);
        let mut t = format!("# seed: {}\n# gamma: {}\n", a.seed, sig(a.gamma));
        t += &format!(
            "{:<6}  {:<width$}  {:>10}  {:>9}  {:>7}  details\n",
            "status", "name", "residual", "tolerance", "samples"
        );
        for o in &outcomes {
            let status = if !o.applicable {
                "n/a"
            } else if o.passed {
                "PASS"
            } else {
                "FAIL"
            };
            t += &format!(
                "{:<6}  {:<width$}  {:>10.3e}  {:>9.1e}  {:>7}  {}\n",
                status, o.name, o.max_residual, o.tolerance, o.samples, o.details
            );
        }
        t += if all_passed {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        };
        t
    };
    write_out(out, &text)?;
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let m = a.mean_photons;
    let (label, channel, closed_form) = if a.flagged {
        let beta = required(a.beta, "beta")?;
        (
            format!("flagged-additive(beta={})", sig(beta)),
            make_channel(ChannelFamily::FlaggedAdditive { beta })?,
            Some(flagged_additive_capacity(beta)),
        )
    } else if a.extended_attenuator {
        let (eta, n) = (required(a.eta, "eta")?, required(a.n, "n")?);
        (
            format!("extended-attenuator(eta={},N={})", sig(eta), sig(n)),
            make_channel(ChannelFamily::ExtendedAttenuator { eta, n })?,
            Some(extended_attenuator_capacity(eta, n)),
        )
    } else {
        let closed = bosonic_entropy_h(2.0 * m + 1.0).ok();
        ("identity".to_string(), GaussianChannel::identity(1), closed)
    };
    let strategy = a.strategy.unwrap_or(if a.extended_attenuator {
        Strategy::Complement
    } else {
        Strategy::Purified
    });
    let (name, oracle) = match strategy {
        Strategy::Purified => ("purified", OracleStrategy::PurifiedReference),
        Strategy::Complement => ("complement", OracleStrategy::Complement(complementary(&channel)?)),
    };
    let est = coherent_info_thermal(&channel, &oracle, m)?;
    let report = OracleJson::new(label, name, &est, closed_form);
    let text = match a.format {
        OracleFormat::Json => to_json(&report),
        OracleFormat::Text => {
            let mut t = format!(
                "channel: {}\nstrategy: {}\nM: {}\nvalue: {}\nconvergence gap (M/10): {}\n",
                report.channel,
                report.strategy,
                sig(report.mean_photons),
                sig(report.value),
                sig(report.convergence_gap)
            );
            if let Some(c) = report.closed_form {
                t += &format!("closed form: {}\n", sig(c));
            }
            t
        }
    };
    write_out(out, &text)?;
    Ok(0)
}
