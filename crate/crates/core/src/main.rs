//! Command-line causality checker for sampled S-parameters.
//!
//! Exit codes: 0 = all checked parameters consistent with causality,
//! 1 = at least one violation detected, 2 = usage/parse/numerical error.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use causalift::checker::{apply_delay, CausalityReport, Verdict};
use causalift::error::{Error, Result};
use causalift::pipeline::{check_response, CheckConfig};
use causalift::spdata::{
    parse_csv, parse_touchstone, serialize_csv, serialize_touchstone, FrequencyResponse,
    NetworkData,
};
use causalift::units::{parse_frequency, parse_ripple_db, parse_time};

#[derive(Parser)]
#[command(
    name = "causalift",
    about = "Verify the causality of band-limited sampled scattering parameters",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the causality of each selected parameter.
    Check {
        /// Input file (.sNp Touchstone or .csv with frequency_hz,real,imag)
        file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Apply a delay repair, re-check, and write the delayed samples.
    Repair {
        file: PathBuf,
        /// Delay to apply, with unit (e.g. "22.5ps", "5s")
        #[arg(long)]
        delay: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Parameters to check: "all" or a list like "S11,S21"
    #[arg(long, default_value = "all")]
    param: String,
    /// Filter family
    #[arg(long, value_parser = ["butterworth", "cheby1"], default_value = "cheby1")]
    filter: String,
    /// Filter order (2..=12)
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Filter cut-off with unit (e.g. "1.4rad/s", "6GHz"); default 0.3 * band edge
    #[arg(long)]
    cutoff: Option<String>,
    /// Chebyshev passband ripple (e.g. "6dB")
    #[arg(long, default_value = "6dB")]
    ripple: String,
    /// Out-of-band magnitude bound M (1 = passive)
    #[arg(long, default_value_t = 1.0)]
    max_gain: f64,
    /// Magnitude bound below the lowest sample; defaults to --max-gain
    #[arg(long)]
    max_gain_low: Option<f64>,
    /// Time grid oversampling factor
    #[arg(long, default_value_t = 8.0)]
    oversample: f64,
    /// Time horizon with unit (e.g. "10s", "500ps"); default 10/cutoff
    #[arg(long)]
    horizon: Option<String>,
    /// Exclude the quadrature margin from E (pure spectral-truncation bound)
    #[arg(long)]
    no_quad_margin: bool,
    /// Output directory for report.json and CSV series
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Full echo written to report.json; re-running from this block reproduces
/// the outputs bit for bit.
#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
struct RunEcho {
    input: String,
    params: Vec<String>,
    check: CheckConfig,
    delay_applied_s: Option<f64>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct RunReport {
    config: RunEcho,
    reports: Vec<CausalityReport>,
    warnings: Vec<String>,
}

fn build_config(opts: &CommonOpts) -> Result<CheckConfig> {
    let family = match opts.filter.as_str() {
        "butterworth" => causalift::FilterFamily::Butterworth,
        _ => causalift::FilterFamily::Chebyshev1,
    };
    Ok(CheckConfig {
        family,
        order: opts.order,
        cutoff: opts.cutoff.as_deref().map(parse_frequency).transpose()?,
        ripple_db: parse_ripple_db(&opts.ripple)?,
        m_bound: opts.max_gain,
        m_low: opts.max_gain_low,
        oversample: opts.oversample,
        horizon: opts.horizon.as_deref().map(parse_time).transpose()?,
        include_quad_margin: !opts.no_quad_margin,
    })
}

enum Input {
    Network(NetworkData),
    Single(FrequencyResponse),
}

fn load_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    if ext == "csv" {
        let mut r = parse_csv(&text)?;
        r.label = "S11".to_string();
        return Ok(Input::Single(r));
    }
    // .sNp
    if let Some(n) = ext
        .strip_prefix('s')
        .and_then(|rest| rest.strip_suffix('p'))
        .and_then(|n| n.parse::<usize>().ok())
    {
        let mut net = parse_touchstone(&text, n)?;
        net.source_meta = path.display().to_string();
        return Ok(Input::Network(net));
    }
    Err(Error::invalid(format!(
        "unrecognized input extension '.{ext}' (expected .csv or .sNp)"
    )))
}

fn select_responses(input: &Input, selector: &str) -> Result<Vec<FrequencyResponse>> {
    let mut out = match input {
        Input::Single(r) => vec![r.clone()],
        Input::Network(net) => {
            if selector == "all" {
                net.labels()
                    .iter()
                    .map(|l| {
                        let (i, j) = parse_label(l).unwrap();
                        net.response(i, j)
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                selector
                    .split(',')
                    .map(|l| {
                        let (i, j) = parse_label(l.trim())
                            .ok_or_else(|| Error::invalid(format!("bad parameter name '{l}'")))?;
                        net.response(i, j)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        }
    };
    if let Input::Single(_) = input {
        if selector != "all" && !selector.split(',').any(|s| s.trim() == out[0].label) {
            return Err(Error::invalid(format!(
                "parameter '{selector}' not found in a single-parameter CSV"
            )));
        }
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

fn parse_label(label: &str) -> Option<(usize, usize)> {
    let digits = label.strip_prefix('S').or_else(|| label.strip_prefix('s'))?;
    if digits.len() == 2 {
        let i = digits[..1].parse().ok()?;
        let j = digits[1..].parse().ok()?;
        Some((i, j))
    } else {
        // S<i>_<j> for >9 ports
        let (i, j) = digits.split_once('_')?;
        Some((i.parse().ok()?, j.parse().ok()?))
    }
}

fn write_outputs(
    out_dir: &Path,
    echo: RunEcho,
    results: Vec<(CausalityReport, causalift::TimeSeries)>,
    warnings: Vec<String>,
) -> Result<bool> {
    std::fs::create_dir_all(out_dir)?;
    let mut reports = Vec::new();
    let mut any_violation = false;
    for (report, series) in results {
        let mut csv = String::from("t_seconds,h_F,E_total\n");
        for (t, v) in series.grid.times().zip(&series.values) {
            csv.push_str(&format!("{t:?},{v:?},{:?}\n", report.bound.e_total));
        }
        std::fs::write(out_dir.join(format!("{}_hF.csv", report.label)), csv)?;
        any_violation |= report.verdict == Verdict::ViolationDetected;
        reports.push(report);
    }
    let run = RunReport {
        config: echo,
        reports,
        warnings,
    };
    std::fs::write(
        out_dir.join("report.json"),
        serde_json::to_string_pretty(&run)?,
    )?;
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
    for r in &run.reports {
        println!("{}", r.summary);
    }
    Ok(any_violation)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { file, opts } => {
            let config = build_config(&opts)?;
            let input = load_input(&file)?;
            let responses = select_responses(&input, &opts.param)?;
            let mut warnings = match &input {
                Input::Network(net) => net.warnings.clone(),
                Input::Single(_) => vec![],
            };
            let mut results = Vec::new();
            for r in &responses {
                let out = check_response(r, &config)?;
                warnings.extend(out.warnings);
                results.push((out.report, out.series));
            }
            let echo = RunEcho {
                input: file.display().to_string(),
                params: responses.iter().map(|r| r.label.clone()).collect(),
                check: config,
                delay_applied_s: None,
            };
            write_outputs(&opts.out, echo, results, warnings)
        }
        Command::Repair { file, delay, opts } => {
            let tau = parse_time(&delay)?;
            if tau < 0.0 {
                return Err(Error::invalid("repair delay must be >= 0"));
            }
            let config = build_config(&opts)?;
            let input = load_input(&file)?;
            // delay every entry, then re-check the selected ones
            let (delayed_input, repaired_name) = match &input {
                Input::Network(net) => {
                    let mut d = net.clone();
                    for entry in &mut d.entries {
                        for (v, w) in entry.iter_mut().zip(&net.frequencies) {
                            *v *= num_complex::Complex64::new(0.0, -w * tau).exp();
                        }
                    }
                    let name = repaired_path(&file);
                    std::fs::create_dir_all(&opts.out)?;
                    std::fs::write(opts.out.join(&name), serialize_touchstone(&d))?;
                    (Input::Network(d), name)
                }
                Input::Single(r) => {
                    let d = apply_delay(r, tau)?;
                    let name = repaired_path(&file);
                    std::fs::create_dir_all(&opts.out)?;
                    std::fs::write(opts.out.join(&name), serialize_csv(&d))?;
                    (Input::Single(d), name)
                }
            };
            eprintln!("wrote delayed samples to {}", opts.out.join(&repaired_name).display());
            let responses = select_responses(&delayed_input, &opts.param)?;
            let mut warnings = Vec::new();
            let mut results = Vec::new();
            for r in &responses {
                let out = check_response(r, &config)?;
                warnings.extend(out.warnings);
                results.push((out.report, out.series));
            }
            let echo = RunEcho {
                input: file.display().to_string(),
                params: responses.iter().map(|r| r.label.clone()).collect(),
                check: config,
                delay_applied_s: Some(tau),
            };
            write_outputs(&opts.out, echo, results, warnings)
        }
    }
}

fn repaired_path(file: &Path) -> String {
    let stem = file
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("repaired");
    let ext = file.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    format!("{stem}_delayed.{ext}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
