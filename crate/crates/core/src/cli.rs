//! Command-line front end.
//!
//! Every command writes one text document (CSV or JSON) to standard output or
//! to `--output`. Reals are printed with 17 significant digits in scientific
//! notation so that output is byte-identical across runs and round-trips
//! exactly.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 numerical
//! non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::cascade;
use crate::error::Error;
use crate::filterbank::{self, FilterBank, DEFAULT_THRESHOLD};
use crate::mathieu::{self, MathieuParams, DEFAULT_TOLERANCE};
use crate::ode;
use crate::transform::{self, Boundary, DwtResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Characteristic value and Fourier coefficients of ce_nu.
    Eigen,
    /// Smoothing and detail filter taps.
    Filters,
    /// Sampled transfer functions with QMF residuals.
    Spectrum,
    /// Cascade approximation of the scaling function and wavelet.
    Cascade,
    /// Forward periodic DWT of a single-column CSV signal.
    Dwt,
    /// Inverse DWT of the subband CSV written by `dwt`.
    Idwt,
    /// Cross-check of the series solution against direct integration.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "mathieu", version, about = "Mathieu wavelet filter banks")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Odd characteristic exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub nu: i64,
    /// Mathieu parameter q.
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    /// FIR truncation threshold.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    /// Frequency samples on [0, 2π).
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    /// Cascade iterations.
    #[arg(long, default_value_t = 6)]
    pub iterations: u32,
    /// Dyadic sampling level J of the cascade output (defaults to the
    /// iteration count).
    #[arg(long)]
    pub level: Option<u32>,
    /// Decomposition levels for dwt.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Write filters with h negated so that H(0) = +1.
    #[arg(long)]
    pub corrected: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Input CSV for dwt and idwt.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&config).and_then(|text| match &config.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Runs the configured command and returns the document it produces.
pub fn execute(config: &RunConfig) -> Result<String, CliError> {
    let params = MathieuParams::new(config.nu, config.q)?;
    match config.command {
        Command::Eigen => eigen(params, config.format),
        Command::Filters => filters(params, config),
        Command::Spectrum => spectrum(params, config),
        Command::Cascade => cascade_cmd(params, config),
        Command::Dwt => dwt(params, config),
        Command::Idwt => idwt(params, config),
        Command::Validate => validate(params, config),
    }
}

/// 17 significant digits, scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_array(values: impl IntoIterator<Item = f64>) -> String {
    let items: Vec<String> = values.into_iter().map(fmt_real).collect();
    format!("[{}]", items.join(","))
}

fn bank_for(params: MathieuParams, threshold: f64) -> Result<FilterBank, CliError> {
    let sol = mathieu::solve_even(params, DEFAULT_TOLERANCE)?;
    Ok(FilterBank::build(params, &sol, threshold)?)
}

fn eigen(params: MathieuParams, format: Format) -> Result<String, CliError> {
    let sol = mathieu::solve_even(params, DEFAULT_TOLERANCE)?;
    let ce0 = sol.value_at_zero()?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{{\"nu\":{},\"q\":{},\"a\":{},\"ce_at_zero\":{},\"coeffs\":{},\"truncation_order\":{}}}",
                params.nu(),
                fmt_real(params.q()),
                fmt_real(sol.characteristic_value()),
                fmt_real(ce0),
                json_array(sol.coeffs().iter().copied()),
                sol.truncation_order()
            );
        }
        Format::Csv => {
            out.push_str("key,value\n");
            let _ = writeln!(out, "nu,{}", params.nu());
            let _ = writeln!(out, "q,{}", fmt_real(params.q()));
            let _ = writeln!(out, "a,{}", fmt_real(sol.characteristic_value()));
            let _ = writeln!(out, "ce_at_zero,{}", fmt_real(ce0));
            let _ = writeln!(out, "truncation_order,{}", sol.truncation_order());
            for (i, c) in sol.coeffs().iter().enumerate() {
                let _ = writeln!(out, "A{},{}", 2 * i + 1, fmt_real(*c));
            }
        }
    }
    Ok(out)
}

fn filters(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let mut bank = bank_for(params, config.threshold)?;
    if config.corrected {
        bank = bank.sign_correct()?;
    }
    let (hf, hl) = bank.h().support().unwrap_or((0, 0));
    let (gf, gl) = bank.g().support().unwrap_or((0, 0));
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("index,h,g\n");
            for l in hf.min(gf)..=hl.max(gl) {
                let _ = writeln!(
                    out,
                    "{l},{},{}",
                    fmt_real(bank.h().get(l)),
                    fmt_real(bank.g().get(l))
                );
            }
        }
        Format::Json => {
            let taps = |t: &filterbank::Taps| {
                let items: Vec<String> = t
                    .iter()
                    .map(|(k, v)| format!("[{k},{}]", fmt_real(v)))
                    .collect();
                format!("[{}]", items.join(","))
            };
            let _ = writeln!(
                out,
                "{{\"nu\":{},\"q\":{},\"threshold\":{},\"sign_corrected\":{},\"h\":{},\"g\":{}}}",
                params.nu(),
                fmt_real(params.q()),
                fmt_real(bank.threshold()),
                bank.is_sign_corrected(),
                taps(bank.h()),
                taps(bank.g())
            );
        }
    }
    Ok(out)
}

fn spectrum(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let sol = mathieu::solve_even(params, DEFAULT_TOLERANCE)?;
    let grid = filterbank::qmf_report(&sol, config.samples)?;
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("omega,H_re,H_im,G_re,G_im,qmf_residual\n");
            for i in 0..grid.len() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_real(grid.omegas[i]),
                    fmt_real(grid.h[i].re),
                    fmt_real(grid.h[i].im),
                    fmt_real(grid.g[i].re),
                    fmt_real(grid.g[i].im),
                    fmt_real(grid.qmf_residual[i])
                );
            }
        }
        Format::Json => {
            let _ = writeln!(
                out,
                "{{\"omega\":{},\"H_re\":{},\"H_im\":{},\"G_re\":{},\"G_im\":{},\"qmf_residual\":{}}}",
                json_array(grid.omegas.iter().copied()),
                json_array(grid.h.iter().map(|c| c.re)),
                json_array(grid.h.iter().map(|c| c.im)),
                json_array(grid.g.iter().map(|c| c.re)),
                json_array(grid.g.iter().map(|c| c.im)),
                json_array(grid.qmf_residual.iter().copied())
            );
        }
    }
    Ok(out)
}

fn cascade_cmd(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let bank = bank_for(params, config.threshold)?.sign_correct()?;
    let level = config.level.unwrap_or(config.iterations);
    let res = cascade::run(&bank, config.iterations, level)?;
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("t,phi,psi\n");
            for i in 0..res.t.len() {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    fmt_real(res.t[i]),
                    fmt_real(res.phi[i]),
                    fmt_real(res.psi[i])
                );
            }
        }
        Format::Json => {
            let _ = writeln!(
                out,
                "{{\"iterations\":{},\"level\":{},\"delta\":{},\"t\":{},\"phi\":{},\"psi\":{}}}",
                res.iterations,
                res.level,
                fmt_real(res.delta),
                json_array(res.t.iter().copied()),
                json_array(res.phi.iter().copied()),
                json_array(res.psi.iter().copied())
            );
        }
    }
    Ok(out)
}

fn read_input(config: &RunConfig) -> Result<String, CliError> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("--input is required for this command".into()))?;
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn parse_real(s: &str, line: usize) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| {
        CliError::Usage(format!(
            "line {line}: cannot parse '{}' as a number",
            s.trim()
        ))
    })
}

/// Single-column CSV with header `x`.
pub fn parse_signal(text: &str) -> Result<Vec<f64>, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == "x" => {}
        _ => {
            return Err(CliError::Usage(
                "signal CSV must start with the header 'x'".into(),
            ))
        }
    }
    lines.map(|(i, l)| parse_real(l, i + 1)).collect()
}

const DWT_HEADER: &str = "band,level,index,value";

fn dwt(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let levels = config
        .levels
        .ok_or_else(|| CliError::Usage("--levels is required for dwt".into()))?;
    let signal = parse_signal(&read_input(config)?)?;
    let bank = bank_for(params, config.threshold)?.sign_correct()?;
    let res = transform::forward(&signal, &bank, levels)?;
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str(DWT_HEADER);
            out.push('\n');
            for (i, v) in res.approx.iter().enumerate() {
                let _ = writeln!(out, "approx,{},{i},{}", res.levels, fmt_real(*v));
            }
            for (lvl, band) in res.details.iter().enumerate().rev() {
                for (i, v) in band.iter().enumerate() {
                    let _ = writeln!(out, "detail,{},{i},{}", lvl + 1, fmt_real(*v));
                }
            }
        }
        Format::Json => {
            let details: Vec<String> = res
                .details
                .iter()
                .map(|b| json_array(b.iter().copied()))
                .collect();
            let _ = writeln!(
                out,
                "{{\"levels\":{},\"length\":{},\"approx\":{},\"details\":[{}]}}",
                res.levels,
                res.length,
                json_array(res.approx.iter().copied()),
                details.join(",")
            );
        }
    }
    Ok(out)
}

/// Subband CSV as written by the `dwt` command.
pub fn parse_subbands(text: &str) -> Result<DwtResult, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == DWT_HEADER => {}
        _ => {
            return Err(CliError::Usage(format!(
                "subband CSV must start with the header '{DWT_HEADER}'"
            )))
        }
    }
    let mut approx: Vec<(usize, f64)> = Vec::new();
    let mut approx_level = None;
    let mut details: Vec<Vec<(usize, f64)>> = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::Usage(format!(
                "line {}: expected 4 fields",
                i + 1
            )));
        }
        let bad = |what: &str| CliError::Usage(format!("line {}: bad {what}", i + 1));
        let level: usize = fields[1].trim().parse().map_err(|_| bad("level"))?;
        let index: usize = fields[2].trim().parse().map_err(|_| bad("index"))?;
        let value = parse_real(fields[3], i + 1)?;
        match fields[0].trim() {
            "approx" => {
                if approx_level.is_some_and(|l| l != level) {
                    return Err(bad("approximation level"));
                }
                approx_level = Some(level);
                approx.push((index, value));
            }
            "detail" => {
                if level == 0 {
                    return Err(bad("level"));
                }
                if details.len() < level {
                    details.resize_with(level, Vec::new);
                }
                details[level - 1].push((index, value));
            }
            _ => return Err(bad("band")),
        }
    }
    let dense = |mut band: Vec<(usize, f64)>| -> Result<Vec<f64>, CliError> {
        band.sort_by_key(|e| e.0);
        if band.iter().enumerate().any(|(i, e)| e.0 != i) {
            return Err(CliError::Usage(
                "subband indices must be 0..n without gaps".into(),
            ));
        }
        Ok(band.into_iter().map(|e| e.1).collect())
    };
    let levels = approx_level.ok_or_else(|| CliError::Usage("no approximation band".into()))?;
    let approx = dense(approx)?;
    let details = details
        .into_iter()
        .map(dense)
        .collect::<Result<Vec<_>, _>>()?;
    let length = approx.len() + details.iter().map(Vec::len).sum::<usize>();
    Ok(DwtResult {
        levels,
        approx,
        details,
        length,
        boundary: Boundary::Periodic,
    })
}

fn idwt(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let res = parse_subbands(&read_input(config)?)?;
    let bank = bank_for(params, config.threshold)?.sign_correct()?;
    let signal = transform::inverse(&res, &bank)?;
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("x\n");
            for v in &signal {
                let _ = writeln!(out, "{}", fmt_real(*v));
            }
        }
        Format::Json => {
            let _ = writeln!(out, "{{\"x\":{}}}", json_array(signal.iter().copied()));
        }
    }
    Ok(out)
}

/// Figures printed by the `validate` command.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub a_matrix: f64,
    pub a_shooting: f64,
    pub series_vs_trajectory: f64,
    pub max_phase_residual: f64,
    pub max_qmf_residual: f64,
    pub zeros_ce: usize,
    pub zeros_h: usize,
    pub zeros_g: usize,
}

pub fn validation_report(params: MathieuParams, samples: usize) -> Result<ValidationReport, Error> {
    let sol = mathieu::solve_even(params, DEFAULT_TOLERANCE)?;
    let a_matrix = sol.characteristic_value();
    let a_shooting = ode::shoot_even(params, ode::default_bracket(params)?, 1e-12)?;
    let traj = ode::integrate(
        a_matrix,
        params.q(),
        1.0,
        0.0,
        2.0 * std::f64::consts::PI,
        ode::DEFAULT_STEP,
    )?;
    let grid = filterbank::qmf_report(&sol, samples)?;
    Ok(ValidationReport {
        a_matrix,
        a_shooting,
        series_vs_trajectory: ode::compare(&sol, &traj)?,
        max_phase_residual: grid.max_phase_residual(),
        max_qmf_residual: grid.max_qmf_residual(),
        zeros_ce: mathieu::count_zeros(&sol)?,
        zeros_h: filterbank::zeros_of_h(&sol)?.len(),
        zeros_g: filterbank::zeros_of_g(&sol)?.len(),
    })
}

fn validate(params: MathieuParams, config: &RunConfig) -> Result<String, CliError> {
    let r = validation_report(params, config.samples)?;
    let rows = [
        ("nu", params.nu().to_string()),
        ("q", fmt_real(params.q())),
        ("a_matrix", fmt_real(r.a_matrix)),
        ("a_shooting", fmt_real(r.a_shooting)),
        ("a_difference", fmt_real((r.a_matrix - r.a_shooting).abs())),
        ("series_vs_trajectory", fmt_real(r.series_vs_trajectory)),
        ("max_phase_residual", fmt_real(r.max_phase_residual)),
        ("max_qmf_residual", fmt_real(r.max_qmf_residual)),
        ("zeros_ce", r.zeros_ce.to_string()),
        ("zeros_h", r.zeros_h.to_string()),
        ("zeros_g", r.zeros_g.to_string()),
    ];
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("quantity,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},{v}");
            }
        }
        Format::Json => {
            let items: Vec<String> = rows.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
            let _ = writeln!(out, "{{{}}}", items.join(","));
        }
    }
    Ok(out)
}
