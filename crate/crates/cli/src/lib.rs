//! Command-line front end: sweeps to CSV/JSON, single-time measurements,
//! the verification report, and gnuplot scripts.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage/config error, 3 I/O error.

use std::f64::consts::LN_2;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twoqubit::{
    initial_state, record_at, sweep, verify, CouplingParams, ScenarioSpec, SweepConfig,
    SweepRecord, VerifyOptions, VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Column order of every CSV/JSON row.
pub const CSV_HEADER: &str =
    "t,doe,purity_joint,purity_a,purity_b,entropy_a,entropy_b,entropy_joint,sx,sy,sz,tx,ty,tz";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] twoqubit::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Model(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twoqubit",
    version,
    about = "Two-qubit entanglement and information-swap dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scenario on a uniform time grid and write CSV or JSON.
    Sweep(SweepArgs),
    /// Print the measures of a scenario at one time as JSON.
    Measure(MeasureArgs),
    /// Cross-check closed forms against the numeric oracle and list errata.
    Verify(VerifyArgs),
    /// Write a sweep CSV plus a gnuplot script with DOE, purity and entropy panels.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioKind {
    Class1,
    Class2,
    Class3,
    Entangled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum EntropyUnits {
    #[default]
    Nats,
    Bits,
}

impl EntropyUnits {
    pub fn factor(self) -> f64 {
        match self {
            EntropyUnits::Nats => 1.0,
            EntropyUnits::Bits => 1.0 / LN_2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_enum, default_value = "class1")]
    pub scenario: ScenarioKind,
    /// Alice's x polarization (class1, class3).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub sx: f64,
    /// Bob's x polarization (class3).
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub tx: f64,
    /// Bob's y polarization (class3).
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub ty: f64,
    /// Entangled-family parameter in [0, 1].
    #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
    pub p: f64,
}

impl ScenarioArgs {
    pub fn spec(&self) -> ScenarioSpec {
        match self.scenario {
            ScenarioKind::Class1 => ScenarioSpec::Class1 { sx: self.sx },
            ScenarioKind::Class2 => ScenarioSpec::Class2,
            ScenarioKind::Class3 => ScenarioSpec::Class3 {
                sx: self.sx,
                tx: self.tx,
                ty: self.ty,
            },
            ScenarioKind::Entangled => ScenarioSpec::Entangled { p: self.p },
        }
    }
}

/// Coupling strengths in decimal radians; π/6 = 0.5235987755982988.
#[derive(Debug, Clone, Args)]
pub struct CouplingArgs {
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6, allow_hyphen_values = true)]
    pub alpha1: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6, allow_hyphen_values = true)]
    pub alpha2: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6, allow_hyphen_values = true)]
    pub alpha3: f64,
}

impl CouplingArgs {
    pub fn params(&self) -> CouplingParams {
        CouplingParams::new(self.alpha1, self.alpha2, self.alpha3)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t_start: f64,
    #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
    pub t_end: f64,
    #[arg(long, default_value_t = 601)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "nats")]
    pub entropy_units: EntropyUnits,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value = "nats")]
    pub entropy_units: EntropyUnits,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// JSON report path.
    #[arg(long, default_value = "verify-report.json")]
    pub out: PathBuf,
    /// Use this tolerance for every check instead of the built-in ones.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// gnuplot script path; the data goes next to it with a `.csv` extension.
    /// Defaults to `<scenario>.gp`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "nats")]
    pub entropy_units: EntropyUnits,
}

/// Fully validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioSpec,
    pub sweep: SweepConfig,
    pub entropy_units: EntropyUnits,
}

impl RunConfig {
    pub fn new(
        scenario: &ScenarioArgs,
        coupling: &CouplingArgs,
        grid: &GridArgs,
        entropy_units: EntropyUnits,
    ) -> Result<Self, CliError> {
        let spec = scenario.spec();
        initial_state(&spec)?;
        let sweep = SweepConfig::new(coupling.params(), grid.t_start, grid.t_end, grid.steps)?;
        Ok(RunConfig {
            scenario: spec,
            sweep,
            entropy_units,
        })
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-5..12).contains(&exp) {
        format!("{}e{exp}", trim(mantissa))
    } else {
        trim(&format!("{:.*}", (11 - exp) as usize, x))
    }
}

/// Rounds through the printed form so JSON and CSV carry identical values.
fn printed(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

/// One output row; field order matches [`CSV_HEADER`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub doe: f64,
    pub purity_joint: f64,
    pub purity_a: f64,
    pub purity_b: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_joint: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub tx: f64,
    pub ty: f64,
    pub tz: f64,
}

impl Row {
    pub fn from_record(r: &SweepRecord, units: EntropyUnits) -> Self {
        let k = units.factor();
        let m = &r.measures;
        Row {
            t: printed(r.t),
            doe: printed(m.doe),
            purity_joint: printed(m.purity_joint),
            purity_a: printed(m.purity_a),
            purity_b: printed(m.purity_b),
            entropy_a: printed(m.entropy_a * k),
            entropy_b: printed(m.entropy_b * k),
            entropy_joint: printed(m.entropy_joint * k),
            sx: printed(r.s_tilde.x),
            sy: printed(r.s_tilde.y),
            sz: printed(r.s_tilde.z),
            tx: printed(r.t_tilde.x),
            ty: printed(r.t_tilde.y),
            tz: printed(r.t_tilde.z),
        }
    }

    pub fn values(&self) -> [f64; 14] {
        [
            self.t,
            self.doe,
            self.purity_joint,
            self.purity_a,
            self.purity_b,
            self.entropy_a,
            self.entropy_b,
            self.entropy_joint,
            self.sx,
            self.sy,
            self.sz,
            self.tx,
            self.ty,
            self.tz,
        ]
    }
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.values().iter().map(|&x| fmt_sig(x)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(rows: &[Row]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

fn write_output(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(io_err(p)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn sweep_rows(cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
    Ok(sweep(&cfg.scenario, &cfg.sweep)?
        .iter()
        .map(|r| Row::from_record(r, cfg.entropy_units))
        .collect())
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let cfg = RunConfig::new(
        &args.scenario,
        &args.coupling,
        &args.grid,
        args.entropy_units,
    )?;
    let rows = sweep_rows(&cfg)?;
    let body = match args.format {
        Format::Csv => render_csv(&rows),
        Format::Json => render_json(&rows),
    };
    write_output(args.out.as_deref(), &body)?;
    Ok(EXIT_OK)
}

pub fn measure_row(args: &MeasureArgs) -> Result<Row, CliError> {
    if !args.t.is_finite() {
        return Err(CliError::Config(format!(
            "--t must be finite, got {}",
            args.t
        )));
    }
    let spec = args.scenario.spec();
    let st0 = initial_state(&spec)?;
    let params = args.coupling.params();
    if ![params.alpha1, params.alpha2, params.alpha3]
        .iter()
        .all(|a| a.is_finite())
    {
        return Err(CliError::Config("coupling strengths must be finite".into()));
    }
    let record = record_at(&st0, &params, args.t)?;
    Ok(Row::from_record(&record, args.entropy_units))
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<i32, CliError> {
    let row = measure_row(args)?;
    let mut body = serde_json::to_string_pretty(&row).expect("row serializes");
    body.push('\n');
    write_output(None, &body)?;
    Ok(EXIT_OK)
}

pub fn run_verify(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let grid = SweepConfig::new(
        args.coupling.params(),
        args.grid.t_start,
        args.grid.t_end,
        args.grid.steps,
    )?;
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::Config(format!(
                "--tol must be a non-negative number, got {tol}"
            )));
        }
    }
    let opts = VerifyOptions {
        grid,
        tol_override: args.tol,
        ..VerifyOptions::default()
    };
    Ok(verify(&opts)?)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let report = run_verify(args)?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    fs::write(&args.out, json).map_err(io_err(&args.out))?;
    write_output(
        None,
        &format!("{report}\nreport written to {}\n", args.out.display()),
    )?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// gnuplot script with three stacked panels: DOE, purities, entropies.
pub fn gnuplot_script(cfg: &RunConfig, data: &Path, image: &Path) -> String {
    let p = cfg.sweep.params;
    let units = match cfg.entropy_units {
        EntropyUnits::Nats => "nats",
        EntropyUnits::Bits => "bits",
    };
    let data = data.display().to_string().replace('\'', "''");
    let image = image.display().to_string().replace('\'', "''");
    let mut s = String::new();
    let _ = writeln!(s, "# {:?}", cfg.scenario);
    let _ = writeln!(
        s,
        "# alpha = ({}, {}, {}), t in [{}, {}], {} points",
        fmt_sig(p.alpha1),
        fmt_sig(p.alpha2),
        fmt_sig(p.alpha3),
        fmt_sig(cfg.sweep.t_start),
        fmt_sig(cfg.sweep.t_end),
        cfg.sweep.steps
    );
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 900,1100");
    let _ = writeln!(s, "set output '{image}'");
    let _ = writeln!(
        s,
        "set multiplot layout 3,1 title '{}'",
        cfg.scenario.name()
    );
    let _ = writeln!(s, "set xlabel 'scaled time t'");
    let _ = writeln!(s, "set grid");
    let _ = writeln!(s);
    let _ = writeln!(s, "set ylabel 'DOE'");
    let _ = writeln!(
        s,
        "plot '{data}' skip 1 using 1:2 with lines lw 2 title 'DOE'"
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "set ylabel 'purity'");
    let _ = writeln!(
        s,
        "plot '{data}' skip 1 using 1:4 with lines lw 2 dt 1 title 'purity a', \\\n     '' skip 1 using 1:5 with lines lw 2 dt 3 title 'purity b'"
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "set ylabel 'entropy ({units})'");
    let _ = writeln!(
        s,
        "plot '{data}' skip 1 using 1:6 with lines lw 2 dt 1 title 'entropy a', \\\n     '' skip 1 using 1:7 with lines lw 2 dt 3 title 'entropy b'"
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "unset multiplot");
    s
}

pub fn cmd_plot(args: &PlotArgs) -> Result<i32, CliError> {
    let cfg = RunConfig::new(
        &args.scenario,
        &args.coupling,
        &args.grid,
        args.entropy_units,
    )?;
    let script = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.gp", cfg.scenario.name())));
    let data = script.with_extension("csv");
    let image = script.with_extension("png");
    let rows = sweep_rows(&cfg)?;
    fs::write(&data, render_csv(&rows)).map_err(io_err(&data))?;
    fs::write(&script, gnuplot_script(&cfg, &data, &image)).map_err(io_err(&script))?;
    Ok(EXIT_OK)
}

/// Dispatches a parsed command line and maps errors to exit codes.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.5), "1.5");
        assert_eq!(fmt_sig(6.0), "6");
        assert_eq!(fmt_sig(0.5235987755982988), "0.523598775598");
        assert_eq!(fmt_sig(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(fmt_sig(-1.2e-17), "-1.2e-17");
        assert_eq!(fmt_sig(0.0001234), "0.0001234");
        assert_eq!(fmt_sig(9.99999999999951), "10");
        assert_eq!(fmt_sig(1.0 - 1e-16), "1");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn printed_values_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.0 / 7.0, 1e-9, 0.25e-3] {
            let p = printed(x);
            assert_eq!(fmt_sig(p), fmt_sig(x));
            assert!((p - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn scenario_flags_map_to_specs() {
        let args = ScenarioArgs {
            scenario: ScenarioKind::Class3,
            sx: 0.9,
            tx: 0.1,
            ty: -0.2,
            p: 0.3,
        };
        assert_eq!(
            args.spec(),
            ScenarioSpec::Class3 {
                sx: 0.9,
                tx: 0.1,
                ty: -0.2
            }
        );
        let args = ScenarioArgs {
            scenario: ScenarioKind::Entangled,
            ..args
        };
        assert_eq!(args.spec(), ScenarioSpec::Entangled { p: 0.3 });
    }

    #[test]
    fn entropy_unit_factor() {
        assert_eq!(EntropyUnits::Nats.factor(), 1.0);
        assert!((LN_2 * EntropyUnits::Bits.factor() - 1.0).abs() < 1e-15);
    }
}
