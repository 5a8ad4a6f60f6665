//! Command-line front end.
//!
//! [`parse_args`] turns argv into a validated [`RunConfig`]; [`run`] executes
//! it and returns a [`SuiteReport`] with the process exit code
//! (`0` all checks pass, `1` some check fails, `2` usage error).

pub mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{bracket, GenIndex};
use crate::error::{Error, Result};
use crate::ring::{classical_value, specialize_pq};
use crate::subalgebra::{analyze, canonical_basis, canonical_coeff};
pub use suites::{Level, ResultEntry};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "pqvir", version, about = "Exact checks for the (p,q)-deformed Virasoro-Witt n-algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Structure constant of one bracket of generators.
    Bracket(BracketArgs),
    /// Identity sweeps and acceptance suites.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Oscillator relations and oracle-vs-closed-form sweeps.
    OracleCheck(WindowArgs),
    /// n-Lie subalgebras spanned by generators.
    Subalgebra {
        #[command(subcommand)]
        action: SubalgebraCommand,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BracketArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated generator indices.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub indices: Vec<GenIndex>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Sweep all tuples in `[-window, window]`.
    #[arg(long)]
    pub window: Option<GenIndex>,
    /// Check one explicit tuple instead of sweeping.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub indices: Option<Vec<GenIndex>>,
    /// Sample this many seeded tuples instead of sweeping exhaustively.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FiArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Run the even-n counterexample construction (expects a nonzero residual).
    #[arg(long)]
    pub paper_counterexample: bool,
    /// Search `[-window, window]` for a violation (expects one to exist).
    #[arg(long)]
    pub window: Option<GenIndex>,
    /// `n - 1` indices of Y followed by `n` indices of X.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub indices: Option<Vec<GenIndex>>,
    /// Expectation for an explicit `--indices` check.
    #[arg(long, value_enum, default_value_t = Expect::Zero)]
    pub expect: Expect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Zero,
    Nonzero,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WindowArgs {
    #[arg(long, default_value_t = 2)]
    pub window: GenIndex,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AllArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Desk)]
    pub level: LevelArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelArg {
    Desk,
    Smoke,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "check")]
pub enum VerifyCommand {
    Skew(SweepArgs),
    ShJacobi(SweepArgs),
    Fi(FiArgs),
    Jacobi2(WindowArgs),
    QJacobi(WindowArgs),
    Limits(WindowArgs),
    ClosedForm(SweepArgs),
    /// Every acceptance criterion, one result per criterion.
    All(AllArgs),
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
pub enum SubalgebraCommand {
    /// Enumerate subalgebras in `[-window, window]`.
    Search {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        window: GenIndex,
    },
    /// Analyze one index set.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        indices: Vec<GenIndex>,
    },
    /// The canonical n-dimensional subalgebra.
    Canonical {
        #[arg(long)]
        n: usize,
    },
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Why argv was rejected.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help, version, or a clap parse error; clap renders it.
    #[error("{0}")]
    Clap(#[from] clap::Error),
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => EXIT_PASS,
            _ => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_n(n: usize, min: usize) -> std::result::Result<(), CliError> {
    if n < min {
        return Err(usage(format!("--n must be at least {min}")));
    }
    Ok(())
}

fn check_window(w: GenIndex) -> std::result::Result<(), CliError> {
    if w < 0 {
        return Err(usage("--window must be non-negative"));
    }
    Ok(())
}

impl RunConfig {
    fn validate(&self) -> std::result::Result<(), CliError> {
        if self.threads == Some(0) {
            return Err(usage("--threads must be positive"));
        }
        match &self.command {
            Command::Bracket(a) => {
                check_n(a.n, 2)?;
                if a.indices.len() != a.n {
                    return Err(usage(format!("bracket needs exactly {} indices, got {}", a.n, a.indices.len())));
                }
            }
            Command::Verify { check } => match check {
                VerifyCommand::Skew(a) | VerifyCommand::ClosedForm(a) => {
                    check_n(a.n, if matches!(check, VerifyCommand::Skew(_)) { 2 } else { 3 })?;
                    if let Some(w) = a.window {
                        check_window(w)?;
                    }
                    if let Some(i) = &a.indices {
                        if i.len() != a.n {
                            return Err(usage(format!("needs exactly {} indices, got {}", a.n, i.len())));
                        }
                    }
                }
                VerifyCommand::ShJacobi(a) => {
                    check_n(a.n, 2)?;
                    if let Some(w) = a.window {
                        check_window(w)?;
                    }
                    if let Some(i) = &a.indices {
                        if i.len() != 2 * a.n - 1 {
                            return Err(usage(format!(
                                "sh-jacobi needs 2n-1 = {} indices, got {}",
                                2 * a.n - 1,
                                i.len()
                            )));
                        }
                    }
                }
                VerifyCommand::Fi(a) => {
                    check_n(a.n, 2)?;
                    let modes = a.paper_counterexample as u8 + a.window.is_some() as u8 + a.indices.is_some() as u8;
                    if modes != 1 {
                        return Err(usage("fi needs exactly one of --paper-counterexample, --window, --indices"));
                    }
                    if a.paper_counterexample && (a.n < 4 || a.n % 2 != 0) {
                        return Err(usage("--paper-counterexample needs even n >= 4"));
                    }
                    if let Some(w) = a.window {
                        check_window(w)?;
                    }
                    if let Some(i) = &a.indices {
                        if i.len() != 2 * a.n - 1 {
                            return Err(usage(format!(
                                "fi needs (n-1) + n = {} indices, got {}",
                                2 * a.n - 1,
                                i.len()
                            )));
                        }
                    }
                }
                VerifyCommand::Jacobi2(a) | VerifyCommand::QJacobi(a) | VerifyCommand::Limits(a) => {
                    check_window(a.window)?
                }
                VerifyCommand::All(_) => {}
            },
            Command::OracleCheck(a) => check_window(a.window)?,
            Command::Subalgebra { action } => match action {
                SubalgebraCommand::Search { n, window } => {
                    check_n(*n, 3)?;
                    check_window(*window)?;
                    if 2 * window + 1 < *n as GenIndex {
                        return Err(usage("window too small for n"));
                    }
                }
                SubalgebraCommand::Check { n, indices } => {
                    check_n(*n, 3)?;
                    if indices.len() < *n || !indices.windows(2).all(|w| w[0] < w[1]) {
                        return Err(usage(format!("--indices must be at least {n} strictly increasing values")));
                    }
                }
                SubalgebraCommand::Canonical { n } => check_n(*n, 3)?,
            },
        }
        Ok(())
    }

    /// The command serialized with nested subcommands flattened into one object.
    fn flat_command(&self) -> serde_json::Map<String, Value> {
        let v = serde_json::to_value(&self.command).expect("command serializes");
        let Value::Object(mut m) = v else { unreachable!("commands serialize as objects") };
        for key in ["check", "action"] {
            if let Some(Value::Object(inner)) = m.remove(key) {
                m.extend(inner);
            }
        }
        m
    }

    /// Stable command name, such as `verify sh-jacobi`.
    pub fn command_name(&self) -> String {
        let m = self.flat_command();
        ["command", "check", "action"]
            .iter()
            .filter_map(|k| m.get(*k).and_then(Value::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parameters echoed in reports. Excludes output and thread count, which
    /// do not affect results.
    pub fn params(&self) -> Value {
        let mut m = self.flat_command();
        for key in ["command", "check", "action"] {
            m.remove(key);
        }
        Value::Object(m)
    }
}

/// Parses argv (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let cfg = RunConfig { command: cli.command, format: cli.format, output: cli.output, threads: cli.threads };
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

/// Everything a run produced. `wall_time` is kept out of the JSON so that
/// reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub results: Vec<ResultEntry>,
    pub summary: Summary,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} ({})\n", self.command, self.params);
        for r in &self.results {
            let v = if r.passed() { "PASS" } else { "FAIL" };
            s.push_str(&format!("{v} {} {} residual: {}\n", r.kind, r.input, r.residual));
        }
        s.push_str(&format!(
            "summary: {} pass, {} fail ({:.2}s)\n",
            self.summary.pass,
            self.summary.fail,
            self.wall_time.as_secs_f64()
        ));
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn explicit_or_window(a: &SweepArgs, len: usize, default_w: GenIndex, distinct: bool) -> Vec<Vec<GenIndex>> {
    if let Some(i) = &a.indices {
        return vec![i.clone()];
    }
    let w = a.window.unwrap_or(default_w);
    if let Some(k) = a.samples {
        return suites::sampled_tuples(a.seed, k, w, len);
    }
    if distinct {
        suites::distinct_tuples(-w, w, len)
    } else {
        suites::all_tuples(-w, w, len)
    }
}

fn bracket_entries(a: &BracketArgs) -> Result<Vec<ResultEntry>> {
    let t = bracket(&a.indices)?;
    let input = json!({ "indices": a.indices, "index": t.index });
    let spec = specialize_pq(&t.coeff);
    let classical = match classical_value(&spec) {
        Ok(v) => v.to_string(),
        Err(e) => format!("{e}"),
    };
    Ok(vec![
        ResultEntry::new("bracket", input.clone(), t.coeff.to_text(), true),
        ResultEntry::new("bracket-q", input.clone(), spec.to_text(), true),
        ResultEntry::new("bracket-classical", input, classical, true),
    ])
}

fn subalgebra_entries(action: &SubalgebraCommand) -> Result<Vec<ResultEntry>> {
    let report_entry = |s: &[GenIndex], n: usize, want_iso: bool| -> Result<ResultEntry> {
        let r = analyze(s, n)?;
        let ok = r.is_subalgebra() && (!want_iso || r.iso_canonical == Some(true));
        let input = serde_json::to_value(&r).expect("report serializes");
        let residual = r.residual.clone().or_else(|| r.coeff.clone()).unwrap_or_else(|| "0".into());
        Ok(ResultEntry::new("subalgebra", input, residual, ok))
    };
    match action {
        SubalgebraCommand::Search { n, window } => Ok(suites::search_suite(*n, *window)),
        SubalgebraCommand::Check { n, indices } => Ok(vec![report_entry(indices, *n, indices.len() == *n)?]),
        SubalgebraCommand::Canonical { n } => {
            let b = canonical_basis(*n)?;
            canonical_coeff(*n)?;
            Ok(vec![report_entry(&b, *n, true)?])
        }
    }
}

fn verify_entries(check: &VerifyCommand) -> Result<Vec<ResultEntry>> {
    Ok(match check {
        VerifyCommand::Skew(a) => suites::skew_suite(&explicit_or_window(a, a.n, 2, false)),
        VerifyCommand::ShJacobi(a) => suites::sh_jacobi_suite(a.n, &explicit_or_window(a, 2 * a.n - 1, 1, false)),
        VerifyCommand::ClosedForm(a) => {
            let distinct = a.n >= 4;
            suites::closed_form_suite(a.n, &explicit_or_window(a, a.n, 2, distinct))
        }
        VerifyCommand::Fi(a) => {
            if a.paper_counterexample {
                vec![suites::fi_counterexample_entry(a.n)]
            } else if let Some(w) = a.window {
                vec![suites::fi_search_entry(a.n, w)]
            } else {
                let i = a.indices.as_ref().expect("validated");
                vec![suites::fi_entry(&i[..a.n - 1], &i[a.n - 1..], a.expect == Expect::Nonzero)]
            }
        }
        VerifyCommand::Jacobi2(a) => suites::pq_jacobi_suite(a.window),
        VerifyCommand::QJacobi(a) => suites::q_jacobi_suite(a.window),
        VerifyCommand::Limits(a) => {
            let mut e = suites::bracket2_limits_suite(a.window);
            let w = a.window.min(2);
            e.extend(suites::odd_limits_suite(&crate::identities::combinations(&(-w..=w).collect::<Vec<_>>(), 3)));
            e.extend(suites::classical_jacobi_suite(a.window.min(3)));
            e
        }
        VerifyCommand::All(a) => {
            let level = match a.level {
                LevelArg::Desk => Level::Desk,
                LevelArg::Smoke => Level::Smoke,
            };
            suites::CRITERIA.iter().map(|&(id, _)| suites::run_criterion(id, level, a.seed).summary_entry()).collect()
        }
    })
}

fn entries(cfg: &RunConfig) -> Result<Vec<ResultEntry>> {
    match &cfg.command {
        Command::Bracket(a) => bracket_entries(a),
        Command::Verify { check } => verify_entries(check),
        Command::OracleCheck(a) => {
            let mut e = suites::oscillator_suite();
            e.extend(suites::bracket2_suite(a.window));
            e.extend(suites::closed_form_suite(3, &suites::all_tuples(-a.window, a.window, 3)));
            Ok(e)
        }
        Command::Subalgebra { action } => subalgebra_entries(action),
    }
}

/// Executes a validated config. Library errors surface as `Err`.
pub fn run(cfg: &RunConfig) -> Result<(SuiteReport, i32)> {
    let start = Instant::now();
    let results = match cfg.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(|| entries(cfg))?,
        None => entries(cfg)?,
    };
    let pass = results.iter().filter(|r| r.passed()).count();
    let report = SuiteReport {
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command_name(),
        params: cfg.params(),
        summary: Summary { pass, fail: results.len() - pass },
        results,
        wall_time: start.elapsed(),
    };
    let code = report.exit_code();
    Ok((report, code))
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Full CLI entry: parse, run, emit. Returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let (report, code) = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let out = report.render(cfg.format);
    match &cfg.output {
        Some(p) => {
            if let Err(e) = write_atomic(p, &out) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_FAIL;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    return EXIT_FAIL;
                }
            }
        }
    }
    code
}
