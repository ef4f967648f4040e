//! The `ews` command-line front end.
//!
//! Exit codes: 0 member/true, 1 non-member/false, 2 undecided, 64 usage or
//! malformed input, 66 unreadable input file, 73 unwritable output file.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::appt::{appt_min_eig, is_appt_with_tol};
use crate::error::{Error, Result};
use crate::feasibility::{decide_conv_dbp, Budget, MembershipVerdict};
use crate::linalg::BipartiteOperator;
use crate::orderings::enumerate_orderings;
use crate::qubit_qudit::{conv_bp2n_margin, conv_bp2n_member_c, conv_bp2n_member_d_with_tol};
use crate::spectrum::Spectrum;
use crate::two_qubit::{bp22_slacks, is_bp22_spectrum_with_tol};
use crate::witnesses::{
    necessary_battery, probe_block_positivity, sample_records, DEFAULT_ITERS, DEFAULT_RESTARTS,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

/// Largest number of grid points `region` will emit.
const MAX_GRID_POINTS: usize = 20_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "ews",
    version,
    about = "Spectral membership tests for entanglement witnesses"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Absolute tolerance for the closed-form and APPT tests.
    #[arg(long, global = true, env = "EWS_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Seed for sampling and probing.
    #[arg(long, global = true, env = "EWS_SEED", default_value_t = 0)]
    seed: u64,
    /// Cutting-plane rounds for `check --mode convdbp`, restarts for `verify`.
    #[arg(long, global = true, env = "EWS_BUDGET")]
    budget: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide membership of a spectrum.
    Check(CheckArgs),
    /// Export the trace-one two-qubit region as CSV.
    Region(RegionArgs),
    /// Count or export the Schmidt-product orderings.
    Orderings(OrderingsArgs),
    /// Locate the membership threshold of a named family.
    Bisect(BisectArgs),
    /// Sample decomposable witnesses as JSONL.
    Sample(SampleArgs),
    /// Battery and block-positivity probe for a matrix file.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Bp22,
    Conv2n,
    Convdbp,
    Appt,
    Battery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "example-4.2")]
    Example42,
    #[value(name = "example-5.3")]
    Example53,
    #[value(name = "bp22-corner")]
    Bp22Corner,
}

impl Family {
    fn spectrum(self, c: f64) -> Result<Spectrum> {
        match self {
            Family::Example42 => crate::qubit_qudit::golden_family(c),
            Family::Example53 => {
                Spectrum::new(3, 3, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, c])
            }
            Family::Bp22Corner => Spectrum::new(2, 2, vec![1.0, 1.0, 1.0, c]),
        }
    }

    fn default_mode(self) -> Mode {
        match self {
            Family::Example42 => Mode::Conv2n,
            Family::Example53 => Mode::Convdbp,
            Family::Bp22Corner => Mode::Bp22,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Example42 => "example-4.2",
            Family::Example53 => "example-5.3",
            Family::Bp22Corner => "bp22-corner",
        }
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Spectrum as JSON, as a tuple such as `(4,2,1,-2)`, or a file path.
    #[arg(allow_hyphen_values = true, conflicts_with_all = ["family", "file"])]
    spectrum: Option<String>,
    /// Read the spectrum from a file.
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Dimensions `MxN` for tuple input.
    #[arg(long)]
    dims: Option<String>,
    /// Use a built-in family at parameter `--param`.
    #[arg(long, value_enum, requires = "param")]
    family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    param: Option<f64>,
    /// Include the decomposable-only bound in `--mode battery`.
    #[arg(long)]
    decomposable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Exact,
    Convexhull,
}

#[derive(Debug, Args)]
struct RegionArgs {
    /// Only `2x2` is supported.
    #[arg(long, default_value = "2x2")]
    dims: String,
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    #[arg(long, value_enum, default_value_t = Which::Convexhull)]
    which: Which,
    /// Upper end of the grid for each of mu1, mu2, mu3.
    #[arg(long, default_value_t = 1.0)]
    max: f64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OrderingsArgs {
    #[arg(long)]
    m: usize,
    /// Print only the number of orderings.
    #[arg(long, conflicts_with = "export")]
    count: bool,
    /// Write the orderings as JSON to this path.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BisectArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(allow_hyphen_values = true)]
    lo: f64,
    #[arg(allow_hyphen_values = true)]
    hi: f64,
    /// Membership test; defaults to the natural one for the family.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    dims: String,
    #[arg(long)]
    count: usize,
    /// Ranks `RX,RY` of the two Wishart factors; defaults to full rank.
    #[arg(long)]
    ranks: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Matrix JSON file.
    matrix: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ITERS)]
    iters: usize,
    /// Include the decomposable-only bound in the battery.
    #[arg(long)]
    decomposable: bool,
}

enum Failure {
    Usage(String),
    NoInput(String),
    CantCreate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_TRUE
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(&cli.global, a, out),
        Command::Region(a) => region(a, out),
        Command::Orderings(a) => orderings_cmd(a, out),
        Command::Bisect(a) => bisect(&cli.global, a, out),
        Command::Sample(a) => sample(&cli.global, a, out),
        Command::Verify(a) => verify(&cli.global, a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::NoInput(m) => (EXIT_NO_INPUT, m),
                Failure::CantCreate(m) => (EXIT_CANT_CREATE, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round12(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

fn emit(out: &mut dyn Write, v: Value) -> std::result::Result<(), Failure> {
    writeln!(out, "{}", round_value(v)).map_err(|e| Failure::CantCreate(e.to_string()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::NoInput(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::CantCreate(format!("cannot write {}: {e}", path.display())))
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("dimensions must look like 2x3, got {s:?}"));
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if m == 0 || n == 0 {
        return Err(bad());
    }
    Ok((m, n))
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("expected two integers like 1,2, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_tuple(text: &str) -> std::result::Result<Vec<f64>, Failure> {
    let cleaned = text.trim().replace('\u{2212}', "-");
    let inner = cleaned
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("cannot parse {t:?} as a number")))
        })
        .collect()
}

fn infer_dims(len: usize, mode: Mode) -> Option<(usize, usize)> {
    match mode {
        Mode::Bp22 => Some((2, 2)),
        Mode::Conv2n if len.is_multiple_of(2) => Some((2, len / 2)),
        _ => {
            let k = (len as f64).sqrt().round() as usize;
            (k * k == len).then_some((k, k))
        }
    }
}

fn spectrum_from_text(
    text: &str,
    dims: Option<(usize, usize)>,
    mode: Mode,
) -> std::result::Result<Spectrum, Failure> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let s: Spectrum = serde_json::from_str(trimmed)
            .map_err(|e| Failure::Usage(format!("malformed spectrum JSON: {e}")))?;
        if let Some((m, n)) = dims {
            if (m, n) != s.dims() {
                return Err(Failure::Usage(format!(
                    "--dims {m}x{n} disagrees with the JSON dimensions"
                )));
            }
        }
        return Ok(s);
    }
    let values = parse_tuple(trimmed)?;
    let (m, n) = dims
        .or_else(|| infer_dims(values.len(), mode))
        .ok_or_else(|| Failure::Usage("cannot infer dimensions; pass --dims MxN".into()))?;
    Ok(Spectrum::new(m, n, values)?)
}

fn check_input(a: &CheckArgs) -> std::result::Result<Spectrum, Failure> {
    let dims = a.dims.as_deref().map(parse_dims).transpose()?;
    if let Some(f) = a.family {
        let c = a.param.expect("required by clap");
        return Ok(f.spectrum(c)?);
    }
    let text = match (&a.file, &a.spectrum) {
        (Some(path), _) => read_file(path)?,
        (None, Some(s)) => {
            let p = Path::new(s);
            let looks_inline = s.trim_start().starts_with(['{', '(', '[', '-', '\u{2212}'])
                || s.trim_start().starts_with(|c: char| c.is_ascii_digit());
            if !looks_inline || p.is_file() {
                read_file(p)?
            } else {
                s.clone()
            }
        }
        (None, None) => {
            return Err(Failure::Usage(
                "give a spectrum, --file or --family with --param".into(),
            ))
        }
    };
    spectrum_from_text(&text, dims, a.mode)
}

fn verdict_code(member: bool) -> i32 {
    if member {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn verdict_word(member: bool) -> &'static str {
    if member {
        "member"
    } else {
        "non-member"
    }
}

fn budget_for(g: &Global) -> Budget {
    let mut b = Budget::default();
    if let Some(r) = g.budget {
        b.lp_rounds = r.max(1);
    }
    b
}

/// Runs one membership test and returns the JSON report with its exit code.
fn decide(g: &Global, mode: Mode, s: &Spectrum, decomposable: bool) -> Result<(Value, i32)> {
    let base = json!({
        "mode": mode_name(mode),
        "dims": [s.dims().0, s.dims().1],
        "spectrum": s.values(),
    });
    let mut report = base.as_object().expect("object").clone();
    let code = match mode {
        Mode::Bp22 => {
            let member = is_bp22_spectrum_with_tol(s, g.tol)?;
            report.insert("verdict".into(), verdict_word(member).into());
            report.insert("slacks".into(), to_value(&bp22_slacks(s)?));
            verdict_code(member)
        }
        Mode::Conv2n => {
            let member = conv_bp2n_member_d_with_tol(s, g.tol)?;
            report.insert("verdict".into(), verdict_word(member).into());
            report.insert("margin".into(), conv_bp2n_margin(s)?.into());
            if let Some(x) = conv_bp2n_member_c(s)? {
                report.insert("certificate".into(), json!({ "X": to_value(&x) }));
            }
            verdict_code(member)
        }
        Mode::Convdbp => {
            let verdict = decide_conv_dbp(s, &budget_for(g))?;
            match &verdict {
                MembershipVerdict::Member(_) | MembershipVerdict::NonMember(_) => {
                    report.insert("verdict".into(), verdict_word(verdict.is_member()).into());
                    let cert = verdict.certificate().expect("decided");
                    report.insert("certificate".into(), to_value(&cert));
                    verdict_code(verdict.is_member())
                }
                MembershipVerdict::Undecided {
                    iterations,
                    lower_bound,
                    worst_slack,
                } => {
                    report.insert("verdict".into(), "undecided".into());
                    report.insert("iterations".into(), (*iterations).into());
                    report.insert("lower_bound".into(), finite_or_null(*lower_bound));
                    report.insert("worst_slack".into(), finite_or_null(*worst_slack));
                    EXIT_UNDECIDED
                }
            }
        }
        Mode::Appt => {
            let appt = is_appt_with_tol(s, g.tol)?;
            report.insert("appt".into(), appt.into());
            report.insert("min_eig".into(), appt_min_eig(s)?.into());
            verdict_code(appt)
        }
        Mode::Battery => {
            let r = necessary_battery(s, decomposable);
            report.insert("passed".into(), r.all_passed().into());
            report.insert("battery".into(), to_value(&r));
            verdict_code(r.all_passed())
        }
    };
    Ok((Value::Object(report), code))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        x.into()
    } else {
        Value::Null
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Bp22 => "bp22",
        Mode::Conv2n => "conv2n",
        Mode::Convdbp => "convdbp",
        Mode::Appt => "appt",
        Mode::Battery => "battery",
    }
}

fn check(g: &Global, a: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let s = check_input(a)?;
    let (report, code) = decide(g, a.mode, &s, a.decomposable)?;
    emit(out, report)?;
    Ok(code)
}

/// Label of a trace-one two-qubit point; the spectrum is sorted by the
/// membership tests themselves.
pub fn region_label(mu: [f64; 3], hull: bool, tol: f64) -> Result<&'static str> {
    let s = Spectrum::new(2, 2, vec![mu[0], mu[1], mu[2], 1.0 - mu[0] - mu[1] - mu[2]])?;
    if is_bp22_spectrum_with_tol(&s, tol)? {
        Ok("green")
    } else if hull && conv_bp2n_member_d_with_tol(&s, tol)? {
        Ok("orange")
    } else {
        Ok("outside")
    }
}

fn region(a: &RegionArgs, out: &mut dyn Write) -> CmdResult {
    if parse_dims(&a.dims)? != (2, 2) {
        return Err(Failure::Usage(
            "region export supports only --dims 2x2".into(),
        ));
    }
    if !(a.step.is_finite() && a.step > 0.0) || !(a.max.is_finite() && a.max > 0.0) {
        return Err(Failure::Usage("--step and --max must be positive".into()));
    }
    let k = (a.max / a.step + 1e-9).floor() as usize;
    if (k + 1).saturating_pow(3) > MAX_GRID_POINTS {
        return Err(Failure::Usage(format!(
            "step {} gives too many grid points",
            a.step
        )));
    }
    let hull = a.which == Which::Convexhull;
    let mut csv = String::from("mu1,mu2,mu3,label\n");
    for i in 0..=k {
        for j in 0..=k {
            for l in 0..=k {
                let mu = [i, j, l].map(|t| round12(t as f64 * a.step));
                let label = region_label(mu, hull, 1e-9)?;
                let _ = writeln!(csv, "{},{},{},{label}", mu[0], mu[1], mu[2]);
            }
        }
    }
    match &a.out {
        Some(path) => write_file(path, &csv)?,
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| Failure::CantCreate(e.to_string()))?,
    }
    Ok(EXIT_TRUE)
}

fn orderings_cmd(a: &OrderingsArgs, out: &mut dyn Write) -> CmdResult {
    let list = enumerate_orderings(a.m)?;
    if a.count {
        writeln!(out, "{}", list.len()).map_err(|e| Failure::CantCreate(e.to_string()))?;
        return Ok(EXIT_TRUE);
    }
    let text = serde_json::to_string(&list).expect("serializable");
    match &a.export {
        Some(path) => write_file(path, &(text + "\n"))?,
        None => writeln!(out, "{text}").map_err(|e| Failure::CantCreate(e.to_string()))?,
    }
    Ok(EXIT_TRUE)
}

fn bisect(g: &Global, a: &BisectArgs, out: &mut dyn Write) -> CmdResult {
    let mode = a.mode.unwrap_or(a.family.default_mode());
    if mode == Mode::Battery {
        return Err(Failure::Usage("bisect needs a membership mode".into()));
    }
    let member = |s: &Spectrum| -> Result<bool> { Ok(decide(g, mode, s, false)?.1 == EXIT_TRUE) };
    let family = a.family;
    let c = crate::qubit_qudit::threshold_bisect(|c| family.spectrum(c), member, a.lo, a.hi)?;
    emit(
        out,
        json!({
            "family": family.name(),
            "mode": mode_name(mode),
            "threshold": c,
        }),
    )?;
    Ok(EXIT_TRUE)
}

fn sample(g: &Global, a: &SampleArgs, out: &mut dyn Write) -> CmdResult {
    let dims = parse_dims(&a.dims)?;
    let full = dims.0 * dims.1;
    let ranks = a
        .ranks
        .as_deref()
        .map(parse_pair)
        .transpose()?
        .unwrap_or((full, full));
    let mut text = String::new();
    for r in sample_records(dims, ranks, g.seed, a.count)? {
        let line = round_value(to_value(&r));
        let _ = writeln!(text, "{line}");
    }
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::CantCreate(e.to_string()))?,
    }
    Ok(EXIT_TRUE)
}

fn verify(g: &Global, a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let text = read_file(&a.matrix)?;
    let w: BipartiteOperator = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("malformed matrix JSON: {e}")))?;
    let (m, n) = w.dims();
    let s = Spectrum::new(m, n, w.eigvals())?;
    let battery = necessary_battery(&s, a.decomposable);
    let restarts = g.budget.unwrap_or(DEFAULT_RESTARTS);
    let probe = probe_block_positivity(&w, restarts, a.iters, g.seed)?;
    let violated = probe.value < -1e-8 * s.tolerance_scale();
    emit(
        out,
        json!({
            "dims": [m, n],
            "spectrum": s.values(),
            "battery": to_value(&battery),
            "battery_passed": battery.all_passed(),
            "probe": {
                "value": probe.value,
                "outcome": if violated { "violation found" } else { "no violation found" },
                "a": probe.a.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "b": probe.b.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            },
        }),
    )?;
    Ok(verdict_code(battery.all_passed() && !violated))
}
