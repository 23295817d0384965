//! Command-line front end for the `side-diameter` library.
//!
//! [`run`] is the whole program: it parses `argv`, writes the payload to
//! `out` and diagnostics to `err`, and returns the exit code (0 success,
//! 1 domain error, 2 usage error). `main.rs` only wires it to the process.

use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use side_diameter::identity::catalog_entry;
use side_diameter::{
    babylonian_preimage, compare_methods, correct_digits, decimal_truncated, generate,
    identity_catalog, nth, nth_iterative, ratio, trace_elegant, verify_identity, Int, Method,
    NamedIdentity, Rat, SideDiameterPair, CSV_HEADER,
};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// CSV header of `gen --format csv`.
pub const PAIR_CSV_HEADER: &str = "n,a,d,e,ratio_decimal,correct_digits";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "sdn",
    version,
    about = "Side-and-diameter numbers: generation, identities, derivation traces and sqrt(2) approximation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Babylonian,
    Sd,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Babylonian => Method::Babylonian,
            MethodArg::Sd => Method::SideDiameter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxAction {
    Step,
    Preimage,
    Digits,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the first N pairs.
    Gen {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Decimal places of the ratio d/a (also the cap on correct digits).
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Print the N-th pair as `a,d`.
    Nth {
        n: u64,
        /// Use the linear-time step loop instead of fast doubling.
        #[arg(long)]
        iterative: bool,
        /// Also compute the pair the other way and compare.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Verify catalog identities symbolically.
    Verify(VerifyArgs),
    /// Derivation trace for a pair, given as `A D` or by index.
    Trace {
        #[arg(value_parser = parse_int, num_args = 0..=2)]
        pair: Vec<Int>,
        #[arg(long, conflicts_with = "pair")]
        n: Option<u64>,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Single-value approximation queries.
    Approx {
        #[arg(value_enum)]
        action: ApproxAction,
        #[arg(value_parser = parse_rat, allow_hyphen_values = true)]
        value: Rat,
        #[arg(long, value_enum, default_value = "babylonian")]
        method: MethodArg,
        /// Upper bound for `digits`.
        #[arg(long, default_value_t = 1000)]
        cap: u32,
    },
    /// Run both iterations side by side.
    Compare {
        #[arg(long, value_parser = parse_rat, default_value = "1")]
        start: Rat,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[arg(long, default_value_t = 10_000)]
        cap: u32,
    },
    /// Time fast doubling against the step loop.
    Bench {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        reps: u32,
        /// Skip the linear-time loop (useful for very large N).
        #[arg(long)]
        no_iterative: bool,
        /// Put timings on stdout too (they always go to stderr).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifyArgs {
    #[arg(long)]
    identity: Option<String>,
    #[arg(long)]
    all: bool,
}

fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    Rat::from_str(s).map_err(|e| e.to_string())
}

fn parse_int(s: &str) -> std::result::Result<Int, String> {
    Int::from_str(s).map_err(|_| format!("`{s}` is not an integer"))
}

/// One row of `gen` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub n: u64,
    pub a: String,
    pub d: String,
    pub e: i8,
    pub ratio_decimal: String,
    pub correct_digits: u32,
}

impl PairRow {
    pub fn from_pair(p: &SideDiameterPair, digits: usize) -> Result<Self> {
        let t = ratio(p);
        let cap = u32::try_from(digits).unwrap_or(u32::MAX);
        Ok(PairRow {
            n: p.index().unwrap_or_default(),
            a: p.side().to_string(),
            d: p.diameter().to_string(),
            e: p.sign().as_i8(),
            ratio_decimal: decimal_truncated(&t, digits),
            correct_digits: correct_digits(&t, cap).map_err(CliError::domain)?,
        })
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.a, self.d, self.e, self.ratio_decimal, self.correct_digits
        )
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen {
            count,
            format,
            digits,
        } => cmd_gen(count, format, digits, out),
        Command::Nth {
            n,
            iterative,
            check_oracle,
        } => cmd_nth(n, iterative, check_oracle, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Trace { pair, n, pretty } => cmd_trace(pair, n, pretty, out),
        Command::Approx {
            action,
            value,
            method,
            cap,
        } => cmd_approx(action, &value, method.into(), cap, out),
        Command::Compare {
            start,
            steps,
            format,
            digits,
            cap,
        } => cmd_compare(&start, steps, format, digits, cap, out),
        Command::Bench {
            n,
            reps,
            no_iterative,
            timing,
        } => cmd_bench(n, reps, !no_iterative, timing, out, err),
    }
}

fn require_positive_count(count: u64, what: &str) -> Result<()> {
    if count == 0 {
        Err(CliError::Usage(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_gen(count: usize, format: Format, digits: usize, out: &mut dyn Write) -> Result<()> {
    require_positive_count(count as u64, "--count")?;
    let rows = generate(count)
        .map_err(CliError::domain)?
        .iter()
        .map(|p| PairRow::from_pair(p, digits))
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Csv => {
            writeln!(out, "{PAIR_CSV_HEADER}")?;
            for row in &rows {
                writeln!(out, "{}", row.csv_line())?;
            }
        }
        Format::Json => write_json(out, &rows)?,
    }
    Ok(())
}

fn cmd_nth(n: u64, iterative: bool, check_oracle: bool, out: &mut dyn Write) -> Result<()> {
    require_positive_count(n, "N")?;
    let compute = |slow: bool| if slow { nth_iterative(n) } else { nth(n) };
    let pair = compute(iterative).map_err(CliError::domain)?;
    writeln!(out, "{},{}", pair.side(), pair.diameter())?;
    if check_oracle {
        let other = compute(!iterative).map_err(CliError::domain)?;
        let other_name = if iterative {
            "fast doubling"
        } else {
            "iterative"
        };
        if other != pair {
            return Err(CliError::Domain(format!(
                "oracle mismatch: {other_name} gives {},{}",
                other.side(),
                other.diameter()
            )));
        }
        writeln!(out, "oracle: match ({other_name})")?;
    }
    Ok(())
}

fn verify_line(id: &NamedIdentity) -> Result<String> {
    let ok = verify_identity(&id.lhs, &id.rhs).map_err(CliError::domain)?;
    let status = if ok { "OK" } else { "FAIL" };
    Ok(format!("{status} {}: {} = {}", id.name, id.lhs, id.rhs))
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let identities = match args.identity {
        Some(name) => vec![catalog_entry(&name).ok_or_else(|| {
            let names: Vec<_> = identity_catalog().iter().map(|i| i.name).collect();
            CliError::Usage(format!(
                "unknown identity `{name}`; known: {}",
                names.join(", ")
            ))
        })?],
        None => identity_catalog(),
    };
    let mut failed = Vec::new();
    for id in &identities {
        let line = verify_line(id)?;
        if !line.starts_with("OK") {
            failed.push(id.name);
        }
        writeln!(out, "{line}")?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "identity check failed: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_trace(pair: Vec<Int>, n: Option<u64>, pretty: bool, out: &mut dyn Write) -> Result<()> {
    let p = match (pair.as_slice(), n) {
        ([a, d], None) => SideDiameterPair::new(a.clone(), d.clone()).map_err(CliError::domain)?,
        ([], Some(k)) => {
            require_positive_count(k, "--n")?;
            nth(k).map_err(CliError::domain)?
        }
        _ => {
            return Err(CliError::Usage(
                "trace takes either two integers A D or --n K".into(),
            ))
        }
    };
    let trace = trace_elegant(&p);
    if pretty {
        write!(out, "{trace}")?;
    } else {
        write_json(out, &trace.record())?;
    }
    Ok(())
}

fn format_set(values: &[Rat]) -> String {
    let items: Vec<String> = values.iter().map(Rat::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_approx(
    action: ApproxAction,
    value: &Rat,
    method: Method,
    cap: u32,
    out: &mut dyn Write,
) -> Result<()> {
    match action {
        ApproxAction::Step => {
            let next = method.step(value).map_err(CliError::domain)?;
            writeln!(out, "{next}")?;
        }
        ApproxAction::Preimage => {
            if method != Method::Babylonian {
                return Err(CliError::Usage(
                    "preimage is only defined for --method babylonian".into(),
                ));
            }
            let pre = babylonian_preimage(value).map_err(CliError::domain)?;
            if pre.is_empty() {
                writeln!(
                    out,
                    "{{}} (empty: no positive rational x with (x + 2/x)/2 = {value})"
                )?;
            } else {
                writeln!(out, "{}", format_set(&pre))?;
            }
        }
        ApproxAction::Digits => {
            let k = correct_digits(value, cap).map_err(CliError::domain)?;
            writeln!(out, "{k}")?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareRecord {
    babylonian: side_diameter::ReportRecord,
    side_diameter: side_diameter::ReportRecord,
}

fn cmd_compare(
    start: &Rat,
    steps: u64,
    format: Format,
    digits: usize,
    cap: u32,
    out: &mut dyn Write,
) -> Result<()> {
    let (bab, sd) = compare_methods(start, steps, cap).map_err(CliError::domain)?;
    match format {
        Format::Csv => {
            writeln!(out, "method,{CSV_HEADER}")?;
            for report in [&bab, &sd] {
                for row in report.record(digits).rows {
                    writeln!(out, "{},{}", report.method, row.csv_line())?;
                }
            }
        }
        Format::Json => write_json(
            out,
            &CompareRecord {
                babylonian: bab.record(digits),
                side_diameter: sd.record(digits),
            },
        )?,
    }
    Ok(())
}

fn cmd_bench(
    n: u64,
    reps: u32,
    with_iterative: bool,
    timing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    require_positive_count(n, "--n")?;
    require_positive_count(u64::from(reps), "--reps")?;

    let time = |f: &dyn Fn() -> SideDiameterPair| -> (SideDiameterPair, Vec<Duration>) {
        let mut result = None;
        let times = (0..reps)
            .map(|_| {
                let start = Instant::now();
                let p = f();
                let elapsed = start.elapsed();
                result = Some(p);
                elapsed
            })
            .collect();
        (result.expect("at least one rep"), times)
    };

    let (fast, fast_times) = time(&|| nth(n).expect("n >= 1"));
    writeln!(out, "n={n}")?;
    writeln!(out, "a_digits={}", fast.side().to_string().len())?;
    writeln!(out, "d_digits={}", fast.diameter().to_string().len())?;

    let mut timing_lines = vec![timing_line("fast_doubling", &fast_times)];
    if with_iterative {
        let (slow, slow_times) = time(&|| nth_iterative(n).expect("n >= 1"));
        let verdict = if slow == fast { "match" } else { "mismatch" };
        writeln!(out, "oracle={verdict}")?;
        timing_lines.push(timing_line("iterative", &slow_times));
        if slow != fast {
            return Err(CliError::Domain(
                "fast doubling disagrees with the step loop".into(),
            ));
        }
    } else {
        writeln!(out, "oracle=skipped")?;
    }
    for line in &timing_lines {
        writeln!(err, "{line}")?;
        if timing {
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}

fn timing_line(label: &str, times: &[Duration]) -> String {
    let best = times.iter().min().copied().unwrap_or_default();
    let total: Duration = times.iter().sum();
    let mean = total / times.len().max(1) as u32;
    format!(
        "time_{label}: best={:.6}s mean={:.6}s reps={}",
        best.as_secs_f64(),
        mean.as_secs_f64(),
        times.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sdn").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_csv_default_digits() {
        let (code, out, _) = run_str(&["gen", "--count", "2", "--digits", "4"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "n,a,d,e,ratio_decimal,correct_digits\n1,1,1,-1,1.0000,0\n2,2,3,1,1.5000,1\n"
        );
    }

    #[test]
    fn zero_count_is_usage_error() {
        assert_eq!(run_str(&["gen", "--count", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["nth", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bench", "--n", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn nth_iterative_flag() {
        let (code, out, _) = run_str(&["nth", "6", "--iterative", "--check-oracle"]);
        assert_eq!(code, 0);
        assert_eq!(out, "70,99\noracle: match (fast doubling)\n");
    }

    #[test]
    fn verify_all_lists_every_identity() {
        let (code, out, _) = run_str(&["verify", "--all"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        assert!(out.lines().all(|l| l.starts_with("OK ")));
    }

    #[test]
    fn verify_needs_exactly_one_selector() {
        assert_eq!(run_str(&["verify"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["verify", "--all", "--identity", "euclid_II_10"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = run_str(&["verify", "--identity", "euclid_II_11"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("euclid_II_10"));
    }

    #[test]
    fn trace_forms() {
        let (code, out, _) = run_str(&["trace", "2", "3", "--pretty"]);
        assert_eq!(code, 0);
        assert!(out.contains("V.19-subtraction"));
        let (code, by_index, _) = run_str(&["trace", "--n", "2"]);
        assert_eq!(code, 0);
        let (_, by_pair, _) = run_str(&["trace", "2", "3"]);
        assert_eq!(by_index, by_pair);
        assert_eq!(run_str(&["trace", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["trace"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["trace", "2", "3", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["trace", "4", "6"]).0, EXIT_DOMAIN);
        assert_eq!(run_str(&["trace", "x", "6"]).0, EXIT_USAGE);
    }

    #[test]
    fn approx_actions() {
        assert_eq!(run_str(&["approx", "step", "3/2"]).1, "17/12\n");
        assert_eq!(
            run_str(&["approx", "step", "3/2", "--method", "sd"]).1,
            "7/5\n"
        );
        assert_eq!(run_str(&["approx", "preimage", "17/12"]).1, "{4/3, 3/2}\n");
        assert_eq!(run_str(&["approx", "digits", "577/408"]).1, "5\n");
        assert_eq!(run_str(&["approx", "step", "0"]).0, EXIT_DOMAIN);
        assert_eq!(run_str(&["approx", "step", "-1/2"]).0, EXIT_DOMAIN);
        assert_eq!(run_str(&["approx", "step", "1/0"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["approx", "preimage", "7/5", "--method", "sd"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_str(&["approx", "root", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn compare_csv_has_method_column() {
        let (code, out, _) =
            run_str(&["compare", "--start", "3/2", "--steps", "2", "--digits", "3"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "method,step,value_num,value_den,decimal_value,correct_digits,side\n\
             babylonian,1,17,12,1.416,2,over\n\
             babylonian,2,577,408,1.414,5,over\n\
             side_diameter,1,7,5,1.400,1,under\n\
             side_diameter,2,17,12,1.416,2,over\n"
        );
    }

    #[test]
    fn compare_defaults_to_one() {
        let (code, out, _) = run_str(&["compare", "--steps", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["babylonian"]["start"], "1");
        assert_eq!(v["babylonian"]["rows"][0]["value_num"], "3");
        assert_eq!(v["side_diameter"]["rows"][0]["side"], "over");
    }

    #[test]
    fn bench_payload_is_deterministic() {
        let (code, out, err) = run_str(&["bench", "--n", "1000", "--reps", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n=1000\na_digits=383\nd_digits=383\noracle=match\n");
        assert!(err.contains("time_fast_doubling"));
        let (_, out, _) = run_str(&["bench", "--n", "1000", "--no-iterative", "--timing"]);
        assert!(out.contains("oracle=skipped") && out.contains("time_fast_doubling"));
    }

    #[test]
    fn unknown_verb_and_flag() {
        let (code, out, err) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("Usage"));
        assert_eq!(run_str(&["gen", "--count", "3", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("gen"));
    }
}
