//! Command-line front end. Exit codes: 0 when every check passes, 1 when at
//! least one check fails, 2 for usage errors, empty sweeps, and points
//! skipped by a ceiling without `--allow-skip`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::acceptance;
use crate::dominoes::{DominoFamily, Orientation, Variant};
use crate::matrices::{Classification, ColumnChoice, MatrixConfig, MatrixFamily};
use crate::ominoes::OminoFamily;
use crate::verifier::{
    cases, write_csv, write_json, write_text, Ceilings, Family, IntRange, KRange, Mode, Options, Status, Summary,
    SweepRanges, Verifier,
};
use crate::InvolutionOutcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sun-identity", version, about = "Exact verification of Sun's binomial identity and its generalization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one family over a parameter sweep.
    Verify {
        /// eq3, eq4, eq5, eq6, eq6_special, master1 or master2.
        family: Family,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the original (1) or generalized (2) identity as polynomials in x.
    Master {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the fixed points of an involution.
    ShowFixed {
        kind: Kind,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Apply an involution to one configuration and show both sides.
    Trace {
        kind: Kind,
        #[command(flatten)]
        family: FamilyArgs,
        /// Configuration text, e.g. "W B B W W W [..] W | B" or "0u10 / 1110".
        #[arg(long)]
        config: String,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Dominoes,
    Ominoes,
    Matrices,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Sun3,
    Sun4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Pivot {
    Last,
    First,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Value or range a..b.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    m: IntRange,
    /// Value or range; the upper end may be the symbol m.
    #[arg(long, default_value = "0..m")]
    k: KRange,
    #[arg(long)]
    b: Option<IntRange>,
    #[arg(long)]
    q: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<IntRange>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value = "all")]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
    /// Largest domino or omino ground set to enumerate.
    #[arg(long, default_value_t = Ceilings::default().max_ground)]
    ceiling: usize,
    /// Largest m to enumerate for the matrix family.
    #[arg(long, default_value_t = Ceilings::default().max_matrix_m)]
    matrix_ceiling: u32,
    #[arg(long, default_value = "bw")]
    orientation: Orientation,
    /// Report points beyond a ceiling as skipped instead of failing.
    #[arg(long)]
    allow_skip: bool,
    /// Include elapsed times in JSON output.
    #[arg(long)]
    timings: bool,
    /// Pivot column of the second matrix step; `first` is a known-bad variant.
    #[arg(long, value_enum, default_value_t = Pivot::Last)]
    pivot: Pivot,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    b: u32,
    #[arg(long, default_value_t = 1)]
    q: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Sun3)]
    variant: VariantArg,
    #[arg(long, default_value = "bw")]
    orientation: Orientation,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CliResult = Result<i32, Box<dyn std::error::Error>>;

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Verify { family, sweep, run } => verify(family, &sweep, &run, out, err),
        Command::Master { which, sweep, run } => {
            let family = if which == 1 { Family::Master1 } else { Family::Master2 };
            verify(family, &sweep, &run, out, err)
        }
        Command::ShowFixed { kind, family } => show_fixed(kind, &family, out),
        Command::Trace { kind, family, config } => trace(kind, &family, &config, out),
        Command::Selftest { jobs } => {
            let results = acceptance::run_all(jobs);
            for r in &results {
                writeln!(out, "{r}")?;
            }
            Ok(if results.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn verify(family: Family, sweep: &SweepArgs, run: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let ranges = SweepRanges {
        m: sweep.m,
        k: sweep.k,
        b: sweep.b,
        q: sweep.q,
        x: sweep.x,
        y: sweep.y,
        z: sweep.z,
    };
    let case_list = cases(family, &ranges, run.mode)?;
    let verifier = Verifier::new(Options {
        orientation: run.orientation,
        ceilings: Ceilings {
            max_ground: run.ceiling,
            max_matrix_m: run.matrix_ceiling,
        },
        column_choice: match run.pivot {
            Pivot::Last => ColumnChoice::Last,
            Pivot::First => ColumnChoice::First,
        },
    });
    let reports = verifier.sweep(&case_list, run.jobs);

    let mut file;
    let sink: &mut dyn Write = match &run.out {
        Some(path) => {
            file = io::BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    match run.format {
        Format::Json => write_json(&reports, run.timings, &mut *sink)?,
        Format::Csv => write_csv(&reports, &mut *sink)?,
        Format::Text => write_text(&reports, &mut *sink)?,
    }
    sink.flush()?;

    let summary = Summary::of(&reports);
    if summary.mismatch > 0 {
        return Ok(EXIT_MISMATCH);
    }
    if summary.skipped > 0 && !run.allow_skip {
        let first = reports.iter().find(|r| r.status == Status::Skipped).expect("counted");
        writeln!(
            err,
            "error: {} point(s) exceed a ceiling, first {} {}: {}; raise the ceiling or pass --allow-skip",
            summary.skipped,
            first.case.family,
            first.case.params,
            first.reason.as_deref().unwrap_or("")
        )?;
        return Ok(EXIT_USAGE);
    }
    Ok(EXIT_OK)
}

fn variant(arg: VariantArg) -> Variant {
    match arg {
        VariantArg::Sun3 => Variant::Sun3,
        VariantArg::Sun4 => Variant::Sun4,
    }
}

fn show_fixed(kind: Kind, f: &FamilyArgs, out: &mut dyn Write) -> CliResult {
    let lines: Vec<String> = match kind {
        Kind::Dominoes => {
            let fam = DominoFamily::new(variant(f.variant), f.m, f.k, f.b)?;
            let fixed = fam.fixed_points(f.orientation);
            let mut lines: Vec<String> = fixed.iter().map(|c| format!("{:+}  {c}", c.weight())).collect();
            lines.push(format!("{} fixed points (closed form {})", fixed.len(), fam.fixed_count_closed()));
            lines
        }
        Kind::Ominoes => {
            let fam = OminoFamily::new(f.m, f.k, f.b, f.q)?;
            let fixed = fam.fixed_points();
            let mut lines: Vec<String> = fixed.iter().map(|c| format!("{:+}  {c}", c.weight())).collect();
            lines.push(format!("{} fixed points (closed form {})", fixed.len(), fam.fixed_count_closed()));
            lines
        }
        Kind::Matrices => {
            let fam = MatrixFamily::new(f.m, f.k)?;
            let survivors = fam.survivors();
            let mut lines: Vec<String> = survivors
                .iter()
                .map(|c| {
                    let kind = match c.classify() {
                        Classification::Survivor(kind) => format!("{kind:?}"),
                        Classification::Killed { step, .. } => format!("killed at step {step}"),
                    };
                    format!("{}  {c}  {kind}", c.weight())
                })
                .collect();
            lines.push(format!(
                "{} survivors, total {} (closed form {})",
                survivors.len(),
                survivors
                    .iter()
                    .fold(crate::exact::QPoly::zero(crate::exact::Var::Q), |acc, c| &acc + &c.weight().to_poly()),
                fam.survivor_total_closed()
            ));
            lines
        }
    };
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(EXIT_OK)
}

fn trace_line<C: std::fmt::Display>(
    out: &mut dyn Write,
    config: &C,
    weight: i32,
    outcome: InvolutionOutcome<C>,
    partner_weight: impl Fn(&C) -> i32,
) -> io::Result<()> {
    writeln!(out, "config:  {config}")?;
    writeln!(out, "weight:  {weight:+}")?;
    match outcome {
        InvolutionOutcome::Fixed => writeln!(out, "fixed point"),
        InvolutionOutcome::Moved { partner, site, kind } => {
            writeln!(out, "toggle:  {kind:?} at position {site}")?;
            writeln!(out, "partner: {partner}")?;
            writeln!(out, "weight:  {:+}", partner_weight(&partner))
        }
    }
}

fn trace(kind: Kind, f: &FamilyArgs, text: &str, out: &mut dyn Write) -> CliResult {
    match kind {
        Kind::Dominoes => {
            let fam = DominoFamily::new(variant(f.variant), f.m, f.k, f.b)?;
            let c = fam.parse(text)?;
            trace_line(out, &c, c.weight(), c.involute(f.orientation), |p| p.weight())?;
        }
        Kind::Ominoes => {
            let fam = OminoFamily::new(f.m, f.k, f.b, f.q)?;
            let c = fam.parse(text)?;
            trace_line(out, &c, c.weight(), c.involute(), |p| p.weight())?;
        }
        Kind::Matrices => {
            let c: MatrixConfig = text.parse()?;
            writeln!(out, "config:  {c}")?;
            writeln!(out, "weight:  {}", c.weight())?;
            writeln!(
                out,
                "sets:    K={:?} J={:?} A={:?} B={:?}",
                c.k_set(),
                c.j_set(),
                c.a_set(),
                c.b_set()
            )?;
            match c.classify() {
                Classification::Survivor(kind) => writeln!(out, "survivor ({kind:?})")?,
                Classification::Killed { step, partner } => {
                    writeln!(out, "step:    {step}")?;
                    writeln!(out, "partner: {partner}")?;
                    writeln!(out, "weight:  {}", partner.weight())?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}
