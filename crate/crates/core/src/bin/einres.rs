use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use einstein_residue::verify::random::RandomOptions;
use einstein_residue::verify::report::{campaign, lemma, run_case, Report, VerifyOptions};
use einstein_residue::verify::selftest::selftest;
use einstein_residue::verify::spec_file::load_geometry;
use einstein_residue::EngineError;

#[derive(Parser)]
#[command(name = "einres", version, about = "Exact residue densities of the Einstein functional")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Args)]
struct ReportFlags {
    /// Compare each H-term and list the part-one summands.
    #[arg(long)]
    per_term: bool,
    /// Treat any difference from the printed formulas as a failure.
    #[arg(long)]
    strict_paper: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one geometry file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// Verify seeded random geometries.
    Campaign {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Bound on numerators and denominators of random entries.
        #[arg(long, default_value_t = 3)]
        magnitude: i64,
        /// Use constant vector fields.
        #[arg(long)]
        constant_fields: bool,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// Run one self-test suite: traces, moments, jets or oracle.
    Selftest {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Evaluate one printed equation on a geometry file.
    Lemma { eq_id: String, file: PathBuf },
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Markdown => print!("{}", report.to_markdown()),
        Format::Csv => print!("{}", report.to_csv()),
    }
}

fn options(flags: &ReportFlags) -> VerifyOptions {
    VerifyOptions { per_term: flags.per_term, strict_paper: flags.strict_paper }
}

fn run(cli: Cli) -> Result<i32, EngineError> {
    match cli.command {
        Command::Verify { file, flags } => {
            let loaded = load_geometry(&file)?;
            if loaded.geometry.m == 4 {
                eprintln!("warning: m = 4 uses 16x16 matrices and is slow");
            }
            let label = file.display().to_string();
            let case = run_case(&label, None, &loaded.geometry, loaded.t_eval.as_ref(), &options(&flags))?;
            let report = Report::new("verify", None, flags.strict_paper, vec![case]);
            emit(&report, flags.format);
            Ok(report.exit_code())
        }
        Command::Campaign { m, seed, cases, magnitude, constant_fields, flags } => {
            let random = RandomOptions { magnitude, constant_fields, zero_y: false };
            let report = campaign(m, seed, cases, &random, &options(&flags))?;
            emit(&report, flags.format);
            Ok(report.exit_code())
        }
        Command::Selftest { suite, seed, cases } => {
            let report = selftest(&suite, seed, cases)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Lemma { eq_id, file } => {
            let loaded = load_geometry(&file)?;
            let report = lemma(&eq_id, &loaded.geometry)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
