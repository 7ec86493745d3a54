//! `relcat verify`: runs the verification suites and writes a JSON or text report.
//!
//! Exit codes: 0 all PASS, 1 some FAIL, 2 configuration error, 3 some
//! INCONCLUSIVE and no FAIL.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relcat_core::harness::{check_config, replay, run_suite, GenParams, Input, SuiteId, SuiteReport};
use relcat_core::Verdict;

#[derive(Parser)]
#[command(name = "relcat", version, about = "Verification suites for nerves of relative categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite, or all of them, on seeded random instances.
    Verify(VerifyArgs),
    /// Rerun the checks of a suite on a serialized input, such as a FAIL payload.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "max-obj", default_value_t = 3)]
    max_obj: usize,
    #[arg(long = "trunc-p", default_value_t = 2)]
    trunc_p: usize,
    #[arg(long = "trunc-k", default_value_t = 2)]
    trunc_k: usize,
    #[arg(long = "trunc-q", default_value_t = 2)]
    trunc_q: usize,
    #[arg(long = "hom-degree", default_value_t = 1)]
    hom_degree: usize,
    /// Allow cycles between objects (suites S1–S3 only).
    #[arg(long = "no-acyclic")]
    no_acyclic: bool,
}

impl GenArgs {
    fn params(&self) -> GenParams {
        GenParams {
            seed: self.seed,
            max_objects: self.max_obj,
            trunc_p: self.trunc_p,
            trunc_k: self.trunc_k,
            trunc_q: self.trunc_q,
            degree: self.hom_degree,
            acyclic: !self.no_acyclic,
            ..GenParams::default()
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// S1..S8 or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    suite: String,
    /// A serialized simplicial category or simplicial set.
    input: PathBuf,
    #[command(flatten)]
    gen: GenArgs,
}

fn config_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("relcat: {message}");
    ExitCode::from(2)
}

fn exit_for(verdict: Verdict) -> ExitCode {
    ExitCode::from(match verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    })
}

fn suites(arg: &str) -> Result<Vec<SuiteId>, String> {
    if arg.eq_ignore_ascii_case("all") {
        return Ok(SuiteId::ALL.to_vec());
    }
    arg.parse::<SuiteId>().map(|s| vec![s]).map_err(|e| e.to_string())
}

fn verify(args: VerifyArgs) -> ExitCode {
    let ids = match suites(&args.suite) {
        Ok(ids) => ids,
        Err(e) => return config_error(e),
    };
    let params = args.gen.params();
    for &id in &ids {
        if let Err(e) = check_config(id, &params) {
            return config_error(e);
        }
    }
    let mut reports: Vec<SuiteReport> = Vec::with_capacity(ids.len());
    for id in ids {
        match run_suite(id, &params, args.instances) {
            Ok(r) => reports.push(r),
            Err(e) => return config_error(e),
        }
    }
    let rendered = match args.format {
        Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0]),
        Format::Json => serde_json::to_string_pretty(&reports),
        Format::Text => Ok(reports.iter().map(SuiteReport::to_text).collect::<Vec<_>>().join("\n")),
    };
    let mut rendered = rendered.expect("reports serialize");
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                return config_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    exit_for(reports.iter().fold(Verdict::Pass, |acc, r| acc.combine(r.verdict())))
}

fn replay_input(args: ReplayArgs) -> ExitCode {
    let id = match args.suite.parse::<SuiteId>() {
        Ok(id) => id,
        Err(e) => return config_error(e),
    };
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return config_error(format!("cannot read {}: {e}", args.input.display())),
    };
    let input = match Input::from_text(&text) {
        Ok(i) => i,
        Err(e) => return config_error(e),
    };
    let verdicts = replay(id, &args.gen.params(), &input);
    let mut verdict = Verdict::Pass;
    for v in &verdicts {
        println!("{:<12} {}: {}", v.verdict.to_string(), v.check, v.detail.lines().next().unwrap_or(""));
        verdict = verdict.combine(v.verdict);
    }
    exit_for(verdict)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::Replay(args) => replay_input(args),
    }
}
