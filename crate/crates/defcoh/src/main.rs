use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use defcoh::report::Report;
use defcoh::{exit_code, parse_document, render_table, render_tree, run_all, RunOptions, EXIT_INPUT_ERROR};

const SCHEMA: &str = include_str!("schema.json");

#[derive(Parser)]
#[command(name = "defcoh", version, about = "Exact deformation cohomology of 2-vector spaces and finite group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every job and print Betti tables, representatives and verdicts.
    Run(RunArgs),
    /// Run the checks only and print one line per verdict.
    Verify(RunArgs),
    /// Print the job document schema.
    Schema,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Job document (JSON); `-` reads standard input.
    jobfile: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rendering; by default the table is followed by the JSON tree.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads. The report does not depend on this.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Add per-job wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tree,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Schema => {
            print!("{SCHEMA}");
            0
        }
        Command::Run(args) => execute(args, false),
        Command::Verify(args) => execute(args, true),
    };
    ExitCode::from(code as u8)
}

fn execute(args: RunArgs, terse: bool) -> i32 {
    let text = if args.jobfile.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(&args.jobfile)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.jobfile.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let jobs = match parse_document(&text) {
        Ok(jobs) => jobs,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let opts = RunOptions {
        threads: args.jobs,
        timing: args.timing,
        representatives: !terse,
    };
    let report = run_all(&jobs, opts);
    let rendered = if terse {
        match args.format {
            Some(Format::Tree) => render_tree(&verdicts_only(report.clone())),
            _ => render_verdicts(&report),
        }
    } else {
        match args.format {
            Some(Format::Tree) => render_tree(&report),
            Some(Format::Table) => render_table(&report),
            None => format!("{}\n{}", render_table(&report), render_tree(&report)),
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INPUT_ERROR;
            }
        }
        None => print!("{rendered}"),
    }
    exit_code(&report)
}

fn verdicts_only(mut report: Report) -> Report {
    for job in &mut report.jobs {
        job.cohomology.clear();
    }
    report
}

fn render_verdicts(report: &Report) -> String {
    let mut out = String::new();
    for job in &report.jobs {
        for v in &job.checks {
            let name = job.name.as_deref().unwrap_or("-");
            out.push_str(&format!(
                "job {} {} {} {}\n",
                job.index,
                name,
                v.name,
                if v.passed { "pass" } else { "FAIL" }
            ));
            if let Some(w) = &v.witness {
                out.push_str(&format!("    {w}\n"));
            }
        }
    }
    out.push_str(if report.passed { "PASS\n" } else { "FAIL\n" });
    out
}
