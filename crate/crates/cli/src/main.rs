mod commands;
mod corpus;
mod explain;
mod job;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use job::{Command, InputError, JobSpec};

#[derive(Parser)]
#[command(name = "koszulkit", version, about = "Koszul certificates for graded quiver categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Args)]
struct Common {
    /// Input file(s): presentation, module, algebra or translation quiver.
    #[arg(required = true)]
    inputs: Vec<String>,
    /// Homological degree.
    #[arg(short = 'm')]
    m: Option<usize>,
    /// Internal degree (truncation) override.
    #[arg(short = 'D')]
    d: Option<usize>,
    /// `Q` or `Fp:<p>`.
    #[arg(long)]
    field: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(short = 'o')]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    j_max: Option<usize>,
    #[arg(long)]
    i_max: Option<usize>,
    /// Check only `i = 1` (quasi-Koszul).
    #[arg(long)]
    quasi: bool,
}

#[derive(Subcommand)]
enum Sub {
    CheckKoszul(Common),
    Resolve(Common),
    QuadraticDual(Common),
    ExtAlgebra(Common),
    DualCompare(Common),
    AssocGraded(Common),
    CheckWeaklyKoszul(Common),
    ArVerify(Common),
    Tensor(Common),
    Gdual(Common),
    /// Run a job file.
    Run {
        job: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run every job in a directory and diff reports against goldens.
    CorpusVerify {
        dir: PathBuf,
        /// Rewrite golden files from the current reports.
        #[arg(long)]
        bless: bool,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Render a report as text.
    Explain { report: PathBuf },
}

fn job_of(command: Command, c: Common) -> (JobSpec, Option<PathBuf>) {
    let mut job = JobSpec::new(command, c.inputs);
    job.m = c.m;
    job.d = c.d;
    job.field = c.field;
    job.seed = c.seed;
    job.j_max = c.j_max;
    job.i_max = c.i_max;
    job.quasi = c.quasi;
    (job, c.output)
}

fn write_out(output: Option<&Path>, text: &str, line: &str) -> Result<(), InputError> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            println!("{line}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(job: &JobSpec, base_dir: &Path, output: Option<&Path>) -> Result<i32, InputError> {
    let report = commands::run(job, base_dir)?;
    write_out(output, &report.to_text(), &report.summary)?;
    Ok(report.exit_code())
}

fn configure_threads() -> Result<(), InputError> {
    if let Ok(v) = std::env::var("KOSZULKIT_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| InputError(format!("KOSZULKIT_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| InputError(e.to_string()))?;
    }
    Ok(())
}

fn main_inner(cli: Cli) -> Result<i32, InputError> {
    configure_threads()?;
    let here = Path::new("");
    let (command, common) = match cli.cmd {
        Sub::CheckKoszul(c) => (Command::CheckKoszul, c),
        Sub::Resolve(c) => (Command::Resolve, c),
        Sub::QuadraticDual(c) => (Command::QuadraticDual, c),
        Sub::ExtAlgebra(c) => (Command::ExtAlgebra, c),
        Sub::DualCompare(c) => (Command::DualCompare, c),
        Sub::AssocGraded(c) => (Command::AssocGraded, c),
        Sub::CheckWeaklyKoszul(c) => (Command::CheckWeaklyKoszul, c),
        Sub::ArVerify(c) => (Command::ArVerify, c),
        Sub::Tensor(c) => (Command::Tensor, c),
        Sub::Gdual(c) => (Command::Gdual, c),
        Sub::Run { job, output } => {
            let spec = JobSpec::from_file(&job)?;
            let dir = job.parent().unwrap_or(here);
            let out = output.or_else(|| spec.output.as_ref().map(|o| dir.join(o)));
            return execute(&spec, dir, out.as_deref());
        }
        Sub::CorpusVerify { dir, bless, output } => {
            let summary = corpus::corpus_verify(&dir, bless)?;
            let rendered = summary.render();
            match output {
                Some(path) => {
                    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
                    text.push('\n');
                    std::fs::write(&path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    print!("{rendered}");
                }
                None => print!("{rendered}"),
            }
            return Ok(summary.exit_code());
        }
        Sub::Explain { report } => {
            print!("{}", explain::explain(&job::read(&report)?)?);
            return Ok(0);
        }
    };
    let (job, output) = job_of(command, common);
    execute(&job, here, output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
