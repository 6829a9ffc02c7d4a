use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use similar::TextDiff;

use crate::commands::run;
use crate::job::{Input, InputError, JobSpec};

const JOB_SUFFIX: &str = ".job.json";
const GOLDEN_SUFFIX: &str = ".golden.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Outcome {
    Green,
    Red { reasons: Vec<String>, diff: Option<String> },
    Missing { exit: i32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct JobOutcome {
    pub job: String,
    pub exit: i32,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub jobs: usize,
    pub green: usize,
    pub red: usize,
    pub missing_golden: usize,
    pub outcomes: Vec<JobOutcome>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.red == 0 {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.jobs == 0 {
            s.push_str("corpus: 0 jobs\n");
            return s;
        }
        let _ = writeln!(
            s,
            "corpus: {} jobs, {} green, {} red, {} missing golden",
            self.jobs, self.green, self.red, self.missing_golden
        );
        for o in &self.outcomes {
            match &o.outcome {
                Outcome::Green => {
                    let _ = writeln!(s, "  ok      {}", o.job);
                }
                Outcome::Missing { exit } => {
                    let _ = writeln!(s, "  MISSING {} (no golden; exit {exit})", o.job);
                }
                Outcome::Red { reasons, diff } => {
                    let _ = writeln!(s, "  RED     {}: {}", o.job, reasons.join("; "));
                    if let Some(d) = diff {
                        s.push_str(d);
                    }
                }
            }
        }
        s
    }
}

fn job_files(dir: &Path) -> Input<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(JOB_SUFFIX)))
        .collect();
    files.sort();
    Ok(files)
}

fn job_name(path: &Path) -> String {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    name.trim_end_matches(JOB_SUFFIX).to_string()
}

/// Runs a job file; returns its exit code and report text (`None` on exit 2).
pub fn run_job_file(path: &Path) -> (i32, Option<String>, Option<String>) {
    let dir = path.parent().unwrap_or(Path::new("."));
    match JobSpec::from_file(path).and_then(|job| run(&job, dir)) {
        Ok(report) => (report.exit_code(), Some(report.to_text()), None),
        Err(e) => (2, None, Some(e.0)),
    }
}

/// Runs every `*.job.json` in `dir` and compares reports with the
/// `*.golden.json` next to them byte for byte. `bless` rewrites goldens.
pub fn corpus_verify(dir: &Path, bless: bool) -> Input<CorpusSummary> {
    let files = job_files(dir)?;
    let outcomes: Vec<JobOutcome> = files
        .par_iter()
        .map(|path| {
            let job = job_name(path);
            let expected = JobSpec::from_file(path).ok().and_then(|j| j.expect_exit);
            let (exit, report, error) = run_job_file(path);
            let golden_path = dir.join(format!("{job}{GOLDEN_SUFFIX}"));
            let mut reasons = Vec::new();
            if let Some(want) = expected {
                if want != exit {
                    reasons.push(format!("exit {exit}, expected {want}"));
                }
            }
            if let Some(e) = error {
                if expected != Some(2) {
                    reasons.push(e);
                }
            }
            let mut diff = None;
            if let Some(text) = &report {
                if bless {
                    if let Err(e) = std::fs::write(&golden_path, text) {
                        reasons.push(format!("cannot write golden: {e}"));
                    }
                }
                match std::fs::read_to_string(&golden_path) {
                    Ok(golden) if &golden == text => {}
                    Ok(golden) => {
                        reasons.push("report differs from golden".into());
                        let d = TextDiff::from_lines(&golden, text)
                            .unified_diff()
                            .header(&format!("{job}{GOLDEN_SUFFIX}"), "report")
                            .to_string();
                        diff = Some(d);
                    }
                    Err(_) if reasons.is_empty() => {
                        return JobOutcome {
                            job,
                            exit,
                            outcome: Outcome::Missing { exit },
                        }
                    }
                    Err(_) => {}
                }
            }
            let outcome = if reasons.is_empty() { Outcome::Green } else { Outcome::Red { reasons, diff } };
            JobOutcome { job, exit, outcome }
        })
        .collect();
    let count = |f: fn(&Outcome) -> bool| outcomes.iter().filter(|o| f(&o.outcome)).count();
    Ok(CorpusSummary {
        jobs: outcomes.len(),
        green: count(|o| matches!(o, Outcome::Green)),
        red: count(|o| matches!(o, Outcome::Red { .. })),
        missing_golden: count(|o| matches!(o, Outcome::Missing { .. })),
        outcomes,
    })
}
