use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use koszulkit::xla::Field;

/// A subcommand that produces a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckKoszul,
    Resolve,
    QuadraticDual,
    ExtAlgebra,
    DualCompare,
    AssocGraded,
    CheckWeaklyKoszul,
    ArVerify,
    Tensor,
    Gdual,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckKoszul => "check-koszul",
            Command::Resolve => "resolve",
            Command::QuadraticDual => "quadratic-dual",
            Command::ExtAlgebra => "ext-algebra",
            Command::DualCompare => "dual-compare",
            Command::AssocGraded => "assoc-graded",
            Command::CheckWeaklyKoszul => "check-weakly-koszul",
            Command::ArVerify => "ar-verify",
            Command::Tensor => "tensor",
            Command::Gdual => "gdual",
        }
    }

    fn arity(self) -> usize {
        match self {
            Command::Tensor => 2,
            _ => 1,
        }
    }
}

/// One run: what to compute, on which files, inside which window.
///
/// In a corpus, input paths are relative to the job file and `expect_exit`
/// records the expected exit code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub quasi: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_exit: Option<i32>,
}

/// Exit code 2: the job could not be run as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<koszulkit::Error> for InputError {
    fn from(e: koszulkit::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Input<T> = std::result::Result<T, InputError>;

impl JobSpec {
    pub fn new(command: Command, inputs: Vec<String>) -> JobSpec {
        JobSpec {
            command,
            inputs,
            m: None,
            d: None,
            j_max: None,
            i_max: None,
            field: None,
            seed: None,
            quasi: false,
            output: None,
            expect_exit: None,
        }
    }

    pub fn from_file(path: &Path) -> Input<JobSpec> {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    /// Checks arity and that overrides are positive; returns the parsed field override.
    pub fn validate(&self) -> Input<Option<Field>> {
        let want = self.command.arity();
        if self.inputs.len() != want {
            return Err(InputError(format!(
                "{} takes {want} input file(s), got {}",
                self.command.name(),
                self.inputs.len()
            )));
        }
        for (name, v) in [("m", self.m), ("D", self.d), ("j_max", self.j_max), ("i_max", self.i_max)] {
            if v == Some(0) {
                return Err(InputError(format!("override {name} must be positive")));
            }
        }
        self.field
            .as_deref()
            .map(|f| Field::parse(f).map_err(InputError::from))
            .transpose()
    }

    /// Hom degree, defaulting to 6.
    pub fn hom_degree(&self) -> usize {
        self.m.unwrap_or(6)
    }

    pub fn resolve_input(&self, base_dir: &Path, k: usize) -> PathBuf {
        base_dir.join(&self.inputs[k])
    }
}

pub fn read(path: &Path) -> Input<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}
