//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when `--verify` was
//! given and some anagram relation is not implied by the commutators found.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::ingest::{load_dictionary, SanitizePolicy};
use crate::pipeline::{run, RunConfig};
use crate::report::{emit_presentation, emit_progress, emit_verification, emit_witness_table, ReportFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sanitize {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

/// Compute the anagram group presentation of a word list.
///
/// Output formats default to the file extension (.json, .csv, otherwise
/// text). Without any output path the text presentation goes to stdout.
#[derive(Debug, Clone, Parser)]
#[command(name = "anagram-group", version)]
pub struct CliConfig {
    /// Word list, one word per line.
    #[arg(long = "dict", value_name = "PATH")]
    pub dict_path: PathBuf,

    /// How to treat lines with characters outside a-z.
    #[arg(long, value_enum, default_value_t = Sanitize::Strict)]
    pub sanitize: Sanitize,

    #[arg(long, value_name = "PATH")]
    pub presentation: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub presentation_format: Option<Format>,

    #[arg(long, value_name = "PATH")]
    pub witnesses: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub witnesses_format: Option<Format>,

    #[arg(long, value_name = "PATH")]
    pub progress: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub progress_format: Option<Format>,

    /// Verification report; implies --verify.
    #[arg(long, value_name = "PATH")]
    pub verification: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub verification_format: Option<Format>,

    /// JSON dump of the buckets left after the scan/reduce loop.
    #[arg(long, value_name = "PATH")]
    pub dump_store: Option<PathBuf>,

    #[arg(long, default_value_t = 50)]
    pub max_iterations: u32,

    /// Skip the residual phase.
    #[arg(long)]
    pub no_residual: bool,

    /// Check every anagram relation against the final commutators.
    #[arg(long)]
    pub verify: bool,

    /// Worker threads; 0 or absent means one per core.
    #[arg(long, value_name = "N")]
    pub parallelism: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("output path {0} given more than once")]
    DuplicateOutput(PathBuf),
    #[error(transparent)]
    Ingest(#[from] crate::ingest::IngestError),
    #[error(transparent)]
    Pipeline(#[from] crate::pipeline::PipelineError),
    #[error(transparent)]
    Report(#[from] crate::report::ReportError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliConfig {
    fn outputs(&self) -> impl Iterator<Item = &PathBuf> {
        [&self.presentation, &self.witnesses, &self.progress, &self.verification, &self.dump_store]
            .into_iter()
            .flatten()
    }

    pub fn check(&self) -> Result<(), CliError> {
        let mut seen: Vec<&PathBuf> = Vec::new();
        for p in self.outputs() {
            if seen.contains(&p) {
                return Err(CliError::DuplicateOutput(p.clone()));
            }
            seen.push(p);
        }
        Ok(())
    }

    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            max_iterations: self.max_iterations,
            residual: !self.no_residual,
            verify: self.verify || self.verification.is_some(),
            parallelism: self.parallelism.filter(|&n| n > 0),
            ..RunConfig::default()
        }
    }
}

fn format_for(path: &Path, explicit: Option<Format>) -> ReportFormat {
    explicit.map_or_else(|| ReportFormat::from_path(path), Into::into)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_owned(), source })
}

/// Runs a parsed configuration, returning the exit code.
pub fn execute(config: &CliConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    config.check()?;
    let policy = match config.sanitize {
        Sanitize::Strict => SanitizePolicy::Strict,
        Sanitize::Lenient => SanitizePolicy::Lenient,
    };
    let dict = load_dictionary(&config.dict_path, policy)?;
    if dict.skipped_lines() > 0 {
        eprintln!("skipped {} malformed lines", dict.skipped_lines());
    }
    let result = run(&dict, &config.run_config())?;

    if let Some(path) = &config.presentation {
        write_file(path, &emit_presentation(&result, format_for(path, config.presentation_format))?)?;
    }
    if let Some(path) = &config.witnesses {
        write_file(path, &emit_witness_table(&result, format_for(path, config.witnesses_format))?)?;
    }
    if let Some(path) = &config.progress {
        write_file(path, &emit_progress(&result, format_for(path, config.progress_format))?)?;
    }
    if let (Some(path), Some(report)) = (&config.verification, &result.verification) {
        write_file(path, &emit_verification(report, format_for(path, config.verification_format))?)?;
    }
    if let Some(path) = &config.dump_store {
        let json = serde_json::to_string_pretty(&result.residual_buckets).map_err(crate::report::ReportError::from)?;
        write_file(path, &(json + "\n"))?;
    }
    if config.outputs().next().is_none() {
        let text = emit_presentation(&result, ReportFormat::Text)?;
        stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source })?;
    }

    if let Some(report) = &result.verification {
        if !report.all_relations_implied {
            eprintln!("{} anagram relations are not implied by the commutators found", report.failing_pairs.len());
            for (a, b) in report.failing_pairs.iter().take(10) {
                eprintln!("  {a} = {b}");
            }
            return Ok(EXIT_VERIFICATION_FAILED);
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs; never panics on bad
/// input.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&config, &mut std::io::stdout().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
