//! Suites, configuration and reports for the `verify` runner.

mod config;
mod report;
mod suites;

use std::path::PathBuf;

use clap::Parser;

pub use config::{Format, Suite, SuiteConfig};
pub use report::{Report, Summary};

use crate::qism::TypeTag;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{0}: {1}")]
    Io(PathBuf, String),
    #[error("check id {0} appears twice")]
    Duplicate(String),
}

/// Run the selected suites in order and assemble the report.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, CliError> {
    config.validate()?;
    let mut sections = Vec::new();
    for &suite in &config.suites {
        sections.push((suite, suites::run(suite, config)?));
    }
    Report::new(config.clone(), sections)
}

/// Write the report where the config says, or to stdout.
pub fn emit_report(r: &Report, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => r.write(path, format),
        None => {
            println!("{}", r.render(format));
            Ok(())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "verify", about = "Verify L-operator identities and ladder relations")]
pub struct Args {
    /// TOML file with the same fields as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// qism1 qism2 miller gab envalg pairs strings prop54 jacobi-rank1
    #[arg(long = "suite", num_args = 1.., value_parser = parse_suite)]
    pub suites: Vec<Suite>,
    /// Operator types to keep: A B Cp Dp Cpp genA genCpp (default all)
    #[arg(long = "type", num_args = 1.., value_parser = parse_type)]
    pub types: Vec<TypeTag>,
    /// Working precision in bits; tolerance is 2^(-precision/4) [default: 192]
    #[arg(long)]
    pub precision: Option<usize>,
    /// Basis truncation for banded operators [default: 12]
    #[arg(long)]
    pub degree: Option<u32>,
    /// Sample points per numeric check [default: 5]
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random words in the PBW association test [default: 1000]
    #[arg(long)]
    pub words: Option<usize>,
    /// Report path; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_type(s: &str) -> Result<TypeTag, String> {
    s.parse()
}

impl Args {
    pub fn into_config(self) -> Result<SuiteConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => SuiteConfig::from_file(p)?,
            None => SuiteConfig::default(),
        };
        if !self.suites.is_empty() {
            c.suites = self.suites;
        }
        if !self.types.is_empty() {
            c.types = self.types;
        }
        c.precision = self.precision.unwrap_or(c.precision);
        c.degree = self.degree.unwrap_or(c.degree);
        c.samples = self.samples.unwrap_or(c.samples);
        c.seed = self.seed.unwrap_or(c.seed);
        c.words = self.words.unwrap_or(c.words);
        c.out = self.out.or(c.out);
        c.format = self.format.unwrap_or(c.format);
        Ok(c)
    }
}

/// Parse arguments, run, write the report. Returns the process exit code:
/// 0 when no unflagged check failed, 1 otherwise, 2 on configuration or
/// I/O errors.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = args.into_config().and_then(|c| {
        let r = run_suite(&c)?;
        emit_report(&r, c.format, c.out.as_deref())?;
        Ok(r)
    });
    match result {
        Ok(r) => {
            eprintln!("{} passed, {} failed, {} flagged", r.summary.pass, r.summary.fail, r.summary.flagged);
            i32::from(!r.ok())
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "suites = [\"gab\"]\nprecision = 128\nseed = 4\n").unwrap();
        let args = Args::try_parse_from(["verify", "--config", path.to_str().unwrap(), "--seed", "9"]).unwrap();
        let c = args.into_config().unwrap();
        assert_eq!(c.suites, [Suite::Gab]);
        assert_eq!((c.precision, c.seed), (128, 9));
    }

    #[test]
    fn empty_suites_rejected() {
        assert!(matches!(run_suite(&SuiteConfig::default()), Err(CliError::Config(_))));
    }

    #[test]
    fn low_precision_rejected() {
        let c = SuiteConfig { suites: vec![Suite::Gab], precision: 32, ..Default::default() };
        assert!(run_suite(&c).is_err());
    }

    #[test]
    fn tolerance_follows_precision() {
        let c = SuiteConfig { precision: 96, ..Default::default() };
        assert_eq!(c.tolerance(), 2f64.powi(-24));
    }

    #[test]
    fn parameter_overrides() {
        let c = SuiteConfig::from_toml_str("suites = [\"qism1\"]\n[params.B]\na = \"2/7\"\n").unwrap();
        assert_eq!(c.overrides(TypeTag::B).unwrap().len(), 1);
        let bad = SuiteConfig::from_toml_str("suites = [\"qism1\"]\n[params.B]\nz = \"1\"\n").unwrap();
        assert!(bad.validate().is_err());
    }
}
