//! The `simplicial-hoffman` command line: `analyze`, `verify-catalog` and `spectrum`.
//!
//! Exit status: 0 when everything passes, 1 on a mathematical violation,
//! 2 on usage or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{verify_catalog, Catalog, VerifyOptions};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::invariants::DEFAULT_SEARCH_CAP;
use crate::io::{Closure, ComplexFile};
use crate::report::{analyze, AnalyzeOptions};
use crate::spectra::{spectrum_with_tolerance, OperatorKind, DEFAULT_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "simplicial-hoffman",
    version,
    about = "Spectral bounds on independence and chromatic numbers of simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one complex: regularity, spectra, invariants, bounds.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Leave out the proof diagnostics.
        #[arg(long)]
        no_diagnostics: bool,
    },
    /// Run every applicable check over a catalog (the built-in one when no file is given).
    VerifyCatalog {
        /// Catalog TOML file.
        catalog: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        /// Print the built-in catalog as TOML and exit.
        #[arg(long)]
        print_default: bool,
    },
    /// Sorted eigenvalues of one Laplacian.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        /// Cochain dimension.
        #[arg(short, long)]
        j: usize,
        /// upper, lower or full.
        #[arg(short, long, default_value = "upper")]
        kind: OperatorKind,
        /// Shortest round-trip decimal for every eigenvalue.
        #[arg(long)]
        full_precision: bool,
        /// Spectral tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Replace the seed of a randomized generator.
        #[arg(long)]
        seed_override: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Complex file: one face per line, `#` comments.
    #[arg(required_unless_present = "generator", conflicts_with = "generator")]
    pub input: Option<PathBuf>,
    /// Generator as a TOML inline table, e.g. '{ kind = "complete_complex", n = 5, d = 2 }'.
    #[arg(short, long)]
    pub generator: Option<String>,
    /// Take the file's faces as the whole face set instead of closing them downward.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Largest vertex count for the exact oracles.
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    pub cap: usize,
    /// Spectral tolerance.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Also write the machine-readable report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Skip exact independence and chromatic numbers.
    #[arg(long)]
    pub skip_invariants: bool,
    /// Replace seeds of randomized generators.
    #[arg(long)]
    pub seed_override: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl InputArgs {
    fn load(&self, seed_override: Option<u64>) -> Result<(String, ComplexFile)> {
        match (&self.input, &self.generator) {
            (Some(path), None) => {
                let closure = if self.strict {
                    Closure::Strict
                } else {
                    Closure::Downward
                };
                Ok((
                    path.display().to_string(),
                    ComplexFile::read(path, closure)?,
                ))
            }
            (None, Some(text)) => {
                let mut spec: GeneratorSpec = text.parse()?;
                if let Some(seed) = seed_override {
                    spec = spec.with_seed(seed);
                }
                Ok((spec.to_string(), ComplexFile::from_complex(&spec.build()?)))
            }
            _ => Err(Error::Parameter(
                "give either an input file or --generator".into(),
            )),
        }
    }
}

/// Eigenvalues for display: 12 significant digits, no trailing zeros, tiny values as 0.
pub fn format_eigenvalue(v: f64, scale: f64) -> String {
    if v.abs() <= 1e-9 * scale.max(1.0) {
        return "0".into();
    }
    let digits = 12 - 1 - v.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.max(0) as usize, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn write_json(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Dimension(_) = e {
                let _ = writeln!(
                    err,
                    "hint: the upper operator needs 0 <= j <= dim - 1, the lower 1 <= j <= dim, the full 0 <= j <= dim"
                );
            }
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Analyze {
            input,
            common,
            no_diagnostics,
        } => {
            let (source, file) = input.load(common.seed_override)?;
            let options = AnalyzeOptions {
                cap: common.cap,
                tolerance: common.tol,
                skip_invariants: common.skip_invariants,
                diagnostics: !no_diagnostics,
                jobs: common.jobs,
            };
            let doc = analyze(&source, &file, &options)?;
            for o in &doc.omissions {
                let _ = writeln!(err, "warning: {o}");
            }
            if let Some(path) = &common.json {
                write_json(path, &doc.to_json())?;
            }
            out.write_all(doc.render_text().as_bytes())?;
            Ok(if doc.has_violation() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
        Command::VerifyCatalog {
            catalog,
            common,
            print_default,
        } => {
            if print_default {
                out.write_all(Catalog::default_catalog().to_toml().as_bytes())?;
                return Ok(EXIT_OK);
            }
            let mut catalog = match &catalog {
                Some(path) => Catalog::load(path)?,
                None => Catalog::default_catalog(),
            };
            if let Some(seed) = common.seed_override {
                catalog = catalog.with_seed_override(seed);
            }
            let options = VerifyOptions {
                cap: common.cap,
                tolerance: common.tol,
                skip_invariants: common.skip_invariants,
                jobs: common.jobs,
            };
            let summary = verify_catalog(&catalog, &options);
            for e in &summary.entries {
                for w in &e.warnings {
                    let _ = writeln!(err, "warning: entry {} ({}): {w}", e.position + 1, e.name);
                }
                for v in &e.violations {
                    let _ = writeln!(err, "violation: entry {} ({}): {v}", e.position + 1, e.name);
                }
                if let Some(msg) = &e.error {
                    let _ = writeln!(err, "error: entry {} ({}): {msg}", e.position + 1, e.name);
                }
            }
            if let Some(path) = &common.json {
                let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
                write_json(path, &text)?;
            }
            out.write_all(summary.render_table().as_bytes())?;
            Ok(summary.exit_code())
        }
        Command::Spectrum {
            input,
            j,
            kind,
            full_precision,
            tol,
            seed_override,
        } => {
            let (_, file) = input.load(seed_override)?;
            let sp = spectrum_with_tolerance(&file.complex, j, kind, tol)?;
            let lmax = sp.lambda_max().unwrap_or(0.0);
            let values: Vec<String> = sp
                .eigenvalues
                .iter()
                .map(|&v| {
                    if full_precision {
                        format!("{v:?}")
                    } else {
                        format_eigenvalue(v, lmax)
                    }
                })
                .collect();
            writeln!(out, "{}", values.join(" "))?;
            let shown = if full_precision {
                format!("{lmax:?}")
            } else {
                format_eigenvalue(lmax, lmax)
            };
            writeln!(out, "lambda_max = {shown}")?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["simplicial-hoffman"];
        full.extend_from_slice(args);
        let code = main_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eigenvalue_formatting() {
        assert_eq!(format_eigenvalue(4.000000000000002, 4.0), "4");
        assert_eq!(format_eigenvalue(-3e-16, 4.0), "0");
        assert_eq!(format_eigenvalue(4.414213562373095, 5.0), "4.41421356237");
        assert_eq!(format_eigenvalue(0.5, 1.0), "0.5");
    }

    #[test]
    fn spectrum_of_k4() {
        let (code, out, _) = run_args(&[
            "spectrum",
            "--generator",
            "{ kind = \"complete_complex\", n = 4, d = 1 }",
            "-j",
            "0",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("0 4 4 4"));
    }

    #[test]
    fn spectrum_dimension_error() {
        let (code, _, err) = run_args(&[
            "spectrum",
            "-g",
            "kind = \"complete_complex\", n = 4, d = 1",
            "-j",
            "1",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("hint"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["analyze"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }
}
