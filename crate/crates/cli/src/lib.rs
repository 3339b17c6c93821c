//! The `dh` command line: argument grammar, command execution and reports.

mod commands;
mod corpus;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use report::{Report, Verdict};

#[derive(Debug, Parser)]
#[command(name = "dh", version, about = "Davis complexes, wall hierarchies and Euler invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Largest chain complex, in cells.
    #[arg(long, global = true, env = "DH_MAX_CELLS", value_name = "N",
          default_value_t = dh_core::limits::DEFAULT_MAX_CELLS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cells: u64,

    /// Largest Cayley ball, in group elements.
    #[arg(long, global = true, value_name = "N",
          default_value_t = dh_core::limits::DEFAULT_MAX_CHAMBERS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_chambers: u64,

    /// Memo cap of the word-problem solver.
    #[arg(long, global = true, value_name = "N",
          default_value_t = dh_core::limits::DEFAULT_MEMO_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub memo_cap: u64,

    /// Include per-item detail in reports.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification, Cayley ball census and word reduction.
    Group {
        coxeter: PathBuf,
        #[arg(long, visible_alias = "ball", default_value_t = 2)]
        radius: usize,
        /// A word such as `a.b.a` to reduce.
        #[arg(long)]
        word: Option<String>,
    },
    /// Spherical subsets, the nerve and the manifold check.
    Nerve {
        coxeter: PathBuf,
        /// Dimension `n` of the expected manifold (default: `dim L + 1`).
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<isize>,
    },
    /// The ball of radius `r` in the Davis complex and its wall certificates.
    Davis {
        coxeter: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Also certify this quotient: `mod-p`, `mod-<p>`, `trivial` or `perm:<file>`.
        #[arg(long, conflicts_with = "quotient_file")]
        quotient: Option<String>,
        /// Permutation quotient, one line `s: (1 2)(3 4)` per generator.
        #[arg(long, value_name = "FILE")]
        quotient_file: Option<PathBuf>,
        /// Write the realization as `realization.complex` into this directory.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Cut the ball along Γ-orbit wall classes.
    Hierarchy {
        coxeter: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// `mod-p`, `mod-<p>`, `trivial` or `perm:<file>`.
        #[arg(long, default_value = "mod-3")]
        quotient: String,
        /// Permutation quotient file; overrides `--quotient`.
        #[arg(long, value_name = "FILE")]
        quotient_file: Option<PathBuf>,
        /// Cutting order as class indices, e.g. `2,0,1`.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Run even if the family is not tidy.
        #[arg(long)]
        force: bool,
        /// Write each stage as a complex file into this directory.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Orbifold Euler characteristic and Charney–Davis quantity of the nerve.
    Euler { coxeter: PathBuf },
    /// Charney–Davis quantity of a complex with flag and sphere verdicts.
    CharneyDavis { complex: PathBuf },
    /// The reflection group trick on a manifold with flag boundary.
    Trick {
        manifold: PathBuf,
        #[arg(long)]
        boundary: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value = "mod-3")]
        quotient: String,
        /// Permutation quotient file; overrides `--quotient`.
        #[arg(long, value_name = "FILE")]
        quotient_file: Option<PathBuf>,
    },
    /// Sphere (or disk) certificate of a complex.
    SphereCheck {
        complex: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<isize>,
        #[arg(long)]
        disk: bool,
    },
    /// Integral homology of a complex.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Golden fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Run every fixture and compare with the stored values.
    Run {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(dh_core::Error),
    Io(PathBuf, std::io::Error),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<dh_core::Error> for CliError {
    fn from(e: dh_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Serialize)]
struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient: Option<String>,
    max_cells: u64,
    max_chambers: u64,
    memo_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    out_dir: Option<String>,
    verbose: bool,
}

/// The quotient recipe as given on the command line; a file wins.
pub(crate) fn recipe(quotient: Option<&str>, file: Option<&PathBuf>) -> Option<String> {
    match file {
        Some(f) => Some(format!("perm:{}", f.display())),
        None => quotient.map(str::to_string),
    }
}

impl Cli {
    fn config(&self) -> RunConfig {
        let (radius, quotient, out_dir) = match &self.command {
            Command::Group { radius, .. } => (Some(*radius), None, None),
            Command::Davis {
                radius,
                quotient,
                quotient_file,
                out_dir,
                ..
            } => (
                Some(*radius),
                recipe(quotient.as_deref(), quotient_file.as_ref()),
                out_dir.as_ref().map(|p| p.display().to_string()),
            ),
            Command::Hierarchy {
                radius,
                quotient,
                quotient_file,
                out_dir,
                ..
            } => (
                Some(*radius),
                recipe(Some(quotient), quotient_file.as_ref()),
                out_dir.as_ref().map(|p| p.display().to_string()),
            ),
            Command::Trick {
                radius,
                quotient,
                quotient_file,
                ..
            } => (Some(*radius), recipe(Some(quotient), quotient_file.as_ref()), None),
            _ => (None, None, None),
        };
        RunConfig {
            radius,
            quotient,
            max_cells: self.max_cells,
            max_chambers: self.max_chambers,
            memo_cap: self.memo_cap,
            out_dir,
            verbose: self.verbose,
        }
    }
}

/// Runs a parsed command and builds its report.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<Report, CliError> {
    dh_core::limits::set_max_cells(cli.max_cells as usize);
    dh_core::limits::set_max_chambers(cli.max_chambers as usize);
    let out = commands::dispatch(cli)?;
    Ok(Report {
        command: argv.to_vec(),
        inputs: out.inputs,
        config: serde_json::to_value(cli.config()).expect("config serializes"),
        verdict: Verdict::from_pass(out.pass),
        caveats: out.caveats,
        result: out.result,
    })
}

/// Full command-line behaviour; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let report = match execute(&cli, &argv) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dh: error: {e}");
            return 2;
        }
    };
    let text = report.to_json();
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("dh: error: {}: {e}", path.display());
                return 2;
            }
            println!(
                "{}: {}",
                argv.get(1).map_or("dh", String::as_str),
                if report.verdict == Verdict::Pass { "pass" } else { "fail" }
            );
        }
        None => print!("{text}"),
    }
    match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
    }
}
