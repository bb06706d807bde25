//! The `rectdesign` command line.
//!
//! Exit codes: 0 clean, 1 verification failure (or a rejected parameter set),
//! 2 input error, 3 construction input the methods cannot handle.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analyze::{analysis_report, self_dual_check, semi_regular_suite};
use crate::construct::recipe::{build, Recipe, RecipeContext};
use crate::design::{classify, spectrum, DesignDescriptor, RDParams};
use crate::error::Error;
use crate::search::enumerate_candidates;
use crate::tables::{run_table, summarize, Table};
use crate::Design;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rectdesign", version, about = "Construct, verify and classify rectangular designs")]
pub struct Cli {
    /// Output format (only plain text is implemented).
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a design from a recipe such as `thm6 t=2`.
    Construct {
        /// Method followed by key=value arguments.
        #[arg(required = true, num_args = 1..)]
        recipe: Vec<String>,
        /// Write the design file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Difference scheme file for scheme-based recipes without `ds=`.
        #[arg(long)]
        ds: Option<PathBuf>,
        /// MOLS file for `thm7` without `q=` or `mols=`.
        #[arg(long)]
        mols: Option<PathBuf>,
    },
    /// Check a design file against its header.
    Verify { file: PathBuf },
    /// Spectrum and class of a design file or of a parameter list.
    Classify {
        file: Option<PathBuf>,
        /// `v b r k l1 l2 l3 m n`, instead of a file.
        #[arg(long, num_args = 9, value_names = ["V", "B", "R", "K", "L1", "L2", "L3", "M", "N"])]
        params: Option<Vec<u64>>,
    },
    /// Verify a design file and print the full analysis.
    Analyze { file: PathBuf },
    /// Enumerate feasible symmetric parameter sets on `v` treatments.
    Search {
        #[arg(long)]
        v: u64,
        /// A single block size (overrides --k-min/--k-max).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 2)]
        k_min: u64,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
    },
    /// Rebuild a bundled table and compare each row.
    Tables {
        #[arg(value_parser = ["t4", "t5", "s6"])]
        which: String,
        /// Difference scheme file used in place of a search of the same shape.
        #[arg(long)]
        ds: Option<PathBuf>,
    },
}

/// Map an error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_)
        | Error::Ineligible(_)
        | Error::UnsupportedOrder(_)
        | Error::NotPrimePower(_)
        | Error::NotApplicable(_)
        | Error::ConstructionConflict(_) => EXIT_UNSUPPORTED,
        Error::Verification(_) | Error::Nonexistent(_) => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_design(path: &Path) -> Result<DesignDescriptor, Error> {
    read(path)?.parse()
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Construct { recipe, out: path, ds, mols } => {
            let recipe: Recipe = recipe.join(" ").parse()?;
            let mut ctx = RecipeContext::new(std::env::current_dir().unwrap_or_else(|_| PathBuf::from(".")));
            if let Some(f) = ds {
                ctx.ds = Some(read(&f)?.parse()?);
            }
            if let Some(f) = mols {
                ctx.mols = Some(read(&f)?.parse()?);
            }
            let d = build(&recipe, &ctx)?;
            let text = DesignDescriptor::from(&d).to_text();
            let report = analysis_report(&d);
            // with --out the report goes to stdout; otherwise stdout carries the design file
            match path {
                Some(p) => {
                    std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    writeln!(out, "recipe\t{recipe}")?;
                    writeln!(out, "file\t{}", p.display())?;
                    write!(out, "{report}")?;
                }
                None => {
                    write!(out, "{text}")?;
                    write!(err, "{report}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { file } => {
            let desc = load_design(&file)?;
            let report = desc.verify();
            if !report.is_clean() {
                writeln!(out, "status\tFAIL")?;
                for dev in &report.deviations {
                    writeln!(out, "deviation\t{dev}")?;
                }
                return Ok(EXIT_VERIFY);
            }
            let d = Design::new(desc.incidence, desc.params)?;
            writeln!(out, "status\tOK")?;
            match d.classify() {
                Ok(c) => writeln!(out, "class\t{}\nnature\t{}", c.tag, c.nature())?,
                Err(e) => writeln!(out, "class\t{e}")?,
            }
            let sd = self_dual_check(&d);
            writeln!(out, "self_dual\t{}", sd.deviation.unwrap_or_else(|| "yes".into()))?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, params } => {
            let p = match (file, params) {
                (Some(f), None) => load_design(&f)?.params,
                (None, Some(v)) => RDParams::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]),
                _ => return Err(Error::Recipe("give either a design file or --params".into())),
            };
            let s = spectrum(&p)?;
            writeln!(out, "params\t{p}")?;
            writeln!(out, "theta\t{} {} {}", s.theta1, s.theta2, s.theta3)?;
            writeln!(out, "multiplicities\t{} {} {}", s.mult1, s.mult2, s.mult3)?;
            match classify(&p) {
                Ok(c) => {
                    writeln!(out, "class\t{}", c.tag)?;
                    writeln!(out, "reduction\t{}", c.reduction)?;
                    writeln!(out, "nature\t{}", c.nature())?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "class\tnonexistent ({e})")?;
                    Ok(EXIT_VERIFY)
                }
            }
        }
        Command::Analyze { file } => {
            let desc = load_design(&file)?;
            let report = desc.verify();
            if !report.is_clean() {
                writeln!(err, "design does not match its header:\n{report}")?;
                return Ok(EXIT_VERIFY);
            }
            let d = Design::new(desc.incidence, desc.params)?;
            write!(out, "{}", analysis_report(&d))?;
            if let Ok(sr) = semi_regular_suite(&d) {
                let verdict = if sr.passed() { "pass".to_string() } else { sr.failures().join("; ") };
                writeln!(out, "semi_regular_structure\t{verdict}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Search { v, k, k_min, k_max } => {
            let range = match k {
                Some(k) => k..=k,
                None => k_min..=k_max,
            };
            let res = enumerate_candidates(v, range)?;
            write!(out, "{}", res.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Tables { which, ds } => {
            let table: Table = which.parse()?;
            let mut ctx = RecipeContext::new(".");
            if let Some(f) = ds {
                ctx.ds = Some(read(&f)?.parse()?);
            }
            let outcomes = run_table(table, &ctx);
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            let s = summarize(&outcomes);
            writeln!(out, "summary\t{} pass, {} fail, {} skip", s.pass, s.fail, s.skip)?;
            Ok(if s.fail == 0 { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}
