//! `bitorsor`: enumeration, decomposition and closure commands over finite
//! groups.
//!
//! Exit status is 0 on success, 2 when an input or certificate fails
//! validation, and 1 on usage or I/O errors.

mod commands;
mod doc;
mod dot;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::Report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// A domain error, printed with its module name.
    Domain(bitorsor_kit::Error),
    /// A certificate or input that fails validation.
    Invalid(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Invalid(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<bitorsor_kit::Error> for CliError {
    fn from(e: bitorsor_kit::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Domain(_) | CliError::Invalid(_) => 2,
        }
    }

    fn module(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.module(),
            CliError::Invalid(_) => "devissage",
            CliError::Usage(_) | CliError::Io(_) => "cli",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(
    name = "bitorsor",
    version,
    about = "Finite bitorsors, nonabelian H¹ and decomposition certificates"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for randomized choices.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a group table file or built-in name.
    ValidateGroup { group: String },
    /// List the classes of H¹(Π, G).
    H1 {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        group: String,
    },
    /// Find the class of θ, given by the images of the generators of Π.
    Classify {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        theta: Vec<usize>,
    },
    /// Decompose classes and emit certificates.
    Decompose {
        /// Extension file.
        #[arg(
            long,
            conflicts_with = "semidirect",
            required_unless_present = "semidirect"
        )]
        extension: Option<PathBuf>,
        /// Z/N ⋊ Z/M with 1 ↦ K, as N:M:K.
        #[arg(long)]
        semidirect: Option<String>,
        #[arg(long)]
        group: String,
        /// Only this class; all classes by default.
        #[arg(long)]
        class: Option<usize>,
        /// Use this section (in enumeration order) instead of the given one.
        #[arg(long)]
        section: Option<usize>,
    },
    /// Re-check a certificate written by `decompose --format json`.
    Verify { certificate: PathBuf },
    /// Wedges of elementary classes.
    Closure {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        registry: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        /// Target group; requires --class.
        #[arg(long, requires = "class")]
        group: Option<String>,
        #[arg(long, requires = "group")]
        class: Option<usize>,
    },
    /// Survey H¹ for the tame model Z/n ⋊ Z/m.
    LocalSurvey {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        group: String,
    },
    /// Decompose a seeded example and verify it.
    Demo,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("BITORSOR_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        CliError::Usage(format!(
            "BITORSOR_THREADS must be a positive integer, got `{v}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::ValidateGroup { group } => commands::validate_group(group),
        Command::H1 { pi, group } => commands::h1_classes(pi, group),
        Command::Classify { pi, group, theta } => commands::classify(pi, group, theta),
        Command::Decompose {
            extension,
            semidirect,
            group,
            class,
            section,
        } => {
            let mut e = match (extension, semidirect) {
                (Some(path), _) => input::load_extension(path)?,
                (None, Some(spec)) => input::semidirect_extension(spec)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            if let Some(j) = section {
                let sections = e.sections();
                let s = sections.get(*j).cloned().ok_or_else(|| {
                    CliError::Usage(format!(
                        "section {j} out of range: there are {}",
                        sections.len()
                    ))
                })?;
                e = e.with_section(s).map_err(bitorsor_kit::Error::from)?;
            }
            commands::decompose_cmd(&e, group, *class)
        }
        Command::Verify { certificate } => commands::verify(certificate),
        Command::Closure {
            pi,
            registry,
            max_n,
            group,
            class,
        } => {
            let target = group.as_deref().zip(*class);
            commands::closure_cmd(pi, registry, *max_n as usize, target)
        }
        Command::LocalSurvey { q, n, m, group } => commands::local_survey(*q, *n, *m, group),
        Command::Demo => commands::demo(cli.seed),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ValidateGroup { .. } => "validate-group",
        Command::H1 { .. } => "h1",
        Command::Classify { .. } => "classify",
        Command::Decompose { .. } => "decompose",
        Command::Verify { .. } => "verify",
        Command::Closure { .. } => "closure",
        Command::LocalSurvey { .. } => "local-survey",
        Command::Demo => "demo",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report = run(&cli).and_then(|r| match cli.format {
        Format::Dot if r.dot.is_none() => Err(CliError::Usage(format!(
            "--format dot is not available for {}",
            command_name(&cli.command)
        ))),
        _ => Ok(r),
    });
    match report {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("JSON values serialize")
                ),
                Format::Dot => print!("{}", r.dot.as_deref().unwrap_or_default()),
            }
            ExitCode::from(if r.ok { 0 } else { 2 })
        }
        Err(e) => {
            if cli.format == Format::Json && e.exit_code() == 2 {
                let doc = json!({
                    "schema": doc::SCHEMA,
                    "command": command_name(&cli.command),
                    "error": { "module": e.module(), "message": e.to_string() },
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
