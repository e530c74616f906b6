use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwanet::io::{export_smt, parse_network, parse_pwa, pwa_to_json};
use pwanet::{parse_scalar, RatNetwork, RatPwaFn, RatVec, UnivalenceVerdict};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_NOT_PWA: u8 = 4;
const EXIT_VIOLATION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pwanet",
    version,
    about = "Exact piecewise-affine compilation of feedforward networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a network document into a piecewise-affine function document.
    Compile {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Drop pieces whose polyhedron is empty.
        #[arg(long)]
        prune: bool,
        /// Decide univalence and record the verdict in the output.
        #[arg(long)]
        check_univalence: bool,
    },
    /// Evaluate a function or network at a point.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Comma-separated exact scalars, e.g. "1,-1/3,0.25".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decide univalence of a function document.
    Check {
        #[arg(long)]
        pwa: PathBuf,
    },
    /// Count pieces with a non-empty polyhedron.
    Regions {
        #[arg(long)]
        pwa: PathBuf,
    },
    /// Write an SMT-LIB 2 (QF_LRA) encoding of a function document.
    ExportSmt {
        #[arg(long)]
        pwa: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also assert that the input lies in some piece.
        #[arg(long)]
        assert_domain: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    pwa: Option<PathBuf>,
    #[arg(long)]
    network: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl fmt::Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

impl From<pwanet::Error> for Failure {
    fn from(err: pwanet::Error) -> Self {
        let code = if err.is_dimension_error() {
            EXIT_DIMENSION
        } else {
            EXIT_PARSE
        };
        Self::new(code, err)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_pwa(path: &Path) -> Result<RatPwaFn, Failure> {
    Ok(parse_pwa(&read(path)?)?)
}

fn load_network(path: &Path) -> Result<RatNetwork, Failure> {
    Ok(parse_network(&read(path)?)?)
}

fn parse_point(text: &str) -> Result<RatVec, Failure> {
    if text.trim().is_empty() {
        return Ok(RatVec::new(Vec::new()));
    }
    let entries = text.split(',').map(parse_scalar).collect::<pwanet::Result<Vec<_>>>()?;
    Ok(RatVec::new(entries))
}

fn format_vector(v: &RatVec) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("PWANET_JOBS") else {
        return Ok(());
    };
    let jobs: usize = value.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::new(
            EXIT_PARSE,
            format!("PWANET_JOBS must be a positive integer, got {value:?}"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Failure::new(EXIT_IO, e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Compile {
            network,
            out,
            prune,
            check_univalence,
        } => {
            let net = load_network(&network)?;
            let mut f = net.try_transform().map_err(|e| Failure::new(EXIT_NOT_PWA, e))?;
            if prune {
                f = f.prune_empty();
            }
            if check_univalence {
                match f.check_univalence() {
                    UnivalenceVerdict::Univalent => println!("univalent"),
                    UnivalenceVerdict::Violation(v) => println!(
                        "violation: pieces {} and {} differ in row {} at [{}]",
                        v.first,
                        v.second,
                        v.row,
                        format_vector(&v.witness)
                    ),
                }
            }
            write(&out, &pwa_to_json(&f))?;
            println!("{} pieces", f.pieces().len());
        }
        Command::Eval { source, point } => {
            let x = parse_point(&point)?;
            if let Some(path) = source.pwa {
                match load_pwa(&path)?.eval(&x)? {
                    Some(y) => println!("{}", format_vector(&y)),
                    None => println!("outside domain"),
                }
            } else if let Some(path) = source.network {
                match load_network(&path)?.eval(&x)? {
                    Some(y) => println!("{}", format_vector(&y)),
                    None => println!("undefined"),
                }
            }
        }
        Command::Check { pwa } => match load_pwa(&pwa)?.check_univalence() {
            UnivalenceVerdict::Univalent => println!("univalent"),
            UnivalenceVerdict::Violation(v) => {
                return Err(Failure::new(
                    EXIT_VIOLATION,
                    format!(
                        "violation: pieces {} and {} differ in row {} at [{}]",
                        v.first,
                        v.second,
                        v.row,
                        format_vector(&v.witness)
                    ),
                ))
            }
        },
        Command::Regions { pwa } => println!("{}", load_pwa(&pwa)?.count_regions()),
        Command::ExportSmt {
            pwa,
            out,
            assert_domain,
        } => {
            let f = load_pwa(&pwa)?;
            write(&out, &export_smt(&f, assert_domain))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            // Violation verdicts go to stdout like the univalent case.
            if failure.code == EXIT_VIOLATION {
                println!("{}", failure.message);
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
