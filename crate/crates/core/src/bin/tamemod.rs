use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tamemod::format::WorkspaceFile;
use tamemod::workspace::{harness_json, run_harness, HarnessOptions, Workspace, WEIGHT_BOUND_ENV};
use tamemod::{Error, Predicate};

/// Contraction functors and tameness certificates for graded modules over
/// edge rings.
///
/// Exit codes: 0 success, 1 a certificate or property failed, 2 invalid
/// input, 3 a resource cap was exceeded.
#[derive(Parser)]
#[command(name = "tamemod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute F0 (the quotient by e − e') or F1 (its torsion) of a module.
    Functor(FunctorArgs),
    /// Verify, transform or measure a certificate.
    #[command(subcommand)]
    Cert(CertCommand),
    /// Sample random certificates and check the closure properties.
    Harness(HarnessArgs),
}

#[derive(Args)]
struct Input {
    /// Workspace file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args)]
struct FunctorArgs {
    #[command(flatten)]
    input: Input,
    /// Module id.
    #[arg(long)]
    module: String,
    /// Edge to split; defaults to the workspace's `split`.
    #[arg(long)]
    split: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    degree: u8,
    /// Last weight of the Hilbert table.
    #[arg(long, env = WEIGHT_BOUND_ENV, allow_hyphen_values = true)]
    weight_bound: Option<i64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertCommand {
    /// Check every node of a certificate.
    Verify(CertArgs),
    /// Carry a certificate to one for F0 or F1 of its module.
    Transform {
        #[command(flatten)]
        cert: CertArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the type level.
    Level(CertArgs),
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    input: Input,
    /// Certificate id.
    #[arg(long)]
    cert: String,
}

#[derive(Args)]
struct HarnessArgs {
    /// Edges of the split graph.
    #[arg(long, default_value_t = 4)]
    edges: usize,
    /// Predicate on the split graph: always, max-blocks:K, coblocked:a,b,
    /// discrete-only or single-block.
    #[arg(long, default_value = "always")]
    pred: String,
    /// Predicate on the base graph; defaults to --pred.
    #[arg(long)]
    base_pred: Option<String>,
    #[arg(long, default_value_t = 64)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Functor(args) => {
            let mut file = read_file(&args.input.input)?;
            if args.split.is_some() {
                file.split = args.split.clone();
            }
            let ws = Workspace::resolve(&file)?;
            let out = ws.functor(&args.module, args.degree, args.weight_bound)?;
            emit(args.out.as_deref(), &out.to_json())?;
            Ok(0)
        }
        Command::Cert(CertCommand::Verify(args)) => {
            let ws = Workspace::read(&args.input.input)?;
            match ws.verify(&args.cert) {
                Ok(()) => {
                    println!("pass\t{}", args.cert);
                    Ok(0)
                }
                Err(Error::Rejected { path, reason }) => {
                    println!("fail\t{}\t{path}\t{reason}", args.cert);
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Cert(CertCommand::Transform { cert, degree, out }) => {
            let ws = Workspace::read(&cert.input.input)?;
            let (c, file) = ws.transform(&cert.cert, degree)?;
            emit(out.as_deref(), &file.to_json())?;
            eprintln!("transformed {} to F{degree}: {c} (verified)", cert.cert);
            Ok(0)
        }
        Command::Cert(CertCommand::Level(args)) => {
            let ws = Workspace::read(&args.input.input)?;
            println!("{}", ws.level(&args.cert)?);
            Ok(0)
        }
        Command::Harness(args) => {
            let pred_split = Predicate::parse(&args.pred)?;
            let pred_base = match &args.base_pred {
                Some(p) => Predicate::parse(p)?,
                None => pred_split.clone(),
            };
            let opts = HarnessOptions {
                edges: args.edges,
                pred_split,
                pred_base,
                samples: args.samples,
                seed: args.seed,
                jobs: args.jobs,
            };
            let report = run_harness(&opts)?;
            emit(args.out.as_deref(), &harness_json(&opts, &report))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn read_file(path: &Path) -> Result<WorkspaceFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    WorkspaceFile::parse(&text)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    let written = match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    written.map_err(|e| Error::Validation(format!("cannot write output: {e}")))
}
