//! `krfusion`: batch front end for the fusion multiplicity engines.

mod cache;
mod config;
mod error;
mod report;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use krfusion::fermionic::KrSpec;

use config::{Command, Engine, Format, JobConfig, ScanKind};
use error::{CliError, CliResult};
use run::Options;

#[derive(Parser)]
#[command(
    name = "krfusion",
    version,
    about = "Multiplicities of fusion products of Kirillov-Reshetikhin modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct Common {
    /// Lie type: A1, A2, A3, B2, C2, B3, C3, D4 or G2.
    #[arg(long = "type", value_name = "TYPE")]
    lie_type: String,
    /// Tensor factors as `node:level` pairs with 1-based nodes, e.g. `1:1,2:2`.
    #[arg(long, value_parser = parse_spec)]
    spec: KrSpec,
    /// Restrict to one γ, given by its simple-root coefficients, e.g. `1,1`.
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<u32>>,
    /// Cache directory for expensive results (also read from KRFUSION_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fermionic multiplicities for every γ with λ − γ dominant.
    Mult(Common),
    /// Graded character of the fusion product.
    FusionChar {
        #[command(flatten)]
        common: Common,
        /// Evaluation points, one per factor, e.g. `0,-2,1/3`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<String>>,
    },
    /// Cross-check the multiplicity engines per γ.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Engines to run.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "fermionic,module,pbw,dual"
        )]
        engines: Vec<Engine>,
        /// First PBW degree cap.
        #[arg(long)]
        pbw_start: Option<u32>,
        /// Last PBW degree cap.
        #[arg(long)]
        pbw_max: Option<u32>,
        #[arg(long, hide = true)]
        inject_disagreement: bool,
    },
    /// Exhaustive scans over tuples of partitions.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long = "type", value_name = "TYPE", default_value = "A1")]
        lie_type: String,
        /// Largest total number of boxes.
        #[arg(long)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions of the functional dual spaces per γ.
    DualDim(Common),
    /// Run a job described by a JSON file.
    Run {
        path: PathBuf,
        #[arg(long, hide = true)]
        inject_disagreement: bool,
    },
}

fn parse_spec(s: &str) -> Result<KrSpec, String> {
    KrSpec::from_str(s).map_err(|e| e.to_string())
}

fn config(common: Common, command: Command) -> JobConfig {
    JobConfig {
        lie_type: common.lie_type,
        spec: Some(common.spec),
        command,
        gamma: common.gamma,
        points: None,
        pbw_start_degree: None,
        pbw_max_degree: None,
        format: common.output.format,
        cache_dir: common.cache_dir,
        jobs: common.output.jobs,
        timings: common.output.timings,
    }
}

fn job_of(cmd: Cmd) -> CliResult<(JobConfig, Options)> {
    let mut opts = Options::default();
    let cfg = match cmd {
        Cmd::Mult(c) => config(c, Command::Mult),
        Cmd::DualDim(c) => config(c, Command::DualDim),
        Cmd::FusionChar { common, points } => JobConfig {
            points,
            ..config(common, Command::FusionChar)
        },
        Cmd::Verify {
            common,
            engines,
            pbw_start,
            pbw_max,
            inject_disagreement,
        } => {
            opts.inject_disagreement = inject_disagreement;
            let mut engines = engines;
            engines.sort();
            engines.dedup();
            JobConfig {
                pbw_start_degree: pbw_start,
                pbw_max_degree: pbw_max,
                ..config(common, Command::Verify { engines })
            }
        }
        Cmd::Scan {
            kind,
            lie_type,
            max,
            output,
        } => JobConfig {
            lie_type,
            spec: None,
            command: Command::Scan { kind, max },
            gamma: None,
            points: None,
            pbw_start_degree: None,
            pbw_max_degree: None,
            format: output.format,
            cache_dir: None,
            jobs: output.jobs,
            timings: output.timings,
        },
        Cmd::Run {
            path,
            inject_disagreement,
        } => {
            opts.inject_disagreement = inject_disagreement;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            JobConfig::from_json(&text)?
        }
    };
    Ok((cfg, opts))
}

fn execute(cmd: Cmd) -> CliResult<bool> {
    let (cfg, opts) = job_of(cmd)?;
    let job = cfg.validate()?;
    let outcome = run::run(&job, opts)?;
    let text = outcome.report.render(cfg.format);
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(!outcome.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("krfusion: disagreement or violation found");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("krfusion: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
