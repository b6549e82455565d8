use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use string_ddf::cli::{emit, exit_code, run_command, Format, RunConfig};
use string_ddf::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Virasoro bracket and central term on level-truncated fibers
    Virasoro,
    /// Normalization calibration and the DDF relations
    Ddf,
    /// Physical-state Gram signatures per level
    Noghost,
    /// DDF state of a word at a canonical on-shell momentum
    DdfState,
    /// Constrained test function with constraint and support checks
    Testfn,
    /// Smeared-field commutator at a spacelike separation
    Locality,
    /// Real constrained observable of small support with all checks
    Observable,
    /// Level-basis dimensions against the generating function
    Basis,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Virasoro => "virasoro",
            Command::Ddf => "ddf",
            Command::Noghost => "noghost",
            Command::DdfState => "ddf-state",
            Command::Testfn => "testfn",
            Command::Locality => "locality",
            Command::Observable => "observable",
            Command::Basis => "basis",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "string-ddf", version, about = "Exact checks for the covariant string Fock space and its DDF operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration; flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    d: Option<usize>,
    #[arg(long, global = true)]
    b: Option<Rational>,
    #[arg(long, global = true)]
    max_level: Option<usize>,
    #[arg(long, global = true)]
    max_mode: Option<i64>,
    /// Normalization candidates in search order, e.g. 1,1/2,2
    #[arg(long, global = true, value_delimiter = ',')]
    kappa_set: Option<Vec<Rational>>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for report files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Quadrature nodes per axis
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Spatial dimensions of the reduced quadrature
    #[arg(long, global = true)]
    dq: Option<usize>,
    /// Bump radius
    #[arg(long, global = true)]
    radius: Option<Rational>,
    /// Radius claimed by the support check
    #[arg(long, global = true)]
    declared_radius: Option<Rational>,
    /// DDF word as dir:mode pairs, e.g. 1:1,2:1
    #[arg(long, global = true)]
    word: Option<String>,
    /// Dimensions for the no-ghost comparison table
    #[arg(long, global = true, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Also check the Virasoro commutator with both operators on one fiber
    #[arg(long, global = true)]
    literal_commutator: bool,
    /// Lift the level cap at d = 26
    #[arg(long, global = true)]
    allow_expensive: bool,
    /// Include wall-clock timings in reports
    #[arg(long, global = true)]
    timings: bool,
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {}", path.display(), e)))?;
            RunConfig::from_json_str(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = cli.d {
        cfg.d = v;
    }
    if let Some(v) = &cli.b {
        cfg.b = v.clone();
    }
    if let Some(v) = cli.max_level {
        cfg.max_level = v;
    }
    if let Some(v) = cli.max_mode {
        cfg.max_mode = v;
    }
    if let Some(v) = &cli.kappa_set {
        cfg.kappa_set = v.clone();
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = cli.format {
        cfg.format = match v {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = cli.grid {
        cfg.grid = v;
    }
    if let Some(v) = cli.dq {
        cfg.dq = v;
    }
    if let Some(v) = &cli.radius {
        cfg.radius = v.clone();
    }
    if let Some(v) = &cli.declared_radius {
        cfg.declared_radius = Some(v.clone());
    }
    if let Some(v) = &cli.word {
        cfg.word = v.clone();
    }
    if let Some(v) = &cli.dims {
        cfg.dims = v.clone();
    }
    cfg.literal_commutator |= cli.literal_commutator;
    cfg.allow_expensive |= cli.allow_expensive;
    cfg.timings |= cli.timings;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let mut res = run_command(cli.command.name(), &cfg);
    let code = exit_code(&res);
    match &mut res {
        Ok(report) => match emit(report, &cfg) {
            Ok(text) => print!("{}", text),
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        },
        Err(e) => eprintln!("error: {}", e),
    }
    ExitCode::from(code as u8)
}
