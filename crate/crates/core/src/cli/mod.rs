//! The `qha` command-line front end.
//!
//! Exit codes: 0 success with every bound passing, 1 some bound failed,
//! 2 usage, configuration, I/O or file-format error, 3 the input violates a
//! hypothesis of the theorem being checked.

mod batch;
mod config;
mod selftest;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{QhaError, Result};
use crate::exponent::{parse_list, Exponent};
use crate::io;
use crate::operators::singular_spectrum;
use crate::phase_space::{
    build_symbol, convolve_symbols, symplectic_fourier, PhaseGrid, SymbolSpec,
};
use crate::qha::{op_conv, ConvMethod};
use crate::weyl::{cross_wigner, weyl_quantize, weyl_symbol};

pub use config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

/// Environment variable capping the worker pool; `0` or unset means automatic.
pub const THREADS_ENV: &str = "QHA_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "qha",
    version,
    about = "Quantum harmonic analysis on a discretized phase space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a symbol descriptor on a grid (QHAGRID1).
    Build {
        /// gaussian:A,W | projector | constant:C | coordinate:x|xi
        #[arg(long)]
        spec: String,
        #[arg(long = "N", default_value_t = 256)]
        n: usize,
        #[arg(long = "L", default_value_t = 8.0)]
        l: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Weyl quantisation, QHAGRID1 to QHAOP1.
    Quantize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Weyl symbol of an operator, QHAOP1 to QHAGRID1.
    Symbol {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Cross-Wigner distribution W(psi, phi) of two QHAVEC1 files.
    Wigner {
        psi: PathBuf,
        phi: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Symplectic Fourier transform of a QHAGRID1 file.
    Sfourier {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Convolution of two QHAGRID1 files.
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Operator convolution T⋆S of two QHAOP1 files.
    Opconv {
        t: PathBuf,
        s: PathBuf,
        #[arg(long, default_value = "direct")]
        method: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Schatten norms of a QHAOP1 file, printed as JSON.
    Schatten {
        input: PathBuf,
        #[arg(long, default_value = "1,2,inf")]
        p: String,
        /// Include the singular values.
        #[arg(long)]
        spectrum: bool,
    },
    /// Check both bound chains on random band-limited symbols.
    Verify(BatchArgs),
    /// Empirical ratio statistics for the constant C(Ω).
    EstimateConstant(BatchArgs),
    /// Run the invariant suite.
    Selftest {
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
    },
}

#[derive(Args, Debug, Default)]
struct BatchArgs {
    /// JSON run configuration; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// disc:R[@x,xi] or rect:HX,HXI[@x,xi]
    #[arg(long)]
    omega: Option<String>,
    /// Comma-separated exponents, `inf` for infinity.
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    margin: Option<f64>,
    /// Check one QHAGRID1 symbol instead of random samples.
    #[arg(long)]
    symbol: Option<PathBuf>,
    /// JSON report path; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Per-sample ratio table.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    no_timestamp: bool,
}

impl BatchArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.omega {
            cfg.omega = v.clone();
        }
        if let Some(v) = &self.p {
            cfg.p = parse_list(v)?;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.n {
            cfg.grid.n = v;
        }
        if let Some(v) = self.l {
            cfg.grid.l = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.margin {
            cfg.margin = v;
        }
        if self.symbol.is_some() {
            cfg.symbol = self.symbol.clone();
        }
        if self.output.is_some() {
            cfg.output = self.output.clone();
        }
        if self.csv.is_some() {
            cfg.csv = self.csv.clone();
        }
        if self.no_timestamp {
            cfg.timestamp = false;
        }
        Ok(cfg)
    }
}

fn exit_code(err: &QhaError) -> i32 {
    match err {
        QhaError::HypothesisViolation(_) => EXIT_HYPOTHESIS,
        _ => EXIT_USAGE,
    }
}

fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| QhaError::InvalidParameter(format!("{THREADS_ENV}={v:?} is not a count"))),
        Err(_) => Ok(0),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let pool = thread_count().and_then(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| QhaError::InvalidParameter(e.to_string()))
    });
    let outcome = pool.and_then(|pool| pool.install(|| dispatch(cli.command)));
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qha: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Build { spec, n, l, output } => {
            let spec: SymbolSpec = spec.parse()?;
            let grid = PhaseGrid::new(n, l)?;
            io::write_symbol(output, &build_symbol(&grid, &spec)?)?;
        }
        Command::Quantize { input, output } => {
            io::write_operator(output, &weyl_quantize(&io::read_symbol(input)?))?;
        }
        Command::Symbol { input, output } => {
            io::write_symbol(output, &weyl_symbol(&io::read_operator(input)?))?;
        }
        Command::Wigner { psi, phi, output } => {
            let w = cross_wigner(&io::read_vector(psi)?, &io::read_vector(phi)?)?;
            io::write_symbol(output, &w)?;
        }
        Command::Sfourier { input, output } => {
            io::write_symbol(output, &symplectic_fourier(&io::read_symbol(input)?))?;
        }
        Command::Convolve { a, b, output } => {
            let c = convolve_symbols(&io::read_symbol(a)?, &io::read_symbol(b)?)?;
            io::write_symbol(output, &c)?;
        }
        Command::Opconv {
            t,
            s,
            method,
            output,
        } => {
            let method: ConvMethod = method.parse()?;
            let c = op_conv(&io::read_operator(t)?, &io::read_operator(s)?, method)?;
            io::write_symbol(output, &c)?;
        }
        Command::Schatten { input, p, spectrum } => {
            let ps = parse_list(&p)?;
            print_json(&schatten_report(&input, &ps, spectrum)?)?;
        }
        Command::Verify(args) => return batch::verify(&args.resolve()?),
        Command::EstimateConstant(args) => return batch::estimate(&args.resolve()?),
        Command::Selftest { n } => return selftest::run(n),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SchattenEntry {
    p: Exponent,
    value: f64,
}

#[derive(Serialize)]
struct SchattenReport {
    grid: PhaseGrid,
    rank: usize,
    norms: Vec<SchattenEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_values: Option<Vec<f64>>,
}

fn schatten_report(path: &Path, ps: &[Exponent], with_spectrum: bool) -> Result<SchattenReport> {
    let op = io::read_operator(path)?;
    let spectrum = singular_spectrum(&op);
    Ok(SchattenReport {
        grid: *op.grid(),
        rank: spectrum.numerical_rank(),
        norms: ps
            .iter()
            .map(|&p| SchattenEntry {
                p,
                value: spectrum.schatten(p),
            })
            .collect(),
        singular_values: with_spectrum.then(|| spectrum.values().to_vec()),
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    write_text(
        None,
        &serde_json::to_string_pretty(value).expect("report serializes"),
    )
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
pub(crate) fn print_text(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(QhaError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
        _ => Ok(()),
    }
}

pub(crate) fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| QhaError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => print_text(text),
    }
}
