mod commands;
mod input;
mod render;
mod sample;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpflow::algebra::rational::{self, Rational};

#[derive(Parser, Debug)]
#[command(name = "mpflow", version, about = "Exact checks for maximum-principle functions under K^σ flows")]
struct Cli {
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify conditions I–IV for one or more candidates.
    Check(CandidateInput),
    /// Enumerate integer candidates and report every one passing I–IV.
    Search(Bounds),
    /// Classify a candidate (or case parameters) and print its contradiction chain.
    Case(CaseArgs),
    /// Compare predicted and expanded leading coefficients.
    CrossCheck(CrossCheckArgs),
    /// Exhaustive consistency sweep at one or more σ > 1.
    Sweep(Bounds),
    /// Evaluate C_w and G_w numerically on a grid for a general velocity.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct CandidateInput {
    /// Path to a JSON file, `-` for stdin, or inline JSON. Accepts one
    /// object, an array, or JSON lines.
    #[arg(long)]
    input: String,
    /// Overrides (or supplies) σ for every candidate.
    #[arg(long, value_parser = parse_rational)]
    sigma: Option<Rational>,
}

#[derive(Args, Debug)]
struct Bounds {
    /// Flow exponent; repeat to sweep several.
    #[arg(long, value_parser = parse_rational, required = true)]
    sigma: Vec<Rational>,
    #[arg(long, default_value_t = 1)]
    gmin: usize,
    #[arg(long, default_value_t = 4)]
    gmax: usize,
    #[arg(long, default_value_t = 3)]
    hmax: usize,
    /// Inclusive integer coefficient range `lo:hi`.
    #[arg(long, default_value = "-4:4", value_parser = parse_range, allow_hyphen_values = true)]
    coeff_range: (i64, i64),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// A candidate `{"p": …, "q": …}` or case parameters
    /// `{"case_id": …, "g": …, "h": …, "k": …, "l": …, "c_k": …, "d_l": …}`.
    #[arg(long)]
    input: String,
    /// Fix σ > 1; omitted, the chain covers every σ > 1.
    #[arg(long, value_parser = parse_rational)]
    sigma: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct CrossCheckArgs {
    /// Candidates to check; without it, random instances are drawn per case.
    #[arg(long)]
    input: Option<String>,
    /// σ values cycled through the sampled instances, or an override for input.
    #[arg(long, value_parser = parse_rational)]
    sigma: Vec<Rational>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled instances per case.
    #[arg(long, default_value_t = 50)]
    samples: usize,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    input: String,
    /// One of K^sigma, H^sigma, trA^sigma, A2.
    #[arg(long, default_value = "K^sigma")]
    velocity: String,
    /// Velocity exponent; defaults to the candidate's σ.
    #[arg(long, value_parser = parse_rational)]
    sigma: Option<Rational>,
    /// Grid resolution n: points (4i/n, 4j/n), 1 ≤ i ≠ j ≤ n.
    #[arg(long, default_value_t = 20)]
    grid: usize,
    /// Explicit points `l1,l2` (rationals); replaces the grid.
    #[arg(long)]
    point: Vec<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let int = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((int(lo)?, int(hi)?))
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{message}")]
    Invariant { message: String, dump: serde_json::Value },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant { .. } => 3,
            Failure::Io(_) => 1,
        }
    }
}

/// JSON-lines sink.
pub struct Sink(Box<dyn Write + Send>);

impl Sink {
    pub fn emit<T: serde::Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        serde_json::to_writer(&mut self.0, value).map_err(io::Error::from)?;
        self.0.write_all(b"\n")?;
        Ok(())
    }

    pub fn text(&mut self, s: &str) -> Result<(), Failure> {
        Ok(self.0.write_all(s.as_bytes())?)
    }
}

fn run(cli: Cli, sink: &mut Sink) -> Result<(), Failure> {
    match cli.command {
        Command::Check(a) => commands::check(&a.input, a.sigma.as_ref(), sink),
        Command::Search(b) => commands::search(&b, sink),
        Command::Case(a) => commands::case(&a.input, a.sigma.as_ref(), matches!(a.format, Format::Text), sink),
        Command::CrossCheck(a) => commands::cross_check(&a, sink),
        Command::Sweep(b) => commands::sweep(&b, sink),
        Command::Eval(a) => commands::eval(&a, sink),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let out: Box<dyn Write + Send> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut sink = Sink(out);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build().expect("thread pool");
    let result = pool.install(|| run(cli, &mut sink)).and_then(|()| Ok(sink.0.flush()?));
    drop(sink);
    eprintln!("wall-clock: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Failure::Invariant { dump, .. } = &e {
                eprintln!("{}", serde_json::to_string_pretty(dump).unwrap_or_default());
            }
            ExitCode::from(e.code())
        }
    }
}
