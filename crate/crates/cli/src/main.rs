use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use varpw_core::filtration::{SearchBounds, DEFAULT_BUDGET};
use varpw_core::{make_params, Criterion, Error};

mod render;

#[derive(Parser, Debug)]
#[command(name = "varpw", version, about = "Exact E-polynomial and P = W checks for prime-rank SL_n Hitchin moduli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the closed variant E-polynomial E(q).
    Epoly(PointArgs),
    /// Print the variant Betti numbers.
    Betti(PointArgs),
    /// Print the perverse/weight tables and the P = W report.
    Pw(PointArgs),
    /// Run the full identity suite and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Exhaustively search for tables that satisfy a criterion without being k-sequences.
    Ksearch(SearchArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    /// Rank.
    #[arg(long)]
    n: u32,
    /// Genus.
    #[arg(long)]
    g: u32,
    /// Degree; only has to be coprime to n.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    d: i64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "grid")]
    n: Option<u32>,
    #[arg(long, required_unless_present = "grid")]
    g: Option<u32>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    d: i64,
    /// Verify every n in {2,3,5,7}, g in {2,3,4} instead of one point.
    #[arg(long, conflicts_with_all = ["n", "g"])]
    grid: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Which::Both)]
    which: Which,
    #[arg(long, default_value_t = 3)]
    i_max: u32,
    #[arg(long, default_value_t = 2)]
    j_max: u32,
    #[arg(long, default_value_t = 1)]
    v_max: u32,
    #[arg(long, default_value_t = 1)]
    m_min: u32,
    #[arg(long, default_value_t = 3)]
    m_max: u32,
    #[arg(long, default_value_t = 0)]
    k_min: u32,
    #[arg(long, default_value_t = 2)]
    k_max: u32,
    /// Largest number of (table, m, k) cases to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Prop21,
    Prop22,
    Both,
}

const GRID_RANKS: [u32; 4] = [2, 3, 5, 7];
const GRID_GENERA: [u32; 3] = [2, 3, 4];

/// Output text plus whether every check it reports passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, OutputArgs)> {
    let outcome = match cli.command {
        Command::Epoly(a) => (render::epoly(&point(a.n, a.g, a.d)?, a.output.format, a.output.verbose)?, a.output),
        Command::Betti(a) => (render::betti(&point(a.n, a.g, a.d)?, a.output.format)?, a.output),
        Command::Pw(a) => (render::pw(&point(a.n, a.g, a.d)?, a.output.format)?, a.output),
        Command::Verify(a) => {
            let points = if a.grid {
                let points: Vec<_> = GRID_RANKS
                    .iter()
                    .flat_map(|&n| GRID_GENERA.iter().map(move |&g| (n, g)))
                    .map(|(n, g)| make_params(n, g, a.d))
                    .collect::<Result<_, _>>()?;
                points
            } else {
                // clap enforces --n and --g whenever --grid is absent
                vec![point(a.n.unwrap_or_default(), a.g.unwrap_or_default(), a.d)?]
            };
            let suites = points
                .par_iter()
                .map(|p| varpw_core::run_suite(p).map(|checks| (*p, checks)))
                .collect::<Result<Vec<_>, _>>()?;
            (render::verify(&suites, a.output.format, a.output.verbose), a.output)
        }
        Command::Ksearch(a) => {
            let bounds = SearchBounds {
                i_max: a.i_max,
                j_max: a.j_max,
                v_max: a.v_max,
                m_range: a.m_min..=a.m_max,
                k_range: a.k_min..=a.k_max,
                budget: a.budget,
            };
            let criteria = match a.which {
                Which::Prop21 => vec![Criterion::Prop21],
                Which::Prop22 => vec![Criterion::Prop22],
                Which::Both => vec![Criterion::Prop21, Criterion::Prop22],
            };
            let results = criteria
                .into_iter()
                .map(|c| varpw_core::falsification_search(c, &bounds).map(|found| (c, found)))
                .collect::<Result<Vec<_>, _>>()?;
            (render::ksearch(&bounds, &results, a.output.format), a.output)
        }
    };
    Ok(outcome)
}

fn point(n: u32, g: u32, d: i64) -> Result<varpw_core::ModuliParams, Error> {
    let params = make_params(n, g, d)?;
    if !params.is_prime_rank() {
        return Err(Error::NotPrime(n));
    }
    Ok(params)
}

fn emit(outcome: &Outcome, output: &OutputArgs) -> io::Result<()> {
    match &output.out {
        Some(path) => fs::write(path, &outcome.text),
        None => io::stdout().lock().write_all(outcome.text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((outcome, output)) => {
            if let Err(e) = emit(&outcome, &output) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(core) if !core.is_input_error() => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
