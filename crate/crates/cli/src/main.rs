use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use maxdet::constructions::{
    biplane_11, block_diag_power, circulant, fano, paper_matrix, projective_plane, s_matrix,
    PaperMatrix,
};
use maxdet::report::{
    bound_reports, figure_series, schedule_csv, BoundParams, ScheduleReport, SearchRecord,
};
use maxdet::schedule::make_schedule;
use maxdet::search::{search_max_det, MatrixClass, SearchConfig, DEFAULT_BUDGET};
use maxdet::verify::run_suite;
use maxdet::ZeroOneMatrix;

#[derive(Parser)]
#[command(name = "maxdet", version, about = "Maximal determinants of sparse zero-one matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every applicable bound as JSON.
    Bound(BoundArgs),
    /// Greedy row-removal schedule as JSON, optionally with a CSV of counts.
    Schedule(ScheduleArgs),
    /// Print a matrix in text format.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Exhaustive maximum-determinant search.
    Search(SearchArgs),
    /// CSV of √k − c_{q,k} against q.
    Figure(FigureArgs),
    /// Recompute every published value; exits nonzero if any item fails.
    Verify {
        /// Emit the full report as JSON instead of one line per item.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long = "k-tilde")]
    k_tilde: Option<f64>,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Also write `(i, a_i)` rows here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Incidence matrix of the projective plane of order 2.
    Fano,
    /// Incidence matrix of the projective plane of prime order `p`.
    Plane {
        #[arg(long)]
        p: u64,
    },
    /// The (11, 5, 2) biplane.
    Biplane,
    /// `k` on the diagonal, `a` elsewhere.
    SMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        k: i64,
    },
    /// One of the fixed examples: R7_K2, A10, B10.
    Paper {
        #[arg(long)]
        id: String,
    },
    /// `t` diagonal copies of a named matrix or one read from a file.
    BlockDiag {
        /// fano, biplane, triangle, plane:P or a fixed example id.
        #[arg(long, conflicts_with = "file")]
        of: Option<String>,
        /// Matrix in text format.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    class: MatrixClass,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    threads: Option<usize>,
    /// Disable bound-based pruning.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long)]
    k: u64,
    /// Add the β_k reference row.
    #[arg(long)]
    beta: bool,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn named_matrix(name: &str) -> Result<ZeroOneMatrix> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "fano" => fano(),
        "biplane" => biplane_11(),
        "triangle" => circulant(3, &[0, 1])?,
        other => match other.strip_prefix("plane:") {
            Some(p) => projective_plane(p.parse().context("plane order")?)?,
            None => paper_matrix(name.parse::<PaperMatrix>()?),
        },
    })
}

fn construct(which: Construct) -> Result<String> {
    let m = match which {
        Construct::Fano => fano(),
        Construct::Plane { p } => projective_plane(p)?,
        Construct::Biplane => biplane_11(),
        Construct::SMatrix { n, a, k } => return Ok(s_matrix(n, a, k)?.to_string()),
        Construct::Paper { id } => paper_matrix(id.parse()?),
        Construct::BlockDiag { of, file, t } => {
            let base = match (of, file) {
                (Some(name), None) => named_matrix(&name)?,
                (None, Some(path)) => fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .parse()?,
                _ => bail!("block-diag needs exactly one of --of or --file"),
            };
            block_diag_power(&base, t)?
        }
    };
    Ok(m.to_string())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Bound(a) => {
            let params = BoundParams {
                m: a.m,
                n: a.n,
                k: a.k,
                q: a.q,
                delta: a.delta,
                k_tilde: a.k_tilde,
            };
            print_json(&bound_reports(&params)?)?;
        }
        Command::Schedule(a) => {
            let s = make_schedule(a.m, a.n, a.k)?;
            if let Some(path) = a.csv {
                fs::write(&path, schedule_csv(&s))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&ScheduleReport::from(&s))?;
        }
        Command::Construct { which } => {
            let text = construct(which)?;
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Command::Search(a) => {
            let config = SearchConfig {
                budget: a.budget,
                threads: a.threads,
                prune: !a.no_prune,
                max_n: None,
            };
            let r = search_max_det(a.class, a.n, a.k, &config)?;
            print_json(&SearchRecord::from(&r))?;
        }
        Command::Figure(a) => {
            print!("{}", figure_series(a.k, a.beta)?.to_csv());
        }
        Command::Verify { json } => {
            let summary = run_suite();
            if json {
                print_json(&summary)?;
            } else {
                let mut out = io::stdout().lock();
                for item in &summary.items {
                    let tag = if item.pass { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{tag} {} computed={} expected={}",
                        item.id, item.computed, item.expected
                    )?;
                }
                writeln!(out, "{} passed, {} failed", summary.passed, summary.failed)?;
            }
            if summary.failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
