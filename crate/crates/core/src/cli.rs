//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors (including out-of-range
//! parameter values), 2 for I/O and parse failures.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::false_positive_stats;
use crate::bench::{full_sizes, run_bench, BenchConfig, DEFAULT_RUNS, DEFAULT_SIZES};
use crate::bloom::{BloomParams, DEFAULT_EPSILON};
use crate::error::Error;
use crate::exec::Execution;
use crate::graph::{generate_graph, GeneratorConfig, Graph};
use crate::mst::{prim_baseline, prim_bloom, recover_edges};
use crate::pixmap::PixelImage;
use crate::segmentation::{segment, Solver, DEFAULT_THRESHOLD};

#[derive(Debug, Parser)]
#[command(name = "bloom-mst", version, about = "Prim's MST with a Bloom-filter visited set")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Baseline,
    Bloom,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Visited-set implementation.
    #[arg(long, value_enum, default_value = "baseline")]
    pub solver: SolverKind,
    /// Target false-positive rate of the Bloom filter.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Seed of the Bloom filter hash.
    #[arg(long, default_value_t = 0)]
    pub hash_seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a connected random graph (1-25 extra edges per node).
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        min_extra: u32,
        #[arg(long, default_value_t = 25)]
        max_extra: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the MST of a graph file (stdin when no input is given).
    Mst {
        input: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Write the selected edges as "<u> <v> <weight>" lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare memory and error of both solvers over generated graphs.
    ///
    /// Trial r at size n uses graph seed `seed + 1000003*n + r`.
    Bench {
        /// Comma-separated node counts.
        #[arg(long, value_delimiter = ',', conflicts_with = "full")]
        sizes: Vec<usize>,
        /// Sweep 1,000..=101,000 in steps of 10,000.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        hash_seed: u64,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
        /// Summary CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional per-trial CSV path.
        #[arg(long)]
        trials_out: Option<PathBuf>,
    },
    /// Print filter sizing and false-positive statistics.
    Stats {
        #[arg(long)]
        nodes: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Segment a P6/P3 pixmap by cutting heavy spanning-tree edges.
    Segment {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Cut tree edges with squared RGB distance above this value.
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        /// Label image (P6). The label count goes to the same path with a .txt extension.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        palette_seed: u64,
    },
}

/// Failure of a CLI invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Failed(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(msg) => CliError::Usage(msg),
            other => CliError::Failed(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(Error::Io(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Failed(_) => 2,
        }
    }
}

fn open_in(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| io_context(e, path))
}

fn create_out(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_context(e, path))
}

fn io_context(e: std::io::Error, path: &Path) -> CliError {
    CliError::Failed(Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    )))
}

fn solver_of(args: &SolverArgs) -> Result<Solver, CliError> {
    Ok(match args.solver {
        SolverKind::Baseline => Solver::Baseline,
        SolverKind::Bloom => {
            BloomParams::new(1, args.epsilon)?;
            Solver::Bloom {
                epsilon: args.epsilon,
                hash_seed: args.hash_seed,
            }
        }
    })
}

/// Text report of filter sizing and collision statistics.
pub fn stats_report(nodes: u64, epsilon: f64) -> Result<String, Error> {
    let p = BloomParams::new(nodes, epsilon)?;
    let s = false_positive_stats(nodes, p.m_bits, p.k_hashes)?;
    Ok(format!(
        "nodes={}\nepsilon={}\nm_bits={}\nk_hashes={}\nexpected_fp={:.2}\nstddev_fp={:.2}\n",
        nodes, epsilon, p.m_bits, p.k_hashes, s.expected_fp, s.stddev_fp
    ))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    run(cli, stdin, stdout)
}

pub fn run(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            nodes,
            seed,
            min_extra,
            max_extra,
            out,
        } => {
            let config = GeneratorConfig {
                node_count: nodes,
                min_extra_edges_per_node: min_extra,
                max_extra_edges_per_node: max_extra,
                seed,
            };
            let g = generate_graph(&config)?;
            match out {
                Some(path) => g.save(create_out(&path)?)?,
                None => g.save(&mut *stdout)?,
            }
        }
        Command::Mst {
            input,
            solver,
            start,
            out,
        } => {
            let solver = solver_of(&solver)?;
            let g = match input {
                Some(path) => Graph::load(open_in(&path)?)?,
                None => Graph::load(stdin)?,
            };
            let result = match solver {
                Solver::Baseline => prim_baseline(&g, start)?,
                Solver::Bloom { epsilon, hash_seed } => prim_bloom(&g, start, epsilon, hash_seed)?,
            };
            let name = match solver {
                Solver::Baseline => "baseline",
                Solver::Bloom { .. } => "bloom",
            };
            writeln!(stdout, "solver={name}")?;
            writeln!(stdout, "total_cost={}", result.total_cost)?;
            writeln!(stdout, "selected_edges={}", result.selected_edge_count)?;
            writeln!(stdout, "spanned_nodes={}", result.spanned_node_count)?;
            if let Some(path) = out {
                let mut w = create_out(&path)?;
                for e in recover_edges(&result, &g)? {
                    writeln!(w, "{} {} {}", e.u, e.v, e.weight)?;
                }
                w.flush()?;
            }
        }
        Command::Bench {
            sizes,
            full,
            runs,
            epsilon,
            seed,
            hash_seed,
            sequential,
            out,
            trials_out,
        } => {
            let sizes = if full {
                full_sizes()
            } else if sizes.is_empty() {
                DEFAULT_SIZES.to_vec()
            } else {
                sizes
            };
            let config = BenchConfig {
                sizes,
                runs,
                epsilon,
                seed,
                hash_seed,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
            };
            let report = run_bench(&config)?;
            match out {
                Some(path) => report.write_csv(create_out(&path)?)?,
                None => report.write_csv(&mut *stdout)?,
            }
            if let Some(path) = trials_out {
                report.write_trials_csv(create_out(&path)?)?;
            }
        }
        Command::Stats { nodes, epsilon } => {
            stdout.write_all(stats_report(nodes, epsilon)?.as_bytes())?;
        }
        Command::Segment {
            input,
            solver,
            threshold,
            out,
            palette_seed,
        } => {
            let solver = solver_of(&solver)?;
            let img = PixelImage::read_ppm(open_in(&input)?)?;
            let seg = segment(&img, threshold, solver)?;
            seg.write_label_image(create_out(&out)?, palette_seed)?;
            seg.write_label_count(create_out(&out.with_extension("txt"))?)?;
            writeln!(stdout, "label_count={}", seg.cluster_count)?;
        }
    }
    stdout.flush()?;
    Ok(())
}
