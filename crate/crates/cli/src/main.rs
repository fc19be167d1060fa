use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ftrs_core::oracle::{self, VerificationReport};
use ftrs_core::{
    build_lambda_ftrs, enumerate_important_with_limit, gen_random, parse_graph, serialize_graph,
    BuildParams, DeletionReason, EdgeSet, ErrorKind, FaultMode, FaultSet, FtrsResult, GenSpec,
    Model, ParsedGraph, VertexSet, DEFAULT_BUDGET_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "ftrs",
    version,
    about = "Fault-tolerant reachability certificates"
)]
struct Cli {
    /// Raise the hard limit on k + lambda (separator budget).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_LIMIT)]
    max_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a certificate subgraph.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long)]
        vertex_faults: bool,
        /// Print build statistics to stdout.
        #[arg(long)]
        stats: bool,
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// List the important separators between two vertices.
    Separators {
        #[arg(long)]
        source: usize,
        #[arg(long)]
        sink: usize,
        #[arg(long)]
        budget: usize,
        input: PathBuf,
    },
    /// Ask a certificate whether a vertex survives a set of faults.
    Query {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        /// Comma-separated edge IDs (vertex IDs with --vertex-faults).
        #[arg(long, default_value = "")]
        faults: String,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        vertex_faults: bool,
    },
    /// Check a certificate against its original graph by brute force.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        /// Check this many random fault sets instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        vertex_faults: bool,
    },
    /// Generate a seeded random graph with source 0.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::Uniform)]
        model: ModelArg,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Uniform,
    Layered,
}

enum CliError {
    Core(ftrs_core::Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<ftrs_core::Error> for CliError {
    fn from(e: ftrs_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Budget => 3,
                ErrorKind::Internal => 4,
            },
            CliError::Io(..) => 2,
        }
    }
}

fn fault_mode(vertex_faults: bool) -> FaultMode {
    if vertex_faults {
        FaultMode::Vertex
    } else {
        FaultMode::Edge
    }
}

fn read_graph(path: &Path) -> Result<ParsedGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    let parsed = parse_graph(&text).map_err(|e| match e {
        ftrs_core::Error::Parse { line, message } => ftrs_core::Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn parse_ids(list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| ftrs_core::Error::Input(format!("invalid fault id '{t}'")).into())
        })
        .collect()
}

fn print_report(report: &VerificationReport) -> ExitCode {
    match &report.counterexample {
        None => {
            println!("PASS cases={}", report.cases_checked);
            ExitCode::SUCCESS
        }
        Some(cx) => {
            let faults = match &cx.faults {
                FaultSet::Edges(e) => format!("edges {e}"),
                FaultSet::Vertices(v) => format!("vertices {v}"),
            };
            println!(
                "FAIL cases={} faults={faults} target={} original={} certificate={}",
                report.cases_checked, cx.target, cx.in_original, cx.in_certificate
            );
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if cli.max_budget > DEFAULT_BUDGET_LIMIT {
        eprintln!(
            "warning: budget limit raised to {}; separator families may grow up to 4^{}",
            cli.max_budget, cli.max_budget
        );
    }
    match cli.command {
        Command::Build {
            k,
            lambda,
            vertex_faults,
            stats,
            input,
            output,
        } => {
            let parsed = read_graph(&input)?;
            let params = BuildParams::new(parsed.source, k)
                .with_lambda(lambda)
                .with_fault_mode(fault_mode(vertex_faults))
                .with_budget_limit(cli.max_budget);
            let result = build_lambda_ftrs(&parsed.graph, &params)?;
            write_file(
                &output,
                &serialize_graph(result.certificate(), parsed.source),
            )?;
            if stats {
                let from_source = result
                    .deleted()
                    .iter()
                    .filter(|d| d.reason == DeletionReason::SourceInEdge)
                    .count();
                let s = result.stats();
                println!("alpha {}", result.alpha());
                println!("edges-in {}", parsed.graph.alive_edge_count());
                println!("edges-out {}", result.certificate().alive_edge_count());
                println!("deleted-source-in-edges {from_source}");
                println!(
                    "deleted-degree-reduction {}",
                    result.deleted().len() - from_source
                );
                println!("iterations {}", s.iterations);
                println!(
                    "max-family-size {}",
                    s.family_sizes.iter().copied().max().unwrap_or(0)
                );
                println!("max-in-degree {}", result.certificate().max_in_degree());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Separators {
            source,
            sink,
            budget,
            input,
        } => {
            let parsed = read_graph(&input)?;
            let family = enumerate_important_with_limit(
                &parsed.graph,
                &VertexSet::singleton(source),
                &VertexSet::singleton(sink),
                budget,
                cli.max_budget,
            )?;
            println!(
                "# {} important separators, source {source}, sink {sink}, budget {budget}",
                family.len()
            );
            for sep in family.members() {
                println!("{} {} reach {}", sep.len(), sep.edges(), sep.reach());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Query {
            certificate,
            k,
            lambda,
            faults,
            target,
            vertex_faults,
        } => {
            let parsed = read_graph(&certificate)?;
            let ids = parse_ids(&faults)?;
            let mode = fault_mode(vertex_faults);
            let params = BuildParams::new(parsed.source, k)
                .with_lambda(lambda)
                .with_fault_mode(mode)
                .with_budget_limit(cli.max_budget);
            let result = FtrsResult::from_certificate(parsed.graph, &params)?;
            let faults = match mode {
                FaultMode::Edge => FaultSet::Edges(ids.into_iter().collect::<EdgeSet>()),
                FaultMode::Vertex => FaultSet::Vertices(ids.into_iter().collect::<VertexSet>()),
            };
            let answer = if lambda == 1 {
                let ok = result.query_reachable(&faults, target)?;
                if ok {
                    "reachable"
                } else {
                    "unreachable"
                }
            } else {
                let ok = result.query_connectivity(&faults, target)?;
                if ok {
                    "connected"
                } else {
                    "disconnected"
                }
            };
            println!("{answer}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            k,
            lambda,
            original,
            certificate,
            sample,
            seed,
            vertex_faults,
        } => {
            let g = read_graph(&original)?;
            let h = read_graph(&certificate)?;
            if g.source != h.source {
                eprintln!(
                    "warning: certificate declares source {} but the original declares {}; using {}",
                    h.source, g.source, g.source
                );
            }
            let (g_graph, h_graph, s) = (&g.graph, &h.graph, g.source);
            let mode = fault_mode(vertex_faults);
            let report = match (sample, mode) {
                (Some(count), _) => {
                    oracle::verify_sampled(g_graph, h_graph, s, k, lambda, mode, count, seed)?
                }
                (None, FaultMode::Edge) => {
                    oracle::verify_lambda_ftrs(g_graph, h_graph, s, k, lambda)?
                }
                (None, FaultMode::Vertex) => {
                    oracle::verify_lambda_ftrs_vertex(g_graph, h_graph, s, k, lambda)?
                }
            };
            Ok(print_report(&report))
        }
        Command::Gen {
            n,
            m,
            seed,
            model,
            output,
        } => {
            if n == 0 {
                return Err(ftrs_core::Error::Input("n must be at least 1".into()).into());
            }
            let model = match model {
                ModelArg::Uniform => Model::Uniform,
                ModelArg::Layered => Model::Layered,
            };
            let g = gen_random(&GenSpec { n, m, seed, model })?;
            write_file(&output, &serialize_graph(&g, 0))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
