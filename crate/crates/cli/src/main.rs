//! `monostar`: generate graphs, count stars, simulate colorings and compare
//! against exact and limiting laws.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monostar::coloring::{monte_carlo_with, McConfig};
use monostar::graph::{generate, load_edge_list, save_edge_list};
use monostar::harness::{
    birthday_probability, builtin_example, run_experiment_with, BirthdayMethod, ErrorKind, ExperimentSpec, Report,
    RunOptions,
};
use monostar::limit::{
    limit_pmf, params_from_graph_with, parse_params, sample_limit_many, LimitLawParams, DEFAULT_THETA_THRESHOLD,
};
use monostar::oracle::{exact_pmf_with, OracleOptions};
use monostar::stats::{class_counts_with, count_stars, ClassCountMethod, ClassCountOptions};
use monostar::{Error, GeneratorSpec, Graph};

#[derive(Parser)]
#[command(name = "monostar", version, about = "Monochromatic r-stars in uniformly colored graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A graph is an edge-list file, `-` for stdin, or a generator spec such as
/// `star:10` or `figure2:30`.
#[derive(Args)]
struct GraphArg {
    graph: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit `value,probability` CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        spec: GeneratorSpec,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Star count and, optionally, the induced class counts.
    Stats {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        r: u32,
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo distribution of T.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        c: u32,
        #[arg(short = 'n', long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact distribution of T by enumerating colorings.
    Exact {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        c: u32,
        /// Include one witness coloring per support value.
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        budget: Option<u128>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Limit-law parameters, pmf and samples.
    Limit {
        #[command(subcommand)]
        command: LimitCommand,
    },
    /// Run a built-in example and check it against its predicted law.
    Verify {
        name: String,
        #[arg(short = 'n')]
        n: Option<u64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run an experiment described by a JSON spec file.
    Run {
        spec: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Probability that some r-star is monochromatic.
    Birthday {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        c: u32,
        #[arg(long, value_enum, default_value_t = BirthdayArg::Oracle)]
        method: BirthdayArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        theta_cut: usize,
        #[arg(long, default_value_t = 1e-12)]
        tail_eps: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Record wall-clock runtime in the report.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ParamsArg {
    /// Parameters such as "theta=1,0.5 lambda1=0.9 lambda3=0.2".
    #[arg(long, conflicts_with = "params_file")]
    params: Option<String>,
    /// Parameters as JSON.
    #[arg(long)]
    params_file: Option<PathBuf>,
    #[arg(short, default_value_t = 2)]
    r: u32,
}

#[derive(Subcommand)]
enum LimitCommand {
    /// Plug-in parameters of a graph colored with c colors.
    Params {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        theta_cut: usize,
        #[arg(long, default_value_t = DEFAULT_THETA_THRESHOLD)]
        threshold: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Truncated pmf of the limit law.
    Pmf {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = 1e-12)]
        tail_eps: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Draws from the limit law.
    Sample {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(short = 'n', long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Stars,
    Cliques,
}

#[derive(Clone, Copy, ValueEnum)]
enum BirthdayArg {
    Oracle,
    Mc,
    Limit,
}

enum Failure {
    Core(Error),
    Stage(ErrorKind, String),
    Tolerance,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Core(e.into())
    }
}

type CliResult = Result<(), Failure>;

fn load_graph(arg: &GraphArg) -> Result<Graph, Error> {
    let g = &arg.graph;
    if g == "-" {
        return Ok(load_edge_list(io::stdin().lock())?.graph);
    }
    if Path::new(g).is_file() {
        return Ok(load_edge_list(BufReader::new(File::open(g)?))?.graph);
    }
    match g.parse::<GeneratorSpec>() {
        Ok(spec) => generate(&spec),
        Err(e) => Err(Error::InvalidParameter(format!("`{g}` is neither a file nor a generator spec: {e}"))),
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_text(path: &Option<PathBuf>, text: &str) -> io::Result<()> {
    let mut w = sink(path)?;
    w.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        w.write_all(b"\n")?;
    }
    w.flush()
}

fn emit_json(path: &Option<PathBuf>, v: &impl serde::Serialize) -> CliResult {
    let text = serde_json::to_string_pretty(v).map_err(Error::from)?;
    Ok(emit_text(path, &text)?)
}

fn load_params(p: &ParamsArg) -> Result<LimitLawParams, Error> {
    match (&p.params, &p.params_file) {
        (Some(text), _) => parse_params(text, p.r),
        (None, Some(file)) => {
            let raw: LimitLawParams = serde_json::from_reader(BufReader::new(File::open(file)?))?;
            monostar::limit::validate_params(raw)
        }
        (None, None) => Err(Error::InvalidParameter("give --params or --params-file".into())),
    }
}

fn run_report(mut spec: ExperimentSpec, run: &RunArgs) -> CliResult {
    if let Some(s) = run.samples {
        spec.samples = s;
    }
    if let Some(s) = run.seed {
        spec.seed = s;
    }
    let opts = RunOptions {
        workers: run.workers,
        record_runtime: run.timing,
        ..RunOptions::default()
    };
    let report: Report = run_experiment_with(&spec, &opts);
    if run.out.csv {
        emit_text(&run.out.output, &report.to_csv())?;
    } else {
        emit_text(&run.out.output, &report.to_json())?;
    }
    match &report.error {
        Some(e) => Err(Failure::Stage(e.kind, e.message.clone())),
        None if report.passed() => Ok(()),
        None => Err(Failure::Tolerance),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen { spec, output } => {
            let g = generate(&spec)?;
            let mut w = sink(&output)?;
            save_edge_list(&g, &mut w)?;
            w.flush()?;
        }
        Command::Stats { graph, r, classes, method, output } => {
            let g = load_graph(&graph)?;
            let mut v = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "max_degree": g.max_degree(),
                "r": r,
                "n_star": count_stars(&g, r).to_string(),
            });
            if classes {
                let method = match method {
                    MethodArg::Auto => ClassCountMethod::Auto,
                    MethodArg::Stars => ClassCountMethod::StarEnumeration,
                    MethodArg::Cliques => ClassCountMethod::CliqueMoments,
                };
                let opts = ClassCountOptions { method, ..Default::default() };
                let cl = class_counts_with(&g, r, &opts)?;
                v["classes"] = serde_json::to_value(&cl).map_err(Error::from)?;
            }
            emit_json(&output, &v)?;
        }
        Command::Simulate { graph, r, c, samples, seed, workers, out } => {
            let g = load_graph(&graph)?;
            let cfg = McConfig { workers, ..McConfig::new(samples, seed) };
            let d = monte_carlo_with(&g, r, c, &cfg)?;
            if out.csv {
                emit_text(&out.output, &d.to_pmf().to_csv())?;
            } else {
                let v = json!({
                    "r": r,
                    "colors": c,
                    "mean": d.mean(),
                    "standard_error": d.standard_error(),
                    "distribution": d,
                });
                emit_json(&out.output, &v)?;
            }
        }
        Command::Exact { graph, r, c, witnesses, budget, out } => {
            let g = load_graph(&graph)?;
            let mut opts = OracleOptions { witnesses, ..Default::default() };
            if let Some(b) = budget {
                opts.budget = b;
            }
            let res = exact_pmf_with(&g, r, c, &opts)?;
            if out.csv {
                emit_text(&out.output, &res.pmf.to_csv())?;
            } else {
                let mean = res.pmf.mean();
                let mut v = json!({
                    "r": r,
                    "colors": c,
                    "colorings": res.colorings_visited.to_string(),
                    "mean": format!("{}/{}", mean.numer(), mean.denom()),
                    "pmf": res.pmf,
                });
                if witnesses {
                    let w: serde_json::Map<String, Value> =
                        res.witnesses.iter().map(|(t, col)| (t.to_string(), json!(col))).collect();
                    v["witnesses"] = Value::Object(w);
                }
                emit_json(&out.output, &v)?;
            }
        }
        Command::Limit { command } => match command {
            LimitCommand::Params { graph, r, c, theta_cut, threshold, output } => {
                let g = load_graph(&graph)?;
                let opts = ClassCountOptions { method: ClassCountMethod::Auto, ..Default::default() };
                let p = params_from_graph_with(&g, c, r, theta_cut, threshold, &opts)?;
                for w in &p.warnings {
                    eprintln!("warning: {w}");
                }
                emit_json(&output, &p)?;
            }
            LimitCommand::Pmf { params, tail_eps, out } => {
                let p = load_params(&params)?;
                let pmf = limit_pmf(&p, tail_eps)?;
                if out.csv {
                    emit_text(&out.output, &pmf.to_csv())?;
                } else {
                    emit_json(&out.output, &json!({ "params": p, "mean": pmf.mean(), "pmf": pmf }))?;
                }
            }
            LimitCommand::Sample { params, samples, seed, out } => {
                let p = load_params(&params)?;
                let d = sample_limit_many(&p, samples, seed, None)?;
                if out.csv {
                    emit_text(&out.output, &d.to_pmf().to_csv())?;
                } else {
                    emit_json(&out.output, &json!({ "params": p, "mean": d.mean(), "distribution": d }))?;
                }
            }
        },
        Command::Verify { name, n, run } => run_report(builtin_example(&name, n)?, &run)?,
        Command::Run { spec, run } => {
            let s: ExperimentSpec = serde_json::from_reader(BufReader::new(File::open(spec)?)).map_err(Error::from)?;
            run_report(s, &run)?
        }
        Command::Birthday { graph, r, c, method, samples, seed, theta_cut, tail_eps } => {
            let g = load_graph(&graph)?;
            let (name, m) = match method {
                BirthdayArg::Oracle => ("oracle", BirthdayMethod::Oracle),
                BirthdayArg::Mc => ("mc", BirthdayMethod::MonteCarlo { samples, seed }),
                BirthdayArg::Limit => ("limit", BirthdayMethod::Limit { theta_cut, tail_eps }),
            };
            let p = birthday_probability(&g, r, c, m)?;
            emit_json(&None, &json!({ "method": name, "r": r, "colors": c, "probability": p }))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance) => {
            eprintln!("error: report failed its tolerance checks");
            ExitCode::from(4)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                Error::Io(_) | Error::Json(_) | Error::Overflow(_) | Error::Convergence(_) => 1,
                _ => 2,
            })
        }
        Err(Failure::Stage(kind, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(match kind {
                ErrorKind::Budget => 3,
                ErrorKind::Io | ErrorKind::Numeric => 1,
                ErrorKind::InvalidInput => 2,
            })
        }
    }
}
