use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cartwidth::bramble::SearchBudget;
use cartwidth::decomposition::{exact_treewidth, heuristic_upper_bound, ExactBudget, Strategy};
use cartwidth::io::{read_gr, write_gr, write_td};
use cartwidth::product_bramble::{refute_hitting_set, theorem_bound};
use cartwidth::report::{
    bounds_for_spec, compute_bounds, expand_sweep, run_table, table_json, table_text,
    BoundsOptions, InstanceSpec, ProductSpec,
};
use cartwidth::verify::{verify_certificate, Certificate};
use cartwidth::{cartesian_product, Error, Graph, VertexSet};

#[derive(Parser)]
#[command(
    name = "cartwidth",
    version,
    about = "Treewidth bounds for cartesian products of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Limits {
    /// Wall-clock budget for each exact search, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Largest vertex count handed to the exact treewidth solver.
    #[arg(long, default_value_t = cartwidth::decomposition::TREEWIDTH_CEILING)]
    exact_ceiling: usize,
}

impl Limits {
    fn duration(&self) -> Option<Duration> {
        self.budget_ms.map(Duration::from_millis)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in PACE .gr format.
    Gen {
        /// e.g. `pathpower:n=5,k=2` or `product:cycle:n=5,cycle:n=5`
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report every applicable treewidth bound for a product.
    Bounds {
        /// A `product:` spec; omit when giving --factor-g and --factor-h.
        instance: Option<String>,
        #[arg(long, requires = "factor_h")]
        factor_g: Option<PathBuf>,
        #[arg(long, requires = "factor_g")]
        factor_h: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        limits: Limits,
        /// Write a refutation transcript for a candidate hitting set here.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        /// Candidate set for --emit-certificate, 1-based ids separated by
        /// commas. Defaults to a seeded random set one below the bound.
        #[arg(long, value_delimiter = ',')]
        candidate: Option<Vec<usize>>,
        /// Write the narrowest decomposition found as a .td file here.
        #[arg(long)]
        emit_decomposition: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-check a certificate (bramble, .td, or refutation) against a graph.
    Verify {
        certificate: PathBuf,
        graph: PathBuf,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bounds for a sweep such as `grid:n=2..4;pathpower:n=5..6,k=2`.
    Table {
        sweep: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tree decomposition of a .gr graph, exact when within the ceiling.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        heuristic: bool,
        #[command(flatten)]
        limits: Limits,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Gen { spec, output } => {
            let g = spec.parse::<InstanceSpec>()?.build()?;
            write_out(output.as_deref(), &write_gr(&g))?;
            Ok(0)
        }
        Command::Bounds {
            instance,
            factor_g,
            factor_h,
            k,
            seed,
            limits,
            emit_certificate,
            candidate,
            emit_decomposition,
            format,
        } => {
            let opts = BoundsOptions {
                k,
                seed,
                exact_ceiling: limits.exact_ceiling,
                budget: limits.duration(),
                ..BoundsOptions::default()
            };
            let (report, g, h) = match (instance, factor_g, factor_h) {
                (Some(spec), None, None) => {
                    let spec: ProductSpec = spec.parse()?;
                    let g = cartwidth::graph::generate(spec.g)?;
                    let h = cartwidth::graph::generate(spec.h)?;
                    (bounds_for_spec(&spec, &opts)?, g, h)
                }
                (None, Some(gp), Some(hp)) => {
                    let g = read_gr(&read(&gp)?)?;
                    let h = read_gr(&read(&hp)?)?;
                    let name = format!("{} x {}", gp.display(), hp.display());
                    (compute_bounds(&name, &g, &h, &opts)?, g, h)
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "give either a product spec or both --factor-g and --factor-h".into(),
                    ))
                }
            };
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
            }
            if let Some(path) = emit_decomposition {
                let n = g.vertex_count() * h.vertex_count();
                write_out(Some(&path), &write_td(&report.best_decomposition, n))?;
            }
            if let Some(path) = emit_certificate {
                let transcript = refutation_transcript(&g, &h, report.k, candidate, seed)?;
                write_out(Some(&path), &transcript)?;
            }
            Ok(0)
        }
        Command::Verify {
            certificate,
            graph,
            budget_ms,
            format,
        } => {
            let g = read_gr(&read(&graph)?)?;
            let cert = match Certificate::parse(&read(&certificate)?) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {}: {e}", certificate.display());
                    return Ok(EXIT_INVALID);
                }
            };
            let budget = SearchBudget {
                time_limit: budget_ms.map(Duration::from_millis),
                ..SearchBudget::default()
            };
            let report = verify_certificate(&cert, &g, &budget);
            match format {
                Format::Text => {
                    println!(
                        "{} {}",
                        report.kind,
                        if report.valid { "valid" } else { "invalid" }
                    );
                    for m in &report.messages {
                        println!("  {m}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
            }
            Ok(if report.valid { 0 } else { EXIT_INVALID })
        }
        Command::Table {
            sweep,
            k,
            seed,
            limits,
            format,
        } => {
            let specs = expand_sweep(&sweep)?;
            let opts = BoundsOptions {
                k,
                seed,
                exact_ceiling: limits.exact_ceiling,
                budget: limits.duration(),
                ..BoundsOptions::default()
            };
            let rows = run_table(&specs, &opts);
            match format {
                Format::Text => print!("{}", table_text(&rows)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&table_json(&rows)).expect("table serializes")
                ),
            }
            Ok(0)
        }
        Command::Decompose {
            graph,
            heuristic,
            limits,
            output,
        } => {
            let g = read_gr(&read(&graph)?)?;
            let td = if heuristic {
                heuristic_upper_bound(&g, Strategy::MinFill).1
            } else {
                let mut budget = ExactBudget::default().with_ceiling(limits.exact_ceiling);
                budget.time_limit = limits.duration();
                exact_treewidth(&g, &budget)?.1
            };
            write_out(output.as_deref(), &write_td(&td, g.vertex_count()))?;
            Ok(0)
        }
    }
}

fn refutation_transcript(
    g: &Graph,
    h: &Graph,
    k: usize,
    candidate: Option<Vec<usize>>,
    seed: Option<u64>,
) -> Result<String, Error> {
    let p = cartesian_product(g, h)?;
    let total = p.graph().vertex_count();
    let j: VertexSet = match candidate {
        Some(ids) => ids
            .into_iter()
            .map(|id| {
                if id == 0 || id > total {
                    Err(Error::IndexOutOfRange {
                        index: id,
                        bound: total + 1,
                    })
                } else {
                    Ok(id - 1)
                }
            })
            .collect::<Result<_, _>>()?,
        None => {
            let bound = theorem_bound(k, p.min_factor_size());
            if bound.vacuous {
                return Err(Error::Precondition(
                    "the bound is vacuous; there is nothing to refute".into(),
                ));
            }
            let seed = seed.ok_or_else(|| {
                Error::InvalidParameter(
                    "--emit-certificate without --candidate needs --seed".into(),
                )
            })?;
            let size = ((bound.order() - 1) as usize).min(total);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, total, size).into_iter().collect()
        }
    };
    Ok(refute_hitting_set(&p, k, &j)?.to_transcript())
}
