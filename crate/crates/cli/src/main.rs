use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use classgraph::census::{run_census, write_jsonl, CensusConfig, CensusSummary, Family};
use classgraph::class_graph::{conjugacy_class_data, graph_analysis, prime_graph, PrimeGraph};
use classgraph::classifier::classify_with;
use classgraph::group::DEFAULT_CAP;
use classgraph::realizer::realize_and_verify;
use classgraph::{enumerate_group, GroupSpec};

#[derive(Parser)]
#[command(
    name = "classgraph",
    version,
    about = "Prime graphs on conjugacy class sizes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prime graph of a group spec.
    Graph {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_order: u64,
    },
    /// Classify the cut vertices of a group's prime graph.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_order: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit non-zero when any theorem-level check fails.
        #[arg(long)]
        suite: bool,
    },
    /// Build a group whose prime graph is the given graph.
    Realize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_order: u64,
        /// Exit non-zero unless the round trip was verified.
        #[arg(long)]
        verify: bool,
    },
    /// Run the census over built-in families and write JSON lines.
    Census {
        /// Family such as `cyclic:512`, `symmetric:5`, `witnesses` or
        /// `file:<path>`; repeatable. Defaults to the standard census.
        #[arg(long = "family")]
        families: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_order: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn read_spec(path: &PathBuf) -> Result<GroupSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing group spec {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph {
            input,
            output,
            format,
            max_order,
        } => {
            let g = enumerate_group(&read_spec(&input)?, max_order)?;
            let graph = prime_graph(&conjugacy_class_data(&g));
            let text = match format {
                Format::Dot => graph.to_dot(&graph_analysis(&graph).articulation_points),
                Format::Json => serde_json::to_string(&graph)? + "\n",
            };
            emit(&output, &text)?;
        }
        Command::Classify {
            input,
            output,
            max_order,
            seed,
            suite,
        } => {
            let spec = read_spec(&input)?;
            let g = enumerate_group(&spec, max_order)?;
            let report = classify_with(&g, seed, Some(spec.digest()))?;
            emit(&output, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            if suite && !report.violations.is_empty() {
                eprintln!("violations: {:?}", report.violations);
                return Ok(ExitCode::from(2));
            }
        }
        Command::Realize {
            input,
            output,
            max_order,
            verify,
        } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let target: PrimeGraph = serde_json::from_str(&text)
                .with_context(|| format!("parsing graph {}", input.display()))?;
            let r = realize_and_verify(&target, max_order)?;
            emit(&output, &(serde_json::to_string(&r.spec)? + "\n"))?;
            eprintln!(
                "order {} ({:?}), verified: {}",
                r.plan.predicted_order, r.plan.mode, r.verified
            );
            if let Some(note) = &r.note {
                eprintln!("{note}");
            }
            if verify && !r.verified {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Census {
            families,
            output,
            max_order,
            seed,
            jobs,
        } => {
            let families = if families.is_empty() {
                CensusConfig::default().families
            } else {
                families
                    .iter()
                    .map(|f| f.parse::<Family>().map_err(anyhow::Error::msg))
                    .collect::<Result<_>>()?
            };
            let config = CensusConfig {
                families,
                max_order,
                jobs,
                seed,
            };
            let records = run_census(&config)?;
            match &output {
                Some(p) => {
                    let mut f = io::BufWriter::new(
                        fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
                    );
                    write_jsonl(&mut f, &records)?;
                    f.flush()?;
                }
                None => write_jsonl(&mut io::stdout().lock(), &records)?,
            }
            let summary = CensusSummary::of(&records);
            eprintln!("{}", serde_json::to_string(&summary)?);
            if summary.violations > 0 {
                return Ok(ExitCode::from(2));
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
            ExitCode::FAILURE
        }
    }
}
