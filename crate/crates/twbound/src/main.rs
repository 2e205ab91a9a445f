//! Command-line interface: boundedness analysis, tree-width, recognizers,
//! substructure detection, blocks, generators, constants, extraction
//! procedures, and the sampling survey.
//!
//! Exit codes: 0 success (bounded / member / found), 1 negative verdict
//! (unbounded / non-member / not found), 2 input or usage error, 3 budget
//! exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twbound::decomposition::{exact_treewidth, TreewidthOutcome};
use twbound::detection::{find_embedding, EmbeddingMode, SearchOutcome, SubdivisionModel};
use twbound::dichotomy::{decide_bounded, survey, survey_csv, DichotomyVerdict, ForbiddenSet};
use twbound::extraction::constants::evaluate;
use twbound::extraction::{
    bigclique_extract, block_subdivision_extract, lemma_clique_extract, normalize_model_chordless,
};
use twbound::graph::formats::{parse_edge_list, parse_graph6, write_dot, write_edge_list, write_graph6};
use twbound::graph::generators::{generate, GeneratorSpec};
use twbound::graph::Graph;
use twbound::recognition::{is_complete, is_complete_bipartite, is_line_of_tripod, is_tripod};

const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Parser)]
#[command(name = "twbound", version, about = "Tree-width boundedness toolkit for finitely defined hereditary classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Graph6,
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Bipartite,
    Tripod,
    LineTripod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Procedure {
    Clique,
    Bigclique,
    Block,
}

#[derive(Subcommand)]
enum Command {
    /// Decide tree-width boundedness of the class defined by a forbidden set.
    Analyze {
        /// Comma-separated members: generator specs (complete:4) or graph files.
        #[arg(long, value_delimiter = ',', required = true)]
        forbidden: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Accept edgeless members as degenerate complete bipartite graphs.
        #[arg(long)]
        lenient_bipartite: bool,
    },
    /// Exact tree-width of a graph; prints the width.
    Treewidth {
        file: PathBuf,
        #[arg(long)]
        format: Option<GraphFormat>,
        /// Write the witness decomposition as JSON.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Membership in one of the four critical classes; prints verdict JSON.
    Recognize {
        #[arg(long)]
        family: Family,
        /// Reject path components in the line-tripod test.
        #[arg(long)]
        strict: bool,
        file: PathBuf,
    },
    /// Search for a pattern inside a host graph; prints the embedding.
    Detect {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// Subgraph mode (extra host edges allowed); default is induced.
        #[arg(long)]
        subgraph: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// k-blocks and the block number; prints a report as JSON.
    Blocks {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Emit a generated graph.
    Generate {
        /// Family spec, e.g. complete:5, wall:3, copies:2:tripod:1,1,1.
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Graph6)]
        out: OutFormat,
    },
    /// Evaluate a named constant; prints a decimal (">= N" when only a
    /// certified lower bound is representable).
    Constants {
        /// One of R, Rexact, Riter, P, C, q, c, d, m, b, deg, delete.
        #[arg(long)]
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<u64>,
    },
    /// Run an extraction procedure on JSON inputs; prints the outcome.
    Extract {
        #[arg(long)]
        procedure: Procedure,
        /// Input JSON file ("-" for stdin); see README for schemas.
        #[arg(long)]
        inputs: String,
    },
    /// Sample random graphs, keep the F-free ones, measure tree-width.
    Survey {
        #[arg(long, value_delimiter = ',', required = true)]
        forbidden: Vec<String>,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0.15)]
        edge_prob: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn fail(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn load_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let format = format.unwrap_or_else(|| sniff_format(&bytes, path));
    match format {
        GraphFormat::Graph6 => parse_graph6(&bytes).map_err(|e| e.to_string()),
        GraphFormat::Edges => {
            let text = String::from_utf8(bytes).map_err(|e| e.to_string())?;
            parse_edge_list(&text).map_err(|e| e.to_string())
        }
    }
}

/// graph6 bytes sit in 63..=126, so a leading digit marks the edge-list
/// format; .g6 files are graph6 regardless.
fn sniff_format(bytes: &[u8], path: &Path) -> GraphFormat {
    if path.extension().is_some_and(|e| e == "g6") {
        return GraphFormat::Graph6;
    }
    let first = bytes
        .iter()
        .copied()
        .find(|b| !b.is_ascii_whitespace() && *b != b'#');
    match first {
        Some(b) if b.is_ascii_digit() => GraphFormat::Edges,
        _ => GraphFormat::Graph6,
    }
}

/// Forbidden-set entry: a generator spec string, or else a graph file.
fn load_member(entry: &str) -> Result<(String, Graph), String> {
    if let Ok(spec) = entry.parse::<GeneratorSpec>() {
        let g = generate(&spec).map_err(|e| e.to_string())?;
        return Ok((entry.to_string(), g));
    }
    let path = Path::new(entry);
    let g = load_graph(path, None)?;
    Ok((entry.to_string(), g))
}

/// Re-joins comma-split generator parameters: a purely numeric fragment
/// continues the previous entry, so `tripod:1,1,1` survives the list
/// delimiter. (A graph file whose name is a bare number needs a `./` prefix.)
fn rejoin_entries(entries: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for entry in entries {
        let trimmed = entry.trim();
        if trimmed.parse::<usize>().is_ok() && !out.is_empty() {
            let last = out.last_mut().expect("non-empty");
            last.push(',');
            last.push_str(trimmed);
        } else {
            out.push(trimmed.to_string());
        }
    }
    out
}

fn load_forbidden(entries: &[String]) -> Result<ForbiddenSet, String> {
    let members = rejoin_entries(entries)
        .iter()
        .map(|e| load_member(e))
        .collect::<Result<Vec<_>, String>>()?;
    ForbiddenSet::new(members).map_err(|e| e.to_string())
}

fn print_verdict(verdict: &DichotomyVerdict) {
    if verdict.bounded {
        println!("bounded");
    } else {
        println!("unbounded (missing: {})", verdict.missing.join(", "));
    }
    let slot = |name: &str, value: &Option<String>| {
        println!("  {name}: {}", value.as_deref().unwrap_or("MISSING"));
    };
    slot("complete", &verdict.complete);
    slot("complete_bipartite", &verdict.complete_bipartite);
    slot("tripod", &verdict.tripod);
    slot("line_of_tripod", &verdict.line_of_tripod);
    if let Some(p) = &verdict.suggested_p {
        println!("  suggested p: {p}");
    }
    for note in &verdict.notes {
        println!("  note: {note}");
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphSpec {
    Graph6(String),
    Inline(Graph),
}

impl GraphSpec {
    fn build(self) -> Result<Graph, String> {
        match self {
            GraphSpec::Graph6(s) => parse_graph6(s.as_bytes()).map_err(|e| e.to_string()),
            GraphSpec::Inline(g) => Ok(g),
        }
    }
}

#[derive(Deserialize)]
struct CliqueInputs {
    graph: GraphSpec,
    sets: Vec<Vec<usize>>,
    a: usize,
    b: usize,
}

#[derive(Deserialize)]
struct BigcliqueInputs {
    graph: GraphSpec,
    model: SubdivisionModel,
    p: usize,
    r: usize,
    /// Shortcut model paths to chordless ones first (default true).
    #[serde(default = "default_true")]
    normalize: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
struct BlockInputs {
    graph: GraphSpec,
    block: Vec<usize>,
    p: usize,
    m_target: usize,
}

fn run_extract(procedure: Procedure, inputs: &str) -> Result<ExitCode, String> {
    let text = if inputs == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(inputs).map_err(|e| format!("{inputs}: {e}"))?
    };
    let result = match procedure {
        Procedure::Clique => {
            let input: CliqueInputs = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let g = input.graph.build()?;
            lemma_clique_extract(&g, &input.sets, input.a, input.b).map_err(|e| e.to_string())?
        }
        Procedure::Bigclique => {
            let input: BigcliqueInputs = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let g = input.graph.build()?;
            let model = if input.normalize {
                normalize_model_chordless(&g, &input.model)
            } else {
                input.model
            };
            bigclique_extract(&g, &model, input.p, input.r).map_err(|e| e.to_string())?
        }
        Procedure::Block => {
            let input: BlockInputs = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let g = input.graph.build()?;
            block_subdivision_extract(&g, &input.block, input.p, input.m_target)
                .map_err(|e| e.to_string())?
        }
    };
    println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze {
            forbidden,
            json,
            lenient_bipartite,
        } => {
            let set = load_forbidden(&forbidden)?;
            let verdict = decide_bounded(&set, lenient_bipartite);
            if json {
                println!("{}", serde_json::to_string_pretty(&verdict).expect("serializable"));
            } else {
                print_verdict(&verdict);
            }
            Ok(if verdict.bounded {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Treewidth {
            file,
            format,
            decomposition,
            budget,
        } => {
            let g = load_graph(&file, format)?;
            match exact_treewidth(&g, budget).map_err(|e| e.to_string())? {
                TreewidthOutcome::Exact {
                    width,
                    decomposition: td,
                } => {
                    println!("{width}");
                    if let Some(out) = decomposition {
                        let json = serde_json::to_string_pretty(&td).expect("serializable");
                        std::fs::write(&out, json).map_err(|e| format!("{}: {e}", out.display()))?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                TreewidthOutcome::BudgetExceeded { lower, upper, best } => {
                    eprintln!("budget exceeded: width in [{lower}, {upper}]");
                    if let Some(out) = decomposition {
                        let json = serde_json::to_string_pretty(&best).expect("serializable");
                        std::fs::write(&out, json).map_err(|e| format!("{}: {e}", out.display()))?;
                    }
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Recognize {
            family,
            strict,
            file,
        } => {
            let g = load_graph(&file, None)?;
            let verdict = match family {
                Family::Complete => is_complete(&g),
                Family::Bipartite => is_complete_bipartite(&g),
                Family::Tripod => is_tripod(&g),
                Family::LineTripod => is_line_of_tripod(&g, strict),
            };
            println!("{}", serde_json::to_string_pretty(&verdict).expect("serializable"));
            Ok(if verdict.member {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Detect {
            pattern,
            host,
            subgraph,
            budget,
        } => {
            let pattern = load_graph(&pattern, None)?;
            let host = load_graph(&host, None)?;
            let mode = if subgraph {
                EmbeddingMode::Subgraph
            } else {
                EmbeddingMode::Induced
            };
            match find_embedding(&pattern, &host, mode, budget) {
                SearchOutcome::Found(embedding) => {
                    println!("{}", serde_json::to_string_pretty(&embedding).expect("serializable"));
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::NotFound => {
                    println!("not found");
                    Ok(ExitCode::from(1))
                }
                SearchOutcome::BudgetExceeded => {
                    eprintln!("budget exceeded: search inconclusive");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Blocks { file, k } => {
            let g = load_graph(&file, None)?;
            if g.n() == 0 {
                return Err("block analysis needs at least one vertex".into());
            }
            let report = twbound::blocks::block_report(&g, k);
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { spec, out } => {
            let spec: GeneratorSpec = spec.parse().map_err(|e: twbound::graph::GraphError| e.to_string())?;
            let g = generate(&spec).map_err(|e| e.to_string())?;
            match out {
                OutFormat::Graph6 => {
                    println!("{}", String::from_utf8(write_graph6(&g)).expect("ascii"))
                }
                OutFormat::Edges => print!("{}", write_edge_list(&g)),
                OutFormat::Dot => print!("{}", write_dot(&g)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants { name, args } => {
            let value = evaluate(&name, &args).map_err(|e| e.to_string())?;
            println!("{}", value.to_decimal_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract { procedure, inputs } => run_extract(procedure, &inputs),
        Command::Survey {
            forbidden,
            n_min,
            n_max,
            samples,
            seed,
            csv,
            edge_prob,
            budget,
        } => {
            if n_min > n_max {
                return Err(format!("empty size range {n_min}..={n_max}"));
            }
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(format!("edge probability {edge_prob} outside [0, 1]"));
            }
            let set = load_forbidden(&forbidden)?;
            let rows = survey(&set, n_min..=n_max, samples, seed, edge_prob, budget);
            let table = survey_csv(&rows);
            print!("{table}");
            if let Some(out) = csv {
                std::fs::write(&out, table).map_err(|e| format!("{}: {e}", out.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => fail(message),
    }
}
