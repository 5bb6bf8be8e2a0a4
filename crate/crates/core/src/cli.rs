//! Command-line surface: `compute`, `baseline`, `generate` and `summarize`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand as ClapSubcommand, ValueEnum};

use crate::assortativity::newman_assortativity;
use crate::config::{GeneratorConfig, RunConfig, Subcommand};
use crate::conformity::all_conformity_with_workers;
use crate::error::{Error, Result};
use crate::generators::{self, GeneratorSpec, QuintetOptions, QuintetVariant};
use crate::graph::AttributedGraph;
use crate::io::{
    build_graph, load_attributes, load_edge_list, write_attributes, write_edge_list, Delimiter,
    EdgeListOptions,
};
use crate::labels::compose_labels;
use crate::report::{BaselineFile, Format, ScoreFile, SummaryFile};
use crate::stats::DEFAULT_BINS;

#[derive(Debug, Parser)]
#[command(name = "conformity", version, about = "Path-aware node homophily for attributed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, ClapSubcommand)]
pub enum Command {
    /// Score every node for each alpha
    Compute(ComputeArgs),
    /// Global attribute assortativity and its mixing terms
    Baseline(BaselineArgs),
    /// Write a synthetic graph as edge list + attribute table
    Generate(GenerateArgs),
    /// Per-group statistics of a score file
    Summarize(SummarizeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GraphInput {
    /// Edge list, one edge per line
    #[arg(long)]
    pub graph: PathBuf,
    /// Attribute table with a header row
    #[arg(long)]
    pub attrs: PathBuf,
    #[arg(long, default_value = "id")]
    pub id_column: String,
    /// Edge-list delimiter: auto, comma, tab or whitespace
    #[arg(long, default_value = "auto")]
    pub delimiter: Delimiter,
    /// The edge list starts with a header line
    #[arg(long)]
    pub header: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Comma-separated attribute names; several form a joint label in this order
    #[arg(long, value_delimiter = ',', required = true)]
    pub attributes: Vec<String>,
    /// Comma-separated decay exponents
    #[arg(long = "alpha", value_delimiter = ',', default_value = "2.5", allow_hyphen_values = true)]
    pub alphas: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, value_delimiter = ',', required = true)]
    pub attributes: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Quintet,
    CompleteDistinct,
    ConcentricRings,
    Karate,
}

impl GeneratorKind {
    fn name(self) -> &'static str {
        match self {
            GeneratorKind::Quintet => "quintet",
            GeneratorKind::CompleteDistinct => "complete-distinct",
            GeneratorKind::ConcentricRings => "concentric-rings",
            GeneratorKind::Karate => "karate",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GeneratorKind,
    /// Quintet variant, a..e
    #[arg(long, default_value = "a")]
    pub variant: QuintetVariant,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Node count for complete-distinct
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Core clique size for concentric-rings
    #[arg(long, default_value_t = 5)]
    pub core: usize,
    /// Comma-separated ring sizes for concentric-rings
    #[arg(long, value_delimiter = ',', default_value = "5,10")]
    pub rings: Vec<usize>,
    #[arg(long, default_value = "core")]
    pub core_label: String,
    #[arg(long, default_value = "outer")]
    pub outer_label: String,
    /// Largest accepted |r| for quintet graphs
    #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
    pub max_abs_r: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_attempts: usize,
    /// Where to write the edge list
    #[arg(long)]
    pub graph: PathBuf,
    /// Where to write the attribute table
    #[arg(long)]
    pub attrs: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SummarizeArgs {
    /// Score file written by `compute` (csv or json)
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long)]
    pub attrs: PathBuf,
    #[arg(long, default_value = "id")]
    pub id_column: String,
    /// Attribute whose categories define the groups
    #[arg(long)]
    pub group_by: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

/// What a command produced: the main document and messages for stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub out: Option<PathBuf>,
    pub notes: Vec<String>,
}

/// Exit status for an error: 1 usage, 2 data, 3 generation.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => 1,
        Error::GenerationFailed { .. } => 3,
        _ => 2,
    }
}

/// One-line, prefix-tagged error message.
pub fn error_line(err: &Error) -> String {
    let kind = match exit_code(err) {
        1 => "usage",
        3 => "generation",
        _ => "data",
    };
    let msg = err.to_string().replace(['\n', '\r'], " ");
    format!("error[{kind}]: {msg}")
}

pub fn run(cli: &Cli) -> Result<Vec<String>> {
    let outcome = match &cli.command {
        Command::Compute(a) => cmd_compute(a)?,
        Command::Baseline(a) => cmd_baseline(a)?,
        Command::Generate(a) => cmd_generate(a)?,
        Command::Summarize(a) => cmd_summarize(a)?,
    };
    match &outcome.out {
        Some(path) => write_file(path, &outcome.body)?,
        None => print!("{}", outcome.body),
    }
    Ok(outcome.notes)
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| Error::io(path, e))
}

fn path_text(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn delimiter_name(d: Delimiter) -> &'static str {
    match d {
        Delimiter::Auto => "auto",
        Delimiter::Comma => "comma",
        Delimiter::Tab => "tab",
        Delimiter::Whitespace => "whitespace",
    }
}

fn input_config(command: Subcommand, input: &GraphInput, attributes: &[String]) -> RunConfig {
    let mut c = RunConfig::new(command);
    c.graph = Some(path_text(&input.graph));
    c.attrs = Some(path_text(&input.attrs));
    c.id_column = Some(input.id_column.clone());
    c.delimiter = Some(delimiter_name(input.delimiter).to_string());
    c.header = Some(input.header);
    c.attributes = attributes.to_vec();
    c
}

fn clean_attributes(raw: &[String]) -> Result<Vec<String>> {
    let names: Vec<String> = raw
        .iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Error::InvalidParameter("at least one attribute name is required".to_string()));
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::InvalidParameter(format!("attribute `{n}` listed twice")));
        }
    }
    Ok(names)
}

fn load_graph(input: &GraphInput, attributes: &[String], notes: &mut Vec<String>) -> Result<AttributedGraph> {
    let opts = EdgeListOptions {
        delimiter: input.delimiter,
        has_header: input.header,
    };
    let edges = load_edge_list(&input.graph, &opts)?;
    if edges.self_loops > 0 {
        notes.push(format!("warning: dropped {} self-loop(s)", edges.self_loops));
    }
    if edges.duplicates > 0 {
        notes.push(format!("warning: collapsed {} duplicate edge(s)", edges.duplicates));
    }
    let table = load_attributes(&input.attrs, &input.id_column, attributes)?;
    build_graph(&edges, &table, attributes)
}

pub fn cmd_compute(args: &ComputeArgs) -> Result<Outcome> {
    let attributes = clean_attributes(&args.attributes)?;
    if args.alphas.is_empty() {
        return Err(Error::InvalidParameter("no alpha values given".to_string()));
    }
    if args.bins == 0 {
        return Err(Error::InvalidParameter("--bins must be at least 1".to_string()));
    }
    let mut notes = Vec::new();
    let g = load_graph(&args.input, &attributes, &mut notes)?;
    let view = compose_labels(&g, &attributes)?;
    let results = all_conformity_with_workers(&g, &view, &args.alphas, args.workers)?;
    if let Some(first) = results.first() {
        if !first.undefined_nodes.is_empty() {
            notes.push(format!(
                "warning: {} isolated node(s) have undefined scores",
                first.undefined_nodes.len()
            ));
        }
    }

    let mut config = input_config(Subcommand::Compute, &args.input, &attributes);
    config.alphas = args.alphas.clone();
    config.format = args.format;
    config.bins = Some(args.bins);
    let file = ScoreFile::from_results(config, &g, &view, &results, args.bins)?;
    Ok(Outcome {
        body: file.render(args.format)?,
        out: args.out.clone(),
        notes,
    })
}

pub fn cmd_baseline(args: &BaselineArgs) -> Result<Outcome> {
    let attributes = clean_attributes(&args.attributes)?;
    let mut notes = Vec::new();
    let g = load_graph(&args.input, &attributes, &mut notes)?;
    let view = compose_labels(&g, &attributes)?;
    let report = newman_assortativity(&g, &view)?;
    if report.is_degenerate() {
        notes.push("warning: a single category holds every edge end; r_global is undefined".to_string());
    }
    let mut config = input_config(Subcommand::Baseline, &args.input, &attributes);
    config.format = args.format;
    let file = BaselineFile::new(config, g.edge_count(), &report);
    Ok(Outcome {
        body: file.render(args.format)?,
        out: args.out.clone(),
        notes,
    })
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<Outcome> {
    let mut gen = GeneratorConfig {
        kind: args.kind.name().to_string(),
        variant: None,
        seed: None,
        n: None,
        core: None,
        rings: Vec::new(),
        core_label: None,
        outer_label: None,
        max_abs_r: None,
        max_attempts: None,
    };
    let mut r_global = None;
    let graph = match args.kind {
        GeneratorKind::Quintet => {
            let options = QuintetOptions {
                max_abs_r: args.max_abs_r,
                max_attempts: args.max_attempts,
            };
            gen.variant = Some(args.variant.to_string());
            gen.seed = Some(args.seed);
            gen.max_abs_r = Some(args.max_abs_r);
            gen.max_attempts = Some(args.max_attempts);
            let q = generators::generate_quintet_with(args.variant, args.seed, &options)?;
            r_global = Some(q.r_global);
            q.graph
        }
        GeneratorKind::CompleteDistinct => {
            gen.n = Some(args.n);
            generators::generate(&GeneratorSpec::CompleteDistinct { n: args.n })?
        }
        GeneratorKind::ConcentricRings => {
            gen.core = Some(args.core);
            gen.rings = args.rings.clone();
            gen.core_label = Some(args.core_label.clone());
            gen.outer_label = Some(args.outer_label.clone());
            generators::generate(&GeneratorSpec::ConcentricRings {
                core: args.core,
                rings: args.rings.clone(),
                core_label: args.core_label.clone(),
                outer_label: args.outer_label.clone(),
            })?
        }
        GeneratorKind::Karate => generators::karate_fixture(),
    };

    let mut config = RunConfig::new(Subcommand::Generate);
    config.generator = Some(gen);
    let stamp = format!("#config,{}\n", config.to_json());

    let mut edges = stamp.clone().into_bytes();
    write_edge_list(&graph, &mut edges, false).map_err(|e| Error::io(&args.graph, e))?;
    let mut attrs = stamp.into_bytes();
    write_attributes(&graph, &mut attrs).map_err(|e| Error::io(&args.attrs, e))?;
    fs::write(&args.graph, edges).map_err(|e| Error::io(&args.graph, e))?;
    fs::write(&args.attrs, attrs).map_err(|e| Error::io(&args.attrs, e))?;

    let mut body = format!("nodes={} edges={}", graph.node_count(), graph.edge_count());
    if let Some(r) = r_global {
        body.push_str(&format!(" r_global={}", crate::report::fmt_num(r)));
    } else if args.kind == GeneratorKind::Karate {
        let view = compose_labels(&graph, &[generators::FACTION_ATTRIBUTE])?;
        if let Some(r) = newman_assortativity(&graph, &view)?.r_global {
            body.push_str(&format!(" r_global={}", crate::report::fmt_num(r)));
        }
    }
    body.push('\n');
    Ok(Outcome {
        body,
        out: None,
        notes: Vec::new(),
    })
}

pub fn cmd_summarize(args: &SummarizeArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&args.scores).map_err(|e| Error::io(&args.scores, e))?;
    let scores = ScoreFile::parse(&text)?;
    let table = load_attributes(&args.attrs, &args.id_column, std::slice::from_ref(&args.group_by))?;

    let mut config = RunConfig::new(Subcommand::Summarize);
    config.scores = Some(path_text(&args.scores));
    config.attrs = Some(path_text(&args.attrs));
    config.id_column = Some(args.id_column.clone());
    config.group_by = Some(args.group_by.clone());
    config.format = args.format;

    let file = SummaryFile::from_scores(config, &scores, |id| {
        table
            .value(id, &args.group_by)
            .map(str::to_string)
            .ok_or_else(|| Error::MissingAttributes(id.to_string()))
    })?;
    Ok(Outcome {
        body: file.render(args.format)?,
        out: args.out.clone(),
        notes: Vec::new(),
    })
}
