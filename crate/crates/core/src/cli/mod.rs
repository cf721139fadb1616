//! Command-line entry point.

pub mod pipeline;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cluster::{emit_patch, Correspondence, KbMap};
use crate::conflation::{EmbeddingProvider, FileProvider, HashNgramProvider, SuspectOptions};
use crate::netqa::{fetch_link_graph, FetchOptions, LinkGraph, OutlierOptions, DEFAULT_ROUND_CAP};
use crate::profiler::parse_rules;
use crate::rdf::{load_dataset, Dataset, InputSpec, Iri};
use crate::reporting::{aggregate, read_findings_jsonl, render_table, write_findings_jsonl, Finding, TableFormat};
use crate::review::server::{serve, ReviewState};
use crate::review::{
    agreement_report, current_view, read_journal, read_queue, render_report, write_queue, Journal, Metric,
    ReviewItem,
};
use crate::xref::{render_summary, PrefixRegistry};
use pipeline::{CsoConfig, LintConfig, XrefConfig};

#[derive(Debug, Parser)]
#[command(name = "ontolint", version, about = "Quality checks for RDF ontologies and knowledge graphs")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for loading; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Suppress progress and warnings on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Write every output into this directory instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    pub output_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Profile properties and check object kinds and cross-references.
    Lint(LintArgs),
    /// Classify cross-reference values and print the summary table.
    Xref(XrefArgs),
    /// Synonym-cluster checks and merging.
    #[command(subcommand)]
    Cso(CsoCommand),
    /// Link-graph analysis.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Term-conflation detection.
    #[command(subcommand)]
    Conflation(ConflationCommand),
    /// Human review server and agreement statistics.
    #[command(subcommand)]
    Review(ReviewCommand),
    /// Render findings.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Debug, Args)]
pub struct XrefOpts {
    /// Prefix registry (TSV); the bundled snapshot by default.
    #[arg(long, value_name = "FILE")]
    pub registry: Option<PathBuf>,
    /// Cross-reference properties, one IRI per line.
    #[arg(long, value_name = "FILE")]
    pub props: Option<PathBuf>,
    /// Extra IRIs accepted as valid targets, one per line.
    #[arg(long, value_name = "FILE")]
    pub allow: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LintArgs {
    #[arg(long, default_value_t = crate::profiler::DEFAULT_RARE_THRESHOLD)]
    pub rare_threshold: usize,
    #[arg(long, default_value_t = crate::profiler::DEFAULT_MINORITY_FRAC)]
    pub minority_frac: f64,
    /// Range rules: `<predicate-iri> IriOnly|LiteralOnly` per line.
    #[arg(long, value_name = "FILE")]
    pub rules: Option<PathBuf>,
    /// Skip the cross-reference checks.
    #[arg(long)]
    pub no_xref: bool,
    #[command(flatten)]
    pub xref: XrefOpts,
    /// Ontology files, optionally as ID=PATH.
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Markdown => TableFormat::Markdown,
            Format::Json => TableFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct XrefArgs {
    #[command(flatten)]
    pub xref: XrefOpts,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    #[arg(long, default_value_t = 3)]
    pub top_domains: usize,
    /// Where to write per-occurrence findings (JSON lines).
    #[arg(long, value_name = "FILE")]
    pub findings_out: Option<PathBuf>,
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ClusterOpts {
    /// Equivalence properties, one IRI per line.
    #[arg(long, value_name = "FILE")]
    pub equiv_props: Option<PathBuf>,
    /// Property naming a cluster's preferred member.
    #[arg(long, value_name = "IRI")]
    pub pref_prop: Option<String>,
}

impl ClusterOpts {
    fn apply(&self, c: &mut CsoConfig) -> Result<()> {
        if let Some(p) = &self.equiv_props {
            c.equiv_props = read_iri_list(p)?;
        }
        if let Some(p) = &self.pref_prop {
            c.pref_prop = Some(Iri::new(p.clone()).context("--pref-prop")?);
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
pub struct CsoArgs {
    #[command(flatten)]
    pub cluster: ClusterOpts,
    /// Domain suffix to KB tag map, `domain<TAB>tag` per line.
    #[arg(long, value_name = "FILE")]
    pub kb_map: Option<PathBuf>,
    /// Known KB correspondences, two IRIs per line.
    #[arg(long, value_name = "FILE")]
    pub correspondence: Option<PathBuf>,
    /// Property linking topics to external KBs.
    #[arg(long, value_name = "IRI")]
    pub link_prop: Option<String>,
    /// IRI prefix of the graph's own topics.
    #[arg(long, value_name = "PREFIX")]
    pub internal_prefix: Option<String>,
    #[arg(long, default_value = "dbpedia")]
    pub kb_a: String,
    #[arg(long, default_value = "wikidata")]
    pub kb_b: String,
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum CsoCommand {
    /// Report cluster conflicts, sameAs violations and missing references.
    Check {
        #[command(flatten)]
        args: CsoArgs,
        /// Turtle patch with suggested additions.
        #[arg(long, value_name = "FILE")]
        patch_out: Option<PathBuf>,
    },
    /// Collapse each cluster onto its canonical member.
    Merge {
        #[command(flatten)]
        args: CsoArgs,
        /// Accepted for symmetry with `check`; merging writes no patch.
        #[arg(long, value_name = "FILE", hide = true)]
        patch_out: Option<PathBuf>,
        /// Member to canonical mapping (TSV).
        #[arg(long, value_name = "FILE")]
        mapping_out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Flag link targets that sit apart from the seeds' main community.
    Outliers(OutlierArgs),
}

#[derive(Debug, Args)]
pub struct OutlierArgs {
    /// Offline edge list: tab-separated node pairs.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["endpoint", "seeds"], required_unless_present = "endpoint")]
    pub edges: Option<PathBuf>,
    /// SPARQL endpoint URL.
    #[arg(long, requires = "seeds")]
    pub endpoint: Option<String>,
    /// Seed entity IRIs, one per line.
    #[arg(long, value_name = "FILE")]
    pub seeds: Option<PathBuf>,
    /// Response cache directory; ONTOLINT_CACHE when unset.
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Largest community share dropped by the third tactic.
    #[arg(long, default_value_t = 0.5)]
    pub keep_frac: f64,
    #[arg(long, default_value_t = DEFAULT_ROUND_CAP)]
    pub round_cap: usize,
    #[arg(long, default_value_t = 4)]
    pub concurrency: usize,
    #[arg(long, default_value_t = 3)]
    pub retries: u32,
    /// Review queue of AlignmentSuspect items.
    #[arg(long, value_name = "FILE")]
    pub queue_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConflationCommand {
    /// Score clusters by label similarity and queue suspects for review.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Precomputed vectors: `dim d` header, then `label<TAB>floats`.
    #[arg(long, value_name = "FILE", conflicts_with = "hash_dim")]
    pub vectors: Option<PathBuf>,
    /// Dimension of the built-in hashed trigram embedding.
    #[arg(long, value_name = "D")]
    pub hash_dim: Option<usize>,
    #[arg(long, default_value_t = crate::conflation::DEFAULT_MIN_SIZE)]
    pub min_size: usize,
    #[arg(long, default_value_t = crate::conflation::DEFAULT_MEAN_CUT)]
    pub mean_cut: f64,
    #[arg(long, default_value_t = crate::conflation::DEFAULT_STD_CUT)]
    pub std_cut: f64,
    #[arg(long)]
    pub top_k: Option<usize>,
    #[command(flatten)]
    pub cluster: ClusterOpts,
    /// Per-cluster scores (JSON lines).
    #[arg(long, value_name = "FILE")]
    pub scores_out: Option<PathBuf>,
    /// Review queue file; stdout otherwise.
    #[arg(long, value_name = "FILE")]
    pub queue_out: Option<PathBuf>,
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Ordinal,
    Nominal,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Ordinal => Metric::Ordinal,
            MetricArg::Nominal => Metric::Nominal,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ReviewCommand {
    /// Serve the review API over a queue, journaling verdicts.
    Serve {
        #[arg(long, value_name = "FILE")]
        queue: PathBuf,
        /// Verdict journal (JSON lines, appended).
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        /// Directory with a built UI (index.html).
        #[arg(long, value_name = "DIR")]
        ui: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MetricArg::Ordinal)]
        metric: MetricArg,
    },
    /// Agreement statistics from a verdict journal.
    Stats {
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::Ordinal)]
        metric: MetricArg,
        /// Only count verdicts on items of this queue.
        #[arg(long, value_name = "FILE")]
        queue: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCommand {
    /// Per-ontology summary table from a findings file.
    Render {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Count findings shared across ontologies once in the totals.
        #[arg(long)]
        dedup: bool,
    },
}

/// Parses `argv`, runs the command and maps the outcome to an exit code:
/// 0 clean, 1 when Error findings were produced, 2 on usage or I/O failure.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    crate::set_quiet(cli.quiet);
    let name = cli.command.name();
    match execute(&cli) {
        Ok(errors) => ExitCode::from(u8::from(errors)),
        Err(e) => {
            eprintln!("ontolint {name}: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lint(_) => "lint",
            Command::Xref(_) => "xref",
            Command::Cso(CsoCommand::Check { .. }) => "cso check",
            Command::Cso(CsoCommand::Merge { .. }) => "cso merge",
            Command::Graph(_) => "graph outliers",
            Command::Conflation(_) => "conflation scan",
            Command::Review(ReviewCommand::Serve { .. }) => "review serve",
            Command::Review(ReviewCommand::Stats { .. }) => "review stats",
            Command::Report(_) => "report render",
        }
    }

    /// Every file the command reads, checked before any work starts.
    fn required_paths(&self) -> Vec<PathBuf> {
        let mut out: Vec<PathBuf> = Vec::new();
        let inputs = |v: &[String]| v.iter().map(|s| InputSpec::parse(s).path).collect::<Vec<_>>();
        let xref = |x: &XrefOpts| [&x.registry, &x.props, &x.allow].into_iter().flatten().cloned().collect::<Vec<_>>();
        match self {
            Command::Lint(a) => {
                out.extend(inputs(&a.inputs));
                out.extend(a.rules.clone());
                out.extend(xref(&a.xref));
            }
            Command::Xref(a) => {
                out.extend(inputs(&a.inputs));
                out.extend(xref(&a.xref));
            }
            Command::Cso(CsoCommand::Check { args, .. } | CsoCommand::Merge { args, .. }) => {
                out.extend(inputs(&args.inputs));
                out.extend([&args.cluster.equiv_props, &args.kb_map, &args.correspondence].into_iter().flatten().cloned());
            }
            Command::Graph(GraphCommand::Outliers(a)) => {
                out.extend([&a.edges, &a.seeds].into_iter().flatten().cloned());
            }
            Command::Conflation(ConflationCommand::Scan(a)) => {
                out.extend(inputs(&a.inputs));
                out.extend([&a.vectors, &a.cluster.equiv_props].into_iter().flatten().cloned());
            }
            Command::Review(ReviewCommand::Serve { queue, .. }) => out.push(queue.clone()),
            Command::Review(ReviewCommand::Stats { out: journal, queue, .. }) => {
                out.push(journal.clone());
                out.extend(queue.clone());
            }
            Command::Report(ReportCommand::Render { input, .. }) => out.push(input.clone()),
        }
        out
    }
}

/// Destination for a named artifact: an explicit path, the output
/// directory, or stdout for the primary artifact.
struct Sink<'a> {
    dir: Option<&'a Path>,
}

impl Sink<'_> {
    fn target(&self, explicit: Option<&PathBuf>, name: &str) -> Option<PathBuf> {
        explicit.cloned().or_else(|| self.dir.map(|d| d.join(name)))
    }

    /// Writes a primary artifact: to its file when one applies, else stdout.
    fn primary(&self, explicit: Option<&PathBuf>, name: &str, content: &[u8]) -> Result<()> {
        match self.target(explicit, name) {
            Some(p) => write_file(&p, content),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(content)?;
                out.flush()?;
                Ok(())
            }
        }
    }

    /// Writes a secondary artifact only when it has a destination.
    fn secondary(&self, explicit: Option<&PathBuf>, name: &str, content: impl FnOnce() -> Vec<u8>) -> Result<()> {
        match self.target(explicit, name) {
            Some(p) => write_file(&p, &content()),
            None => Ok(()),
        }
    }
}

fn write_file(path: &Path, content: &[u8]) -> Result<()> {
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.trim_start_matches('<').trim_end_matches('>').to_string())
        .collect())
}

fn read_iri_list(path: &Path) -> Result<Vec<Iri>> {
    read_lines(path)?
        .into_iter()
        .map(|l| Iri::new(l).with_context(|| format!("in {}", path.display())))
        .collect()
}

fn note(msg: impl AsRef<str>) {
    if !crate::quiet() {
        eprintln!("{}", msg.as_ref());
    }
}

fn load(inputs: &[String], jobs: usize) -> Result<(Dataset, Vec<Finding>)> {
    let specs: Vec<InputSpec> = inputs.iter().map(|s| InputSpec::parse(s)).collect();
    let outcome = load_dataset(&specs, jobs)?;
    Ok((outcome.dataset, outcome.findings))
}

fn findings_jsonl(findings: &[Finding]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_findings_jsonl(&mut buf, findings)?;
    Ok(buf)
}

fn queue_jsonl(items: &[ReviewItem]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_queue(&mut buf, items)?;
    Ok(buf)
}

fn xref_config(opts: &XrefOpts, top_domains: usize) -> Result<XrefConfig> {
    let mut c = XrefConfig {
        top_domains,
        ..XrefConfig::default()
    };
    if let Some(p) = &opts.registry {
        c.registry = PrefixRegistry::parse(&read_text(p)?).with_context(|| format!("in {}", p.display()))?;
    }
    if let Some(p) = &opts.props {
        c.properties = read_iri_list(p)?.into_iter().map(Iri::into_string).collect::<BTreeSet<_>>();
    }
    if let Some(p) = &opts.allow {
        c.allow = read_lines(p)?.into_iter().collect();
    }
    Ok(c)
}

fn cso_config(args: &CsoArgs) -> Result<CsoConfig> {
    let mut c = CsoConfig::default();
    args.cluster.apply(&mut c)?;
    if let Some(p) = &args.kb_map {
        c.kb_map = KbMap::parse(&read_text(p)?).map_err(anyhow::Error::msg).with_context(|| format!("in {}", p.display()))?;
    }
    if let Some(p) = &args.correspondence {
        c.correspondence = Some(
            Correspondence::parse(&read_text(p)?)
                .map_err(anyhow::Error::msg)
                .with_context(|| format!("in {}", p.display()))?,
        );
    }
    if let Some(p) = &args.link_prop {
        c.link_prop = Iri::new(p.clone()).context("--link-prop")?;
    }
    if let Some(p) = &args.internal_prefix {
        c.internal_prefix = p.clone();
    }
    c.kb_a = args.kb_a.clone();
    c.kb_b = args.kb_b.clone();
    Ok(c)
}

fn execute(cli: &Cli) -> Result<bool> {
    for p in cli.command.required_paths() {
        if !p.exists() {
            bail!("{}: no such file", p.display());
        }
    }
    if let Some(d) = &cli.output_dir {
        fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
    }
    let sink = Sink { dir: cli.output_dir.as_deref() };

    match &cli.command {
        Command::Lint(a) => {
            let rules = match &a.rules {
                Some(p) => parse_rules(&read_text(p)?).with_context(|| format!("in {}", p.display()))?,
                None => Vec::new(),
            };
            let config = LintConfig {
                rare_threshold: a.rare_threshold,
                minority_frac: a.minority_frac,
                rules,
                xref: if a.no_xref { None } else { Some(xref_config(&a.xref, 3)?) },
            };
            let (dataset, mut findings) = load(&a.inputs, cli.jobs)?;
            findings.extend(pipeline::run_lint(&dataset, &config));
            sink.primary(None, "lint.findings.jsonl", &findings_jsonl(&findings)?)?;
            sink.secondary(None, "lint.summary.md", || {
                render_table(&aggregate(&findings, false), TableFormat::Markdown).into_bytes()
            })?;
            note(format!("{} findings over {} ontologies", findings.len(), dataset.len()));
            Ok(pipeline::has_errors(&findings))
        }
        Command::Xref(a) => {
            let config = xref_config(&a.xref, a.top_domains)?;
            let (dataset, _) = load(&a.inputs, cli.jobs)?;
            let report = pipeline::run_xref(&dataset, &config);
            let ext = match a.format {
                Format::Markdown => "md",
                Format::Json => "json",
            };
            let rendered = render_summary(&report.summary, a.format.into());
            sink.primary(None, &format!("xref.summary.{ext}"), rendered.as_bytes())?;
            let jsonl = findings_jsonl(&report.findings)?;
            sink.secondary(a.findings_out.as_ref(), "xref.findings.jsonl", || jsonl)?;
            Ok(pipeline::has_errors(&report.findings))
        }
        Command::Cso(CsoCommand::Check { args, patch_out }) => {
            let config = cso_config(args)?;
            let (dataset, _) = load(&args.inputs, cli.jobs)?;
            let (graph, ontology) = pipeline::combined_graph(&dataset);
            let check = pipeline::run_cso_check(&graph, &ontology, &config);
            sink.primary(None, "cso.findings.jsonl", &findings_jsonl(&check.findings)?)?;
            sink.secondary(patch_out.as_ref(), "cso.patch.ttl", || emit_patch(&check.patch).into_bytes())?;
            note(format!(
                "{} clusters, {} findings, {} patch additions",
                check.clusters.len(),
                check.findings.len(),
                check.patch.additions().count()
            ));
            Ok(pipeline::has_errors(&check.findings))
        }
        Command::Cso(CsoCommand::Merge { args, mapping_out, .. }) => {
            let config = cso_config(args)?;
            let (dataset, _) = load(&args.inputs, cli.jobs)?;
            let (graph, _) = pipeline::combined_graph(&dataset);
            let (merged, mapping) = pipeline::run_cso_merge(&graph, &config);
            sink.primary(None, "merged.nt", merged.to_ntriples().as_bytes())?;
            sink.secondary(mapping_out.as_ref(), "mapping.tsv", || {
                mapping.iter().map(|(m, c)| format!("{m}\t{c}\n")).collect::<String>().into_bytes()
            })?;
            note(format!("{} triples -> {} triples, {} topics renamed", graph.len(), merged.len(), mapping.len()));
            Ok(false)
        }
        Command::Graph(GraphCommand::Outliers(a)) => {
            let graph = match (&a.edges, &a.endpoint, &a.seeds) {
                (Some(edges), _, _) => LinkGraph::parse_edge_list(&read_text(edges)?)
                    .map_err(anyhow::Error::msg)
                    .with_context(|| format!("in {}", edges.display()))?,
                (None, Some(endpoint), Some(seeds)) => {
                    let cache = a
                        .cache
                        .clone()
                        .or_else(|| std::env::var_os("ONTOLINT_CACHE").map(PathBuf::from))
                        .unwrap_or_else(|| PathBuf::from(".ontolint-cache"));
                    fs::create_dir_all(&cache).with_context(|| format!("creating {}", cache.display()))?;
                    let opts = FetchOptions {
                        concurrency: a.concurrency.max(1),
                        retries: a.retries,
                        ..FetchOptions::default()
                    };
                    let outcome = fetch_link_graph(endpoint, &read_lines(seeds)?, &cache, &opts);
                    for (seed, e) in &outcome.errors {
                        note(format!("warning: {seed}: {e}"));
                    }
                    outcome.graph
                }
                _ => bail!("either --edges or --endpoint with --seeds is required"),
            };
            if !(a.keep_frac > 0.0 && a.keep_frac <= 1.0) {
                bail!("--keep-frac must be in (0, 1]");
            }
            let opts = OutlierOptions {
                max_keep_frac: a.keep_frac,
                seed: cli.seed,
                round_cap: a.round_cap,
            };
            let run = pipeline::run_outliers(&graph, &opts);
            let mut lines = Vec::new();
            for c in &run.candidates {
                serde_json::to_writer(&mut lines, c)?;
                lines.push(b'\n');
            }
            sink.primary(None, "outliers.jsonl", &lines)?;
            let queue = queue_jsonl(&run.items)?;
            sink.secondary(a.queue_out.as_ref(), "alignment.queue.jsonl", || queue)?;
            note(format!("{} nodes, {} candidates", graph.node_count(), run.candidates.len()));
            Ok(false)
        }
        Command::Conflation(ConflationCommand::Scan(a)) => {
            let provider: Box<dyn EmbeddingProvider> = match (&a.vectors, a.hash_dim) {
                (Some(p), _) => Box::new(FileProvider::parse(&read_text(p)?).with_context(|| format!("in {}", p.display()))?),
                (None, Some(0)) => bail!("--hash-dim must be positive"),
                (None, Some(dim)) => Box::new(HashNgramProvider { dim }),
                (None, None) => Box::new(HashNgramProvider::default()),
            };
            let mut config = CsoConfig::default();
            a.cluster.apply(&mut config)?;
            let (dataset, _) = load(&a.inputs, cli.jobs)?;
            let (graph, ontology) = pipeline::combined_graph(&dataset);
            let options = SuspectOptions {
                min_size: a.min_size,
                mean_cut: a.mean_cut,
                std_cut: a.std_cut,
                top_k: a.top_k,
            };
            let run = pipeline::run_conflation(&graph, &ontology, &config, provider.as_ref(), &options)?;
            sink.primary(a.queue_out.as_ref(), "conflation.queue.jsonl", &queue_jsonl(&run.items)?)?;
            let mut scores = Vec::new();
            for s in &run.scores {
                serde_json::to_writer(&mut scores, s)?;
                scores.push(b'\n');
            }
            sink.secondary(a.scores_out.as_ref(), "conflation.scores.jsonl", || scores)?;
            note(format!("{} clusters scored, {} suspects", run.scores.len(), run.items.len()));
            Ok(false)
        }
        Command::Review(ReviewCommand::Serve { queue, out, port, bind, ui, metric }) => {
            let items = read_queue(io::BufReader::new(
                fs::File::open(queue).with_context(|| format!("reading {}", queue.display()))?,
            ))?;
            let journal = Journal::open(out, items.iter().map(|i| i.id.clone()))
                .with_context(|| format!("opening {}", out.display()))?;
            let mut state = ReviewState::new(items, journal, cli.seed, (*metric).into());
            state.static_dir = ui.clone();
            let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind((bind.as_str(), *port))
                    .await
                    .with_context(|| format!("binding {bind}:{port}"))?;
                note(format!("listening on http://{}", listener.local_addr()?));
                serve(listener, Arc::new(state), async {
                    let _ = tokio::signal::ctrl_c().await;
                })
                .await?;
                anyhow::Ok(())
            })?;
            Ok(false)
        }
        Command::Review(ReviewCommand::Stats { out, metric, queue, format }) => {
            let history = read_journal(out).with_context(|| format!("reading {}", out.display()))?;
            let mut view = current_view(&history);
            if let Some(q) = queue {
                let items = read_queue(io::BufReader::new(fs::File::open(q)?))?;
                let ids: BTreeSet<String> = items.into_iter().map(|i| i.id).collect();
                view.retain(|(item, _), _| ids.contains(item));
            }
            let report = agreement_report(view.values(), (*metric).into());
            let (name, body) = match format {
                Format::Json => ("stats.json", serde_json::to_string_pretty(&report)? + "\n"),
                Format::Markdown => ("stats.md", render_report(&report)),
            };
            sink.primary(None, name, body.as_bytes())?;
            Ok(false)
        }
        Command::Report(ReportCommand::Render { input, format, dedup }) => {
            let findings = read_findings_jsonl(io::BufReader::new(
                fs::File::open(input).with_context(|| format!("reading {}", input.display()))?,
            ))
            .with_context(|| format!("in {}", input.display()))?;
            let table = aggregate(&findings, *dedup);
            let ext = match format {
                Format::Markdown => "md",
                Format::Json => "json",
            };
            sink.primary(None, &format!("report.{ext}"), render_table(&table, (*format).into()).as_bytes())?;
            Ok(false)
        }
    }
}
