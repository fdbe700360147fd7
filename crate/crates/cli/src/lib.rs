//! Command-line pipeline over the `tfchrom` library.
//!
//! Graph outputs are newline-delimited graph6, one canonical class per line
//! and sorted by canonical key unless a command is a plain transformation of
//! its input. Reports and journals go to `--report` (standard error when
//! omitted).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use tfchrom::canon::{canonical_form, canonical_key, DedupStore};
use tfchrom::classify::{classify_stream, CountReport, GraphRecord};
use tfchrom::color::{chromatic_number, is_k_colorable, verify_chromatic_number};
use tfchrom::expand::{
    descend_order, expand_by_edge_removal, heuristic_search, CriticalMode, HeuristicConfig,
};
use tfchrom::extend::{
    certify_up_to, extend_all, lower_bound_certificate, min_max_degree, CertificateOptions,
    CertificateVerdict, ExtendError, ExtensionSpec, Fact, FactSource, KnownFacts,
};
use tfchrom::fixture;
use tfchrom::graph6::{self, ReadError};
use tfchrom::mtfgen::{generate_mtf_with, generate_triangle_free, MtfMethod};
use tfchrom::{GirthMode, Graph, MAX_ORDER};

#[derive(Debug, Clone, Parser)]
#[command(name = "tfchrom", version, about = "Search, extend and classify triangle-free k-chromatic graphs")]
pub struct PipelineConfig {
    /// Worker threads per stage.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Main output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Report and journal file; standard error when omitted.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Generate all maximal triangle-free graphs of one order.
    GenMtf {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        /// Keep only graphs with this chromatic number.
        #[arg(long)]
        chromatic: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Maximum-degree extension from host graphs.
    Extend(ExtendArgs),
    /// All k-chromatic spanning subgraphs of the input graphs.
    Expand {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArg,
    },
    /// Classify k-chromatic graphs and print count tables.
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[command(flatten)]
        input: InputArg,
    },
    /// Full count pipeline: mtf generation, chromatic filter, edge-removal
    /// expansion and classification for a range of orders.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also write every graph found as graph6 to this file.
        #[arg(long)]
        graphs: Option<PathBuf>,
    },
    /// Apply the Mycielski construction to every input graph.
    Mycielski {
        #[command(flatten)]
        input: InputArg,
    },
    /// Heuristic search for graphs that are not vertex-critical.
    Heuristic(HeuristicArgs),
    /// Remove non-critical vertices from graphs that are not vertex-critical.
    Descend {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArg,
    },
    /// Prove that no graph with the given order and chromatic number exists.
    CertifyLowerBound(CertifyArgs),
    /// Check the bundled fixtures, or an input stream against a chromatic
    /// number.
    Verify(VerifyArgs),
    /// Canonicalise and deduplicate a graph6 stream.
    Canon {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct InputArg {
    /// graph6 input file; standard input when omitted or `-`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Filter,
    Decomposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// Aligned count tables.
    Text,
    /// One JSON object per count row.
    Json,
    /// One JSON object per graph.
    Records,
}

#[derive(Debug, Clone, Args)]
pub struct ExtendArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Maximum degree; every feasible degree when omitted (hosts are then
    /// generated).
    #[arg(long)]
    pub d: Option<usize>,
    /// 3 (or 4) for triangle-free, 5 for girth at least 5.
    #[arg(long, default_value_t = 3)]
    pub girth: u8,
    #[arg(long)]
    pub vertex_critical_only: bool,
    /// Host graphs as graph6; generated exhaustively when omitted.
    #[arg(long)]
    pub hosts: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HeuristicArgs {
    #[arg(long)]
    pub k: usize,
    /// Maximum number of rounds.
    #[arg(long, default_value_t = 100)]
    pub budget: usize,
    /// Stop once this many non-vertex-critical graphs are harvested.
    #[arg(long, default_value_t = 1)]
    pub quota: usize,
    /// Sample this many critical subgraphs per graph instead of
    /// enumerating all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seed with the Mycielski images of the inputs, which must then be
    /// (k-1)-chromatic.
    #[arg(long)]
    pub mycielski_seeds: bool,
    /// Write the final pool here as graph6.
    #[arg(long)]
    pub pool: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArg,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// 3 (or 4) for triangle-free, 5 for girth at least 5.
    #[arg(long, default_value_t = 3)]
    pub girth: u8,
    /// Certify only `n` instead of every order up to `n`.
    #[arg(long)]
    pub only: bool,
    /// Largest host order generated exhaustively.
    #[arg(long, default_value_t = 10)]
    pub max_host_order: usize,
    /// Use the bundled published facts (marked as imported).
    #[arg(long)]
    pub literature: bool,
    /// Imported fact `K:N[:5]`: no graph with chromatic number at least K
    /// on at most N vertices (girth at least 5 with the suffix).
    #[arg(long = "assume-none", value_name = "K:N[:5]")]
    pub assume_none: Vec<String>,
    /// Count report (JSON lines) holding every graph of chromatic number
    /// `--report-k`; read as maximum-degree facts.
    #[arg(long, requires = "report_k")]
    pub count_report: Option<PathBuf>,
    #[arg(long)]
    pub report_k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Check an input stream instead of the fixtures: every graph must be
    /// triangle-free with chromatic number `k`.
    #[arg(long)]
    pub k: Option<usize>,
    /// With `--k`, the graph6 stream to check.
    #[command(flatten)]
    pub input: InputArg,
    /// Write the fixtures as graph6 to the output.
    #[arg(long)]
    pub emit_graph6: bool,
    /// Relabelled reruns of the colouring solver per check.
    #[arg(long, default_value_t = 2)]
    pub restarts: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("graph6 input: {0}")]
    Read(#[from] ReadError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidConfig(_) => 2,
            _ => 1,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidConfig(msg.into())
}

fn girth_mode(g: u8) -> Result<GirthMode, CliError> {
    match g {
        3 | 4 => Ok(GirthMode::TriangleFree),
        5 => Ok(GirthMode::AtLeastFive),
        other => Err(invalid(format!("girth must be 3 (or 4, both meaning triangle-free) or 5, got {other}"))),
    }
}

fn check_k(k: usize) -> Result<(), CliError> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    Ok(())
}

fn check_order(n: usize) -> Result<(), CliError> {
    if n > MAX_ORDER {
        return Err(invalid(format!("order {n} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

impl PipelineConfig {
    /// Parameter sanity checks that do not need any input.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.workers == 0 {
            return Err(invalid("workers must be at least 1"));
        }
        match &self.command {
            Command::GenMtf { n, chromatic, .. } => {
                check_order(*n)?;
                if let Some(k) = chromatic {
                    check_k(*k)?;
                }
            }
            Command::Extend(a) => {
                check_order(a.n)?;
                girth_mode(a.girth)?;
                if a.k < 2 {
                    return Err(invalid("extension needs k at least 2"));
                }
                if let Some(d) = a.d {
                    let bound = min_max_degree(a.k);
                    if d < bound {
                        return Err(invalid(format!("d = {d} is below {bound}, the least possible for k = {}", a.k)));
                    }
                } else if a.hosts.is_some() {
                    return Err(invalid("--hosts needs --d"));
                }
            }
            Command::Expand { k, .. } | Command::Classify { k, .. } => check_k(*k)?,
            Command::Count { k, n_min, n_max, .. } => {
                check_k(*k)?;
                let hi = n_max.unwrap_or(*n_min);
                check_order(hi)?;
                if hi < *n_min {
                    return Err(invalid("n-max below n-min"));
                }
            }
            Command::Descend { k, .. } => {
                if *k < 2 {
                    return Err(invalid("descend needs k at least 2"));
                }
            }
            Command::Heuristic(a) => {
                if a.k < 2 {
                    return Err(invalid("heuristic search needs k at least 2"));
                }
                if a.samples == Some(0) {
                    return Err(invalid("samples must be positive"));
                }
            }
            Command::CertifyLowerBound(a) => {
                check_order(a.n)?;
                girth_mode(a.girth)?;
                if a.k < 3 {
                    return Err(invalid("certificates need k at least 3"));
                }
            }
            Command::Verify(a) => {
                if let Some(k) = a.k {
                    check_k(k)?;
                }
            }
            Command::Mycielski { .. } | Command::Canon { .. } => {}
        }
        Ok(())
    }
}

/// Standard streams, replaceable for in-process runs.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs `cfg` against the process streams.
pub fn run(cfg: &PipelineConfig) -> Result<(), CliError> {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(
        cfg,
        Streams {
            stdin: &mut stdin.lock(),
            stdout: &mut stdout.lock(),
            stderr: &mut stderr.lock(),
        },
    )
}

struct Ctx<'c, 's> {
    cfg: &'c PipelineConfig,
    streams: Streams<'s>,
    out_file: Option<BufWriter<File>>,
    report_file: Option<BufWriter<File>>,
}

impl Ctx<'_, '_> {
    fn out(&mut self) -> &mut dyn Write {
        match &mut self.out_file {
            Some(f) => f,
            None => self.streams.stdout,
        }
    }

    fn report(&mut self) -> &mut dyn Write {
        match &mut self.report_file {
            Some(f) => f,
            None => self.streams.stderr,
        }
    }

    fn read_input(&mut self, arg: &InputArg) -> Result<Vec<Graph>, CliError> {
        match &arg.input {
            Some(p) if p != Path::new("-") => read_graph_file(p),
            _ => Ok(graph6::read_all(BufReader::new(&mut *self.streams.stdin))?),
        }
    }

    fn write_graphs<'g>(&mut self, graphs: impl IntoIterator<Item = &'g Graph>) -> Result<(), CliError> {
        graph6::write_all(self.out(), graphs)?;
        Ok(())
    }
}

fn read_graph_file(p: &Path) -> Result<Vec<Graph>, CliError> {
    let f = File::open(p).map_err(|e| invalid(format!("cannot open {}: {e}", p.display())))?;
    Ok(graph6::read_all(BufReader::new(f))?)
}

fn create(p: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(p)?))
}

/// Runs `cfg` with explicit streams; files named in the config are still
/// used for output.
pub fn run_with(cfg: &PipelineConfig, streams: Streams<'_>) -> Result<(), CliError> {
    cfg.validate()?;
    let mut ctx = Ctx {
        cfg,
        streams,
        out_file: cfg.output.as_deref().map(create).transpose()?,
        report_file: cfg.report.as_deref().map(create).transpose()?,
    };
    let result = dispatch(&mut ctx);
    ctx.out().flush()?;
    ctx.report().flush()?;
    result
}

fn dispatch(ctx: &mut Ctx<'_, '_>) -> Result<(), CliError> {
    let workers = ctx.cfg.workers;
    match ctx.cfg.command.clone() {
        Command::GenMtf { n, min_degree, chromatic, method } => {
            let method = match method {
                Method::Auto => MtfMethod::Auto,
                Method::Filter => MtfMethod::Filter,
                Method::Decomposition => MtfMethod::Decomposition,
            };
            let mut graphs = generate_mtf_with(n, min_degree, method, workers);
            if let Some(k) = chromatic {
                graphs.retain(|g| chromatic_number(g) == k);
            }
            writeln!(ctx.report(), "gen-mtf n={n} min_degree={min_degree} count={}", graphs.len())?;
            ctx.write_graphs(&graphs)
        }
        Command::Extend(a) => run_extend(ctx, &a),
        Command::Expand { k, input } => {
            let inputs = ctx.read_input(&input)?;
            let out = expand_by_edge_removal(&inputs, k, workers);
            for i in &out.rejected {
                writeln!(ctx.report(), "skipped input {i}: not triangle-free with chromatic number {k}")?;
            }
            writeln!(ctx.report(), "expand k={k} inputs={} count={}", inputs.len(), out.graphs.len())?;
            ctx.write_graphs(&out.graphs)
        }
        Command::Classify { k, format, input } => {
            let inputs = ctx.read_input(&input)?;
            let classified = classify_stream(&inputs, k, workers);
            for issue in &classified.issues {
                writeln!(ctx.report(), "skipped {issue}")?;
            }
            let text = render_records(&classified.records, format);
            ctx.out().write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Count { k, n_min, n_max, format, graphs } => {
            let mut all = Vec::new();
            let mut report = CountReport::new();
            for n in n_min..=n_max.unwrap_or(n_min) {
                let found = count_pipeline(k, n, workers);
                let classified = classify_stream(&found, k, workers);
                report.add_empty_row(n);
                for r in &classified.records {
                    report.add(r);
                }
                writeln!(ctx.report(), "count k={k} n={n} graphs={}", found.len())?;
                all.extend(classified.records);
            }
            if let Some(p) = graphs {
                graph6::write_all(create(&p)?, all.iter().map(|r| &r.graph))?;
            }
            let text = match format {
                ReportFormat::Records => render_records(&all, format),
                _ => render_report(&report, format),
            };
            ctx.out().write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Mycielski { input } => {
            let inputs = ctx.read_input(&input)?;
            let out: Vec<Graph> = inputs.iter().map(Graph::mycielski).collect();
            ctx.write_graphs(&out)
        }
        Command::Heuristic(a) => run_heuristic(ctx, &a),
        Command::Descend { k, input } => {
            let inputs = ctx.read_input(&input)?;
            let mut store = std::collections::BTreeMap::new();
            for (i, g) in inputs.iter().enumerate() {
                match descend_order(g, k) {
                    Ok(list) => {
                        for h in list {
                            store.entry(canonical_key(&h)).or_insert(h);
                        }
                    }
                    Err(e) => writeln!(ctx.report(), "skipped input {i}: {e}")?,
                }
            }
            let out: Vec<Graph> = store.into_values().collect();
            writeln!(ctx.report(), "descend k={k} inputs={} count={}", inputs.len(), out.len())?;
            ctx.write_graphs(&out)
        }
        Command::CertifyLowerBound(a) => run_certify(ctx, &a),
        Command::Verify(a) => run_verify(ctx, &a),
        Command::Canon { input } => {
            let inputs = ctx.read_input(&input)?;
            let mut store = DedupStore::new();
            let mut reps = std::collections::BTreeMap::new();
            for g in &inputs {
                let form = canonical_form(g);
                let key = form.key();
                if store.insert_key(key.clone()) {
                    reps.insert(key, form.graph);
                }
            }
            writeln!(
                ctx.report(),
                "canon accepted={} rejected={}",
                store.accepted_count(),
                store.rejected_count()
            )?;
            let out: Vec<Graph> = reps.into_values().collect();
            ctx.write_graphs(&out)
        }
    }
}

/// Every triangle-free k-chromatic graph of order `n`, one canonical
/// representative per class and sorted by key: the k-chromatic maximal
/// triangle-free graphs followed by edge-removal expansion.
pub fn count_pipeline(k: usize, n: usize, workers: usize) -> Vec<Graph> {
    let mtf: Vec<Graph> = generate_mtf_with(n, 0, MtfMethod::Auto, workers)
        .into_iter()
        .filter(|g| is_k_colorable(g, k).is_some() && (k == 0 || is_k_colorable(g, k - 1).is_none()))
        .collect();
    if k == 0 {
        return mtf;
    }
    expand_by_edge_removal(&mtf, k, workers).graphs
}

/// Per-graph record as written by `classify --format records`.
#[derive(Debug, Serialize)]
pub struct RecordLine {
    pub graph6: String,
    pub n: usize,
    pub chi: usize,
    pub max_deg: usize,
    pub min_deg: usize,
    pub girth: Option<usize>,
    pub is_mtf: bool,
    pub is_vertex_critical: bool,
    pub is_critical: bool,
    pub is_regular: bool,
    pub aut_order: String,
}

impl From<&GraphRecord> for RecordLine {
    fn from(r: &GraphRecord) -> Self {
        RecordLine {
            graph6: graph6::encode(&r.graph),
            n: r.graph.order(),
            chi: r.chi,
            max_deg: r.max_deg,
            min_deg: r.min_deg,
            girth: r.girth,
            is_mtf: r.is_mtf,
            is_vertex_critical: r.is_vertex_critical,
            is_critical: r.is_critical,
            is_regular: r.is_regular,
            aut_order: r.aut_order.to_string(),
        }
    }
}

fn render_records(records: &[GraphRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Records => records
            .iter()
            .map(|r| serde_json::to_string(&RecordLine::from(r)).expect("records serialise") + "\n")
            .collect(),
        _ => render_report(&records.iter().collect(), format),
    }
}

fn render_report(report: &CountReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => report.to_json_lines(),
        _ => format!("{}\n{}", report.render_degree_table(), report.render_class_table()),
    }
}

/// Hosts for one extension case.
#[derive(Debug, Clone, Default)]
pub struct HostSet {
    /// Every graph in the girth regime of the host order and degree cap with
    /// chromatic number `k - 1`.
    pub hosts: Vec<Graph>,
    /// Candidates with chromatic number `k` or more. The extension does not
    /// start from these, so graphs whose host would be one of them are not
    /// generated.
    pub too_chromatic: usize,
}

pub fn generate_hosts(spec: &ExtensionSpec, workers: usize) -> HostSet {
    let Some(m) = spec.host_order() else {
        return HostSet::default();
    };
    let candidates = generate_triangle_free(m, Some(spec.host_max_degree()), spec.girth, workers);
    let chis = tfchrom::par::map_sharded(&candidates, workers, chromatic_number);
    let mut set = HostSet::default();
    for (g, chi) in candidates.into_iter().zip(chis) {
        if chi == spec.k - 1 {
            set.hosts.push(g);
        } else if chi >= spec.k {
            set.too_chromatic += 1;
        }
    }
    set
}

fn run_extend(ctx: &mut Ctx<'_, '_>, a: &ExtendArgs) -> Result<(), CliError> {
    let workers = ctx.cfg.workers;
    let girth = girth_mode(a.girth)?;
    let degrees: Vec<usize> = match a.d {
        Some(d) => vec![d],
        None => (min_max_degree(a.k)..a.n).collect(),
    };
    let given_hosts = a.hosts.as_deref().map(read_graph_file).transpose()?;
    let mut found = std::collections::BTreeMap::new();
    for d in degrees {
        let spec = ExtensionSpec::new(a.k, a.n, d)
            .with_girth(girth)
            .with_vertex_critical_only(a.vertex_critical_only);
        let hosts = match &given_hosts {
            Some(h) => h.clone(),
            None => {
                let set = generate_hosts(&spec, workers);
                if set.too_chromatic > 0 {
                    writeln!(
                        ctx.report(),
                        "warning d={d}: {} candidate hosts have chromatic number >= {}; \
                         graphs built on them are not generated",
                        set.too_chromatic,
                        a.k
                    )?;
                }
                set.hosts
            }
        };
        let out = extend_all(&spec, &hosts, workers)?;
        for (i, why) in &out.rejected_hosts {
            writeln!(ctx.report(), "skipped host {i}: {why}")?;
        }
        writeln!(
            ctx.report(),
            "case d={d} hosts={} host_count={} count={}",
            spec.host_class(),
            hosts.len(),
            out.graphs.len()
        )?;
        for e in out.graphs {
            found.entry(e.key).or_insert(e.graph);
        }
    }
    let graphs: Vec<Graph> = found.into_values().collect();
    ctx.write_graphs(&graphs)
}

fn run_heuristic(ctx: &mut Ctx<'_, '_>, a: &HeuristicArgs) -> Result<(), CliError> {
    let inputs = ctx.read_input(&a.input)?;
    let has_chi = |g: &Graph| is_k_colorable(g, a.k - 1).is_none() && is_k_colorable(g, a.k).is_some();
    let seeds: Vec<Graph> = if a.mycielski_seeds {
        // Mycielski images are rarely maximal; their completions seed the pool.
        let mut completed = std::collections::BTreeMap::new();
        for (i, g) in inputs.iter().enumerate() {
            let m = g.mycielski();
            if !m.is_triangle_free() || !has_chi(&m) {
                return Err(invalid(format!(
                    "input {i} is not triangle-free with chromatic number {}",
                    a.k - 1
                )));
            }
            for h in tfchrom::mtfgen::mtf_closure(&m).expect("triangle-free") {
                if has_chi(&h) {
                    completed.entry(canonical_key(&h)).or_insert(h);
                }
            }
        }
        completed.into_values().collect()
    } else {
        if let Some(i) = inputs.iter().position(|g| !g.is_mtf() || !has_chi(g)) {
            return Err(invalid(format!(
                "seed {i} is not a maximal triangle-free graph with chromatic number {}",
                a.k
            )));
        }
        inputs
    };
    let cfg = HeuristicConfig {
        max_rounds: a.budget,
        quota: a.quota,
        mode: match a.samples {
            Some(samples) => CriticalMode::Sampled { samples },
            None => CriticalMode::Exact,
        },
        seed: a.seed,
        workers: ctx.cfg.workers,
    };
    let outcome = heuristic_search(&seeds, a.k, &cfg);
    for line in &outcome.journal {
        writeln!(ctx.report(), "{line}")?;
    }
    writeln!(ctx.report(), "stop={:?}", outcome.stop)?;
    if let Some(p) = &a.pool {
        graph6::write_all(create(p)?, &outcome.pool)?;
    }
    ctx.write_graphs(&outcome.harvest)
}

fn parse_assume_none(s: &str) -> Result<Fact, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.parse::<usize>().map_err(|_| invalid(format!("bad fact {s:?}")));
    let (k, max_order, girth) = match parts.as_slice() {
        [k, n] => (num(k)?, num(n)?, GirthMode::TriangleFree),
        [k, n, g] => (num(k)?, num(n)?, girth_mode(num(g)? as u8)?),
        _ => return Err(invalid(format!("bad fact {s:?}, expected K:N[:5]"))),
    };
    Ok(Fact::NoGraphsUpTo {
        k,
        max_order,
        girth,
        source: FactSource::Imported(format!("command line {s}")),
    })
}

fn run_certify(ctx: &mut Ctx<'_, '_>, a: &CertifyArgs) -> Result<(), CliError> {
    let girth = girth_mode(a.girth)?;
    let mut facts = if a.literature {
        KnownFacts::literature()
    } else {
        KnownFacts::new()
    };
    for s in &a.assume_none {
        facts.push(parse_assume_none(s)?);
    }
    if let (Some(p), Some(k)) = (&a.count_report, a.report_k) {
        let text = std::fs::read_to_string(p)?;
        let report = CountReport::from_json_lines(&text)
            .map_err(|e| invalid(format!("count report {}: {e}", p.display())))?;
        facts.add_count_report(k, girth, &report, &format!("count report {}", p.display()));
    }
    let opts = CertificateOptions {
        max_host_order: a.max_host_order,
        workers: ctx.cfg.workers,
    };
    let certs = if a.only {
        vec![lower_bound_certificate(a.k, a.n, girth, &facts, &opts)?]
    } else {
        certify_up_to(a.k, a.n, girth, &facts, &opts)?
    };
    for c in &certs {
        ctx.out().write_all(c.render().as_bytes())?;
    }
    let last = certs.last().expect("at least one order");
    let proved = certs
        .iter()
        .filter(|c| c.verdict == CertificateVerdict::NoGraph)
        .map(|c| c.n)
        .max();
    let summary = match last.verdict {
        CertificateVerdict::WitnessFound => format!("summary k={} witness_at={}", a.k, last.n),
        CertificateVerdict::NoGraph => format!("summary k={} no_graph_on={} vertices", a.k, last.n),
        CertificateVerdict::Undecided => format!("summary k={} undecided_at={} last_proved={proved:?}", a.k, last.n),
    };
    writeln!(ctx.out(), "{summary}")?;
    Ok(())
}

fn run_verify(ctx: &mut Ctx<'_, '_>, a: &VerifyArgs) -> Result<(), CliError> {
    let mut failures = Vec::new();
    // with graph6 on the output, check lines move to the report
    let to_report = a.emit_graph6;
    let mut check = |ctx: &mut Ctx<'_, '_>, name: &str, ok: bool| -> Result<(), CliError> {
        let line = format!("check {name} {}", if ok { "ok" } else { "FAILED" });
        if to_report {
            writeln!(ctx.report(), "{line}")?;
        } else {
            writeln!(ctx.out(), "{line}")?;
        }
        if !ok {
            failures.push(name.to_string());
        }
        Ok(())
    };
    if let Some(k) = a.k {
        let inputs = ctx.read_input(&a.input)?;
        for (i, g) in inputs.iter().enumerate() {
            check(ctx, &format!("input-{i}-triangle-free"), g.is_triangle_free())?;
            check(ctx, &format!("input-{i}-chi={k}"), verify_chromatic_number(g, k, a.restarts, i as u64))?;
        }
    } else {
        let r24 = fixture::regular_24();
        check(ctx, "regular24-triangle-free", r24.is_triangle_free())?;
        check(ctx, "regular24-7-regular", r24.is_regular() && r24.max_degree() == 7)?;
        check(ctx, "regular24-chi=5", verify_chromatic_number(&r24, 5, a.restarts, 24))?;
        check(
            ctx,
            "regular24-not-5-critical",
            tfchrom::color::is_critical(&r24, 5) == Ok(false),
        )?;
        let s40 = fixture::six_chromatic_40();
        check(ctx, "sixchrom40-triangle-free", s40.is_triangle_free())?;
        check(ctx, "sixchrom40-chi=6", verify_chromatic_number(&s40, 6, a.restarts, 40))?;
        check(ctx, "sixchrom40-max-degree-11..14", (11..=14).contains(&s40.max_degree()))?;
        let aut = tfchrom::canon::automorphism_group_order(&s40);
        check(ctx, "sixchrom40-aut-1-or-2", aut == 1u32.into() || aut == 2u32.into())?;
        if a.emit_graph6 {
            ctx.write_graphs([&r24, &s40])?;
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.join(", ")))
    }
}
