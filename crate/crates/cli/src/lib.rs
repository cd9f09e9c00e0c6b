//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a requested verification or audit
//! failed, 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use vft_spanner::sets::{audit_system, hash_system, random_system_seeded, AuditMode};
use vft_spanner::{
    build, check_ft_spanner_exhaustive, check_ft_spanner_sampled, choose_parameters, gen_graph,
    parse_graph, write_graph, AlgoParams, Algorithm, ExperimentRecord, Graph, GraphKind, Verdict,
    VerdictSummary, WeightDist,
};

/// Verification draws from stream 1 of the seed, so it never replays the
/// algorithm's own random choices.
fn verification_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "vft-spanner", version, about = "Vertex fault-tolerant greedy spanners")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph in edge-list format.
    Gen(GenArgs),
    /// Build a spanner of a graph and report one record.
    Build(BuildArgs),
    /// Check a spanner against its input graph.
    Verify(VerifyArgs),
    /// Audit a random or hash-derived vertex set system.
    AuditSets(AuditArgs),
    /// Sweep a parameter grid on generated graphs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format {s:?} (json|csv)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Off,
    Exhaustive,
    Sampled(usize),
}

impl FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "off" => Ok(VerifyMode::Off),
            "exhaustive" => Ok(VerifyMode::Exhaustive),
            _ => match s.strip_prefix("sampled:").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Ok(VerifyMode::Sampled(n)),
                _ => Err(format!("unknown verify mode {s:?} (off|sampled:N|exhaustive)")),
            },
        }
    }
}

impl std::fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyMode::Off => f.write_str("off"),
            VerifyMode::Exhaustive => f.write_str("exhaustive"),
            VerifyMode::Sampled(n) => write!(f, "sampled:{n}"),
        }
    }
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" => Ok(true),
        "off" => Ok(false),
        _ => Err(format!("expected on|off, got {s:?}")),
    }
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    Algorithm::parse(s).ok_or_else(|| format!("unknown algorithm {s:?} (greedy|exact|basic|fast|det)"))
}

fn parse_weights(s: &str) -> Result<WeightDist, String> {
    if s == "unit" {
        return Ok(WeightDist::Unit);
    }
    let bounds = s
        .strip_prefix("uniform:")
        .and_then(|r| r.split_once(','))
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
    match bounds {
        Some((lo, hi)) => Ok(WeightDist::Uniform { lo, hi }),
        None => Err(format!("unknown weights {s:?} (unit|uniform:LO,HI)")),
    }
}

#[derive(Args, Debug, Clone)]
pub struct GraphSpec {
    /// gnp | gnm | complete | grid | path | cycle
    #[arg(long, default_value = "gnp")]
    pub kind: String,
    /// Edge probability for gnp.
    #[arg(long)]
    pub p: Option<f64>,
    /// Edge probability for gnp as a multiple of ln(n)/n.
    #[arg(long)]
    pub p_logn: Option<f64>,
    /// Edge count for gnm.
    #[arg(long)]
    pub m: Option<usize>,
    /// Columns for grid.
    #[arg(long)]
    pub cols: Option<usize>,
    /// unit | uniform:LO,HI
    #[arg(long, default_value = "unit", value_parser = parse_weights)]
    pub weights: WeightDist,
}

impl GraphSpec {
    fn kind(&self, n: usize) -> Result<GraphKind, CliError> {
        let need = |what: &str| CliError::Usage(format!("--kind {} needs --{what}", self.kind));
        Ok(match self.kind.as_str() {
            "gnp" => {
                let p = match (self.p, self.p_logn) {
                    (Some(p), None) => p,
                    (None, Some(c)) => (c * (n.max(2) as f64).ln() / n.max(1) as f64).min(1.0),
                    (None, None) => return Err(need("p or --p-logn")),
                    (Some(_), Some(_)) => {
                        return Err(CliError::Usage("give only one of --p and --p-logn".into()))
                    }
                };
                GraphKind::Gnp { p }
            }
            "gnm" => GraphKind::Gnm {
                m: self.m.ok_or_else(|| need("m"))?,
            },
            "complete" => GraphKind::Complete,
            "grid" => GraphKind::Grid {
                cols: self.cols.ok_or_else(|| need("cols"))?,
            },
            "path" => GraphKind::Path,
            "cycle" => GraphKind::Cycle,
            other => return Err(CliError::Usage(format!("unknown graph kind {other:?}"))),
        })
    }

    fn describe(&self, n: usize, seed: u64) -> String {
        let density = match (self.kind.as_str(), self.p, self.p_logn) {
            ("gnp", Some(p), _) => format!(",p={p}"),
            ("gnp", _, Some(c)) => format!(",p={c}ln(n)/n"),
            ("gnm", ..) => format!(",m={}", self.m.unwrap_or(0)),
            ("grid", ..) => format!(",cols={}", self.cols.unwrap_or(0)),
            _ => String::new(),
        };
        let weights = match self.weights {
            WeightDist::Unit => "unit".to_string(),
            WeightDist::Uniform { lo, hi } => format!("uniform({lo},{hi})"),
        };
        format!("{}(n={n}{density},{weights},seed={seed})", self.kind)
    }

    fn generate(&self, n: usize, seed: u64) -> Result<Graph, CliError> {
        gen_graph(self.kind(n)?, n, self.weights, seed).map_err(CliError::input)
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AlgoArgs {
    /// Fault budget.
    #[arg(long)]
    pub f: usize,
    /// Stretch parameter: the spanner has stretch 2k-1.
    #[arg(long)]
    pub k: usize,
    /// Sampling constant (basic, fast).
    #[arg(long)]
    pub c: Option<f64>,
    /// Acceptance threshold (fast).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Starting delta of the hash parameter search (det).
    #[arg(long, default_value_t = vft_spanner::algos::DEFAULT_DELTA)]
    pub delta: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "off", value_parser = parse_on_off)]
    pub shortcut: bool,
}

impl AlgoArgs {
    fn params(&self) -> AlgoParams {
        let mut p = AlgoParams::new(self.f, self.k)
            .with_seed(self.seed)
            .with_delta(self.delta)
            .with_shortcut(self.shortcut);
        p.c = self.c;
        p.tau = self.tau;
        p
    }
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Input graph in edge-list format.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_algo)]
    pub algo: Algorithm,
    #[command(flatten)]
    pub params: AlgoArgs,
    /// off | sampled:N | exhaustive
    #[arg(long, default_value = "off")]
    pub verify: VerifyMode,
    #[arg(long, default_value = "json")]
    pub format: OutputFormat,
    /// Where to write the spanner (edge-list format).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long)]
    pub f: usize,
    #[arg(long)]
    pub k: usize,
    /// sampled:N | exhaustive
    #[arg(long, default_value = "exhaustive")]
    pub verify: VerifyMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    /// random | hash
    #[arg(long, default_value = "hash")]
    pub system: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub f: usize,
    #[arg(long, default_value_t = vft_spanner::algos::FAST_C)]
    pub c: f64,
    #[arg(long, default_value_t = vft_spanner::algos::DEFAULT_DELTA)]
    pub delta: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// exhaustive | sampled:N
    #[arg(long, default_value = "exhaustive")]
    pub mode: VerifyMode,
}

/// A comma-separated list flag value.
#[derive(Clone, Debug, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(List)
    }
}

/// Algorithm names, parsed through [`Algorithm::parse`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgoName(pub Algorithm);

impl FromStr for AlgoName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_algo(s).map(AlgoName)
    }
}

impl std::fmt::Display for AlgoName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma list of vertex counts.
    #[arg(long)]
    pub n: List<usize>,
    #[command(flatten)]
    pub graph: GraphSpec,
    /// Comma list of algorithms.
    #[arg(long)]
    pub algo: List<AlgoName>,
    #[arg(long)]
    pub f: List<usize>,
    #[arg(long)]
    pub k: List<usize>,
    /// Comma list of seeds; each seeds both the graph and the algorithm.
    #[arg(long, default_value = "0")]
    pub seed: List<u64>,
    /// Runs per seed, using seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = vft_spanner::algos::DEFAULT_DELTA)]
    pub delta: usize,
    #[arg(long, default_value = "off", value_parser = parse_on_off)]
    pub shortcut: bool,
    #[arg(long, default_value = "off")]
    pub verify: VerifyMode,
    #[arg(long, default_value = "json")]
    pub format: OutputFormat,
    /// Output path for records; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Runs the requested check; `Ok(None)` for `off`.
pub fn verify_graphs(
    g: &Graph,
    h: &Graph,
    f: usize,
    k: usize,
    mode: VerifyMode,
    seed: u64,
) -> Result<Option<Verdict>, CliError> {
    match mode {
        VerifyMode::Off => Ok(None),
        VerifyMode::Exhaustive => check_ft_spanner_exhaustive(g, h, f, k)
            .map(Some)
            .map_err(CliError::input),
        VerifyMode::Sampled(trials) => {
            let mut rng = verification_rng(seed);
            check_ft_spanner_sampled(g, h, f, k, trials, &mut rng)
                .map(Some)
                .map_err(CliError::input)
        }
    }
}

/// Builds, optionally verifies, and returns the record and spanner.
pub fn run_one(
    g: &Graph,
    graph_name: &str,
    algo: Algorithm,
    params: &AlgoParams,
    mode: VerifyMode,
) -> Result<(ExperimentRecord, Graph), CliError> {
    let out = build(g, algo, params).map_err(CliError::input)?;
    let mut record = ExperimentRecord::new(algo, graph_name, g, params, &out);
    let start = Instant::now();
    if let Some(verdict) = verify_graphs(g, &out.spanner, params.f, params.k, mode, params.seed)? {
        record = record.with_verdict(mode.to_string(), &verdict, start.elapsed());
    }
    Ok((record, out.spanner))
}

/// Serializes records as JSON lines or CSV with a header row.
pub fn format_records(records: &[ExperimentRecord], format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => {
            let mut s = String::new();
            for r in records {
                s.push_str(&serde_json::to_string(r).map_err(CliError::input)?);
                s.push('\n');
            }
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(CliError::input)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
            String::from_utf8(bytes).map_err(CliError::input)
        }
    }
}

/// Parses records written by [`format_records`].
pub fn parse_records(text: &str, format: OutputFormat) -> Result<Vec<ExperimentRecord>, CliError> {
    match format {
        OutputFormat::Json => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(CliError::input))
            .collect(),
        OutputFormat::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .map(|r| r.map_err(CliError::input))
            .collect(),
    }
}

fn failed(records: &[ExperimentRecord]) -> bool {
    records.iter().any(|r| r.verdict == VerdictSummary::Fail)
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = a.graph.generate(a.n, a.seed)?;
    emit(&write_graph(&g), a.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_build(a: &BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let params = a.params.params();
    let name = a.input.display().to_string();
    let (record, spanner) = run_one(&g, &name, a.algo, &params, a.verify)?;
    if let Some(path) = &a.out {
        write_file(path, &write_graph(&spanner))?;
    }
    let records = [record];
    emit(&format_records(&records, a.format)?, None, out)?;
    if failed(&records) {
        let _ = writeln!(
            err,
            "verification failed: {}",
            records[0].counterexample.as_deref().unwrap_or("")
        );
        return Ok(EXIT_FAILED);
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let h = read_graph(&a.spanner)?;
    if a.verify == VerifyMode::Off {
        return Err(CliError::Usage("verify needs --verify exhaustive or sampled:N".into()));
    }
    let verdict = verify_graphs(&g, &h, a.f, a.k, a.verify, a.seed)?.expect("mode is not off");
    let line = serde_json::to_string(&verdict).map_err(CliError::input)?;
    let _ = writeln!(out, "{line}");
    Ok(if verdict.pass { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_audit(a: &AuditArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let system = match a.system.as_str() {
        "random" => random_system_seeded(a.n, a.f, a.c, a.seed).map_err(CliError::input)?,
        "hash" => {
            let hp = choose_parameters(a.n, a.f, a.delta).map_err(CliError::input)?;
            hash_system(a.n, a.f, &hp.family).map_err(CliError::input)?
        }
        other => return Err(CliError::Usage(format!("unknown system {other:?} (random|hash)"))),
    };
    let mode = match a.mode {
        VerifyMode::Exhaustive => AuditMode::Exhaustive,
        VerifyMode::Sampled(trials) => AuditMode::Sampled { trials },
        VerifyMode::Off => return Err(CliError::Usage("audit mode cannot be off".into())),
    };
    let mut rng = verification_rng(a.seed);
    let report = audit_system(&system, a.f, mode, &mut rng).map_err(CliError::input)?;
    let line = serde_json::to_string(&report).map_err(CliError::input)?;
    let _ = writeln!(out, "{line}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

/// Grid cells in emission order: n, then algorithm, f, k, seed.
pub fn bench_records(a: &BenchArgs, mut progress: impl FnMut(&ExperimentRecord)) -> Result<Vec<ExperimentRecord>, CliError> {
    if a.reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let seeds: Vec<u64> = a
        .seed
        .0
        .iter()
        .flat_map(|&s| (0..a.reps).map(move |r| s.wrapping_add(r)))
        .collect();
    let mut records = Vec::new();
    for &n in &a.n.0 {
        let graphs: Vec<(u64, Graph)> = seeds
            .iter()
            .map(|&s| Ok((s, a.graph.generate(n, s)?)))
            .collect::<Result<_, CliError>>()?;
        for &AlgoName(algo) in &a.algo.0 {
            for &f in &a.f.0 {
                for &k in &a.k.0 {
                    for (seed, g) in &graphs {
                        let mut params = AlgoParams::new(f, k)
                            .with_seed(*seed)
                            .with_delta(a.delta)
                            .with_shortcut(a.shortcut);
                        params.c = a.c;
                        params.tau = a.tau;
                        let name = a.graph.describe(n, *seed);
                        let (record, _) = run_one(g, &name, algo, &params, a.verify)?;
                        progress(&record);
                        records.push(record);
                    }
                }
            }
        }
    }
    Ok(records)
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let records = bench_records(a, |_| {})?;
    emit(&format_records(&records, a.format)?, a.out.as_ref(), out)?;
    Ok(if failed(&records) { EXIT_FAILED } else { EXIT_OK })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Build(a) => cmd_build(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::AuditSets(a) => cmd_audit(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
