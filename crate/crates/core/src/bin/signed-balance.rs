use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use signed_balance::axioms::{self, Column, Constant, Corpus, CorpusConfig, Squared, Tolerance};
use signed_balance::experiment::{self, ErSweep, Experiment, Family, FamilySweep, RegularSweep};
use signed_balance::ingestion::{self, IngestError};
use signed_balance::measure::{ConflictScope, EvalConfig, MeasureId};
use signed_balance::report::BalanceReport;
use signed_balance::stats::DEFAULT_RESHUFFLES;
use signed_balance::{cycles, frustration, SignedGraph};

/// Measures of partial balance on undirected signed graphs.
#[derive(Parser)]
#[command(name = "signed-balance", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute measures for one graph.
    Analyze(AnalyzeArgs),
    /// Compare measures against sign-reshuffled copies of a graph.
    Reshuffle(ReshuffleArgs),
    /// Run a synthetic sweep and print long-format CSV.
    Experiment(ExperimentArgs),
    /// Check the axioms and properties for a set of measures.
    Axioms(AxiomsArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Comma-separated measures, or `all`.
    #[arg(long, default_value = "all")]
    measures: String,
    /// Path-extension budget for the cycle census.
    #[arg(long, default_value_t = cycles::DEFAULT_CENSUS_BUDGET)]
    census_budget: u64,
    /// Longest cycle counted by the census (default: n).
    #[arg(long)]
    max_cycle_len: Option<usize>,
    /// Node-visit budget for exact frustration.
    #[arg(long, default_value_t = frustration::DEFAULT_BNB_BUDGET)]
    bnb_budget: u64,
    /// Whether lambda and A use the whole graph or its largest cyclic component.
    #[arg(long, value_enum, default_value_t = Scope::Giant)]
    scope: Scope,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Whole,
    Giant,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file, or a dataset name (G1..G7) resolved in the data directory.
    input: String,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Restrict to the largest connected component first.
    #[arg(long)]
    giant: bool,
}

#[derive(Args)]
struct ReshuffleArgs {
    #[command(flatten)]
    analyze: AnalyzeArgs,
    #[arg(long, default_value_t = DEFAULT_RESHUFFLES)]
    reshuffles: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ErSweep,
    RegularSweep,
    Kna,
    Knc,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[command(flatten)]
    common: Common,
    /// Order of the random topology (er-sweep).
    #[arg(long, default_value_t = 15)]
    n: usize,
    /// Edge probability (er-sweep).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Comma-separated `m⁻` values (er-sweep; default all).
    #[arg(long, value_delimiter = ',')]
    negatives: Option<Vec<usize>>,
    /// Comma-separated orders (regular-sweep, kna, knc).
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<usize>>,
    /// Degree (regular-sweep).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Fraction of negative edges (regular-sweep).
    #[arg(long, default_value_t = 0.5)]
    negative_fraction: f64,
    /// Runs per parameter value (default 50 for er-sweep, 100 for regular-sweep).
    #[arg(long)]
    runs: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum MatrixFormat {
    Csv,
    Table,
}

#[derive(Args)]
struct AxiomsArgs {
    /// Comma-separated measures; default is the nine published columns
    /// (with D_k as the family D3, D4, D5).
    #[arg(long)]
    measures: Option<String>,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
    format: MatrixFormat,
    /// Apply h(x) = x² to every measure.
    #[arg(long)]
    squared: bool,
    /// Append a constant measure that must fail A1.
    #[arg(long)]
    self_test: bool,
    /// Margin for strict inequalities and range checks.
    #[arg(long, default_value_t = axioms::STRICT_TOL)]
    eps: f64,
    /// Margin for equalities.
    #[arg(long, default_value_t = axioms::EQUAL_TOL)]
    equal_eps: f64,
    /// Random graphs in the corpus.
    #[arg(long, default_value_t = CorpusConfig::default().random_count)]
    random: usize,
    /// Largest order enumerated exhaustively.
    #[arg(long, default_value_t = CorpusConfig::default().exhaustive_max_n)]
    exhaustive_max_n: usize,
    #[arg(long, default_value_t = CorpusConfig::default().seed)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Input(String),
    Infeasible(String),
    Internal(String),
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn init_pool(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn eval_config(c: &Common) -> EvalConfig {
    EvalConfig {
        census_budget: c.census_budget,
        max_cycle_len: c.max_cycle_len,
        bnb_budget: c.bnb_budget,
        conflict_scope: match c.scope {
            Scope::Whole => ConflictScope::Whole,
            Scope::Giant => ConflictScope::GiantComponent,
        },
    }
}

fn parse_measures(text: &str) -> Result<Vec<MeasureId>, Failure> {
    MeasureId::parse_list(text).map_err(|e| Failure::Input(e.to_string()))
}

fn load(input: &str) -> Result<SignedGraph, Failure> {
    let path = PathBuf::from(input);
    if path.exists() {
        return Ok(ingestion::read_edge_list(&path)?);
    }
    match ingestion::dataset(input) {
        Ok(_) => Ok(ingestion::load_bundled(input)?),
        Err(_) => Err(Failure::Input(format!("no such file or dataset: {input}"))),
    }
}

fn emit(report: &BalanceReport, a: &AnalyzeArgs) -> Result<(), Failure> {
    let report = if a.timing { report.clone() } else { report.clone().without_timing() };
    let text = match a.format {
        Format::Json => report.to_json() + "\n",
        Format::Table => report.to_table(),
    };
    io::stdout().write_all(text.as_bytes())?;
    if !report.values_in_range() {
        return Err(Failure::Internal("a measure left its documented range".into()));
    }
    if report.any_skipped() {
        return Err(Failure::Infeasible("cycle census skipped: budget".into()));
    }
    Ok(())
}

fn prepare(a: &AnalyzeArgs) -> Result<(SignedGraph, Vec<MeasureId>, EvalConfig), Failure> {
    init_pool(a.common.jobs)?;
    let measures = parse_measures(&a.common.measures)?;
    let mut g = load(&a.input)?;
    if a.giant {
        g = ingestion::giant_component(&g);
    }
    Ok((g, measures, eval_config(&a.common)))
}

fn analyze(a: &AnalyzeArgs) -> Result<(), Failure> {
    let (g, measures, config) = prepare(a)?;
    emit(&BalanceReport::analyze(&g, &measures, config), a)
}

fn reshuffle(r: &ReshuffleArgs) -> Result<(), Failure> {
    if r.reshuffles < 2 {
        return Err(Failure::Input(format!("R ≥ 2 required, got {}", r.reshuffles)));
    }
    let (g, measures, config) = prepare(&r.analyze)?;
    let mut report = BalanceReport::analyze(&g, &measures, config);
    report
        .reshuffle(&g, r.reshuffles, r.analyze.common.seed, config)
        .map_err(|e| Failure::Infeasible(e.to_string()))?;
    emit(&report, &r.analyze)
}

fn run_experiment(e: &ExperimentArgs) -> Result<(), Failure> {
    init_pool(e.common.jobs)?;
    let explicit = e.common.measures != "all";
    let measures = parse_measures(&e.common.measures)?;
    let pick = |default: Vec<MeasureId>| if explicit { measures.clone() } else { default };
    let experiment = match e.kind {
        Kind::ErSweep => {
            let d = ErSweep::default();
            Experiment::ErSweep(ErSweep {
                n: e.n,
                p: e.p,
                runs: e.runs.unwrap_or(d.runs),
                negatives: e.negatives.clone(),
                measures: pick(d.measures),
            })
        }
        Kind::RegularSweep => {
            let d = RegularSweep::default();
            Experiment::RegularSweep(RegularSweep {
                orders: e.orders.clone().unwrap_or(d.orders),
                k: e.k,
                negative_fraction: e.negative_fraction,
                runs: e.runs.unwrap_or(d.runs),
                measures: pick(d.measures),
            })
        }
        Kind::Kna | Kind::Knc => {
            let family = if matches!(e.kind, Kind::Kna) { Family::Kna } else { Family::Knc };
            let d = FamilySweep::new(family);
            Experiment::Family(FamilySweep {
                family,
                orders: e.orders.clone().unwrap_or(d.orders),
                measures: pick(d.measures),
            })
        }
    };
    let rows = experiment
        .run(e.common.seed, eval_config(&e.common))
        .map_err(|err| Failure::Input(err.to_string()))?;
    let result = match &e.output {
        Some(path) => experiment::write_csv(&rows, File::create(path)?),
        None => experiment::write_csv(&rows, io::stdout().lock()),
    };
    result.map_err(|err| Failure::Input(err.to_string()))?;
    if rows.iter().any(|r| r.status == "skipped: budget") {
        eprintln!("warning: some rows were skipped (census budget)");
    }
    Ok(())
}

fn axioms_cmd(a: &AxiomsArgs) -> Result<(), Failure> {
    init_pool(a.jobs)?;
    let paper_layout = a.measures.is_none();
    let mut columns: Vec<Column> = match &a.measures {
        None => axioms::paper_columns(),
        Some(text) => parse_measures(text)?.into_iter().map(Column::single).collect(),
    };
    if a.squared {
        columns = columns
            .into_iter()
            .map(|c| Column {
                label: format!("{}^2", c.label),
                members: c
                    .members
                    .into_iter()
                    .map(|m| std::sync::Arc::new(Squared(m)) as std::sync::Arc<dyn axioms::Measure>)
                    .collect(),
            })
            .collect();
    }
    if a.self_test {
        columns.push(Column::single(Constant(2.0)));
    }
    let corpus = Corpus::build(&CorpusConfig {
        random_count: a.random,
        exhaustive_max_n: a.exhaustive_max_n,
        seed: a.seed,
        ..CorpusConfig::default()
    });
    let tol = Tolerance {
        strict: a.eps,
        equal: a.equal_eps,
    };
    let config = EvalConfig::default();
    let matrix = axioms::verdict_matrix(&columns, &corpus, config, tol);
    // every refutation must survive an independent recomputation
    for (row, column) in matrix.cells.iter().flat_map(|r| r.iter().zip(&columns)) {
        if let Some(w) = &row.witness {
            let member = column.members.iter().find(|m| m.name() == w.measure);
            if !member.is_some_and(|m| w.recheck(m.as_ref(), config, tol)) {
                return Err(Failure::Internal(format!("witness failed recheck: {}", w.describe())));
            }
        }
    }
    let text = match a.format {
        MatrixFormat::Csv => matrix.to_csv(),
        MatrixFormat::Table => matrix.to_table(),
    };
    io::stdout().write_all(text.as_bytes())?;
    if paper_layout && !a.self_test {
        for (p, c, satisfied) in matrix.mismatches_with_paper() {
            let expected = if satisfied { "satisfied" } else { "failed" };
            eprintln!("note: {p}/{c} differs from the published verdict ({expected})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Reshuffle(r) => reshuffle(r),
        Command::Experiment(e) => run_experiment(e),
        Command::Axioms(a) => axioms_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}
