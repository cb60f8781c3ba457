//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error,
//! 3 data or format error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{corpus_stats, parse_corpus, stats_tsv, validate_corpus, Corpus};
use crate::datagen::{generate_corpus, GenConfig};
use crate::error::Error;
use crate::eval::{
    collapse_binary, cross_validate, predictions_tsv, sentence_distribution, stratified_folds,
    DEFAULT_FOLDS, DEFAULT_SEED,
};
use crate::features::{
    extract_document_features, extract_sentence_features, select_by_names, select_feature_group,
    ExtractionContext, FeatureGroup, FeatureVector, LevelMode,
};
use crate::level::CefrLabel;
use crate::lexicon::{load_category_map, load_kelly, load_senses, CategoryMap, KellyList, SenseLexicon};
use crate::model::{load_model, save_model, train_mlr, LearnerSpec, TrainOptions, DEFAULT_RIDGE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

/// Names the category map file used when `--catmap` is absent.
pub const CATMAP_ENV: &str = "CEFRLAB_CATMAP";

#[derive(Debug, Parser)]
#[command(
    name = "cefrlab",
    version,
    about = "CEFR level prediction from linguistic complexity features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check corpus structure; exit 1 if any issue is found.
    Validate(CorpusArgs),
    /// Per-level counts of texts and sentences.
    Stats(StatsArgs),
    /// Write the feature matrix as TSV.
    Extract(ExtractArgs),
    /// Fit a model and save it as JSON.
    Train(TrainArgs),
    /// Stratified k-fold cross-validation.
    Cv(CvArgs),
    /// Predict levels with a saved model.
    Predict(PredictArgs),
    /// Sentence-level predictions per document level.
    Distribution(DistributionArgs),
    /// Generate a synthetic corpus bundle.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Corpus file.
    #[arg(long = "corpus", value_name = "PATH")]
    corpus_flag: Option<PathBuf>,
    /// Corpus file, as an alternative to --corpus.
    #[arg(value_name = "CORPUS", conflicts_with = "corpus_flag")]
    corpus_pos: Option<PathBuf>,
}

impl CorpusArgs {
    fn path(&self) -> Result<&Path, CliError> {
        self.corpus_flag
            .as_deref()
            .or(self.corpus_pos.as_deref())
            .ok_or_else(|| CliError::Usage("a corpus is required (--corpus PATH)".into()))
    }
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Unit {
    Text,
    Sentence,
}

#[derive(Debug, Args)]
struct FeatureArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_name = "PATH")]
    kelly: PathBuf,
    #[arg(long, value_name = "PATH")]
    senses: PathBuf,
    /// Category map; defaults to $CEFRLAB_CATMAP, then the built-in SUC map.
    #[arg(long, value_name = "PATH")]
    catmap: Option<PathBuf>,
    #[arg(long = "level-mode", default_value = "use-reference")]
    level_mode: LevelMode,
    /// Reference level for the level-dependent features.
    #[arg(long = "reference-level", value_parser = parse_class_level)]
    reference_level: Option<CefrLabel>,
    #[arg(long, value_enum, default_value = "text")]
    unit: Unit,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[command(flatten)]
    features: FeatureArgs,
    #[arg(long, default_value = "All")]
    group: FeatureGroup,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    features: FeatureArgs,
    #[arg(long, default_value = "All")]
    group: FeatureGroup,
    #[arg(long, default_value_t = DEFAULT_RIDGE)]
    ridge: f64,
    /// Where to write the model.
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Learner {
    Logistic,
    Majority,
}

#[derive(Debug, Args)]
struct CvArgs {
    #[command(flatten)]
    features: FeatureArgs,
    #[arg(long, default_value = "All")]
    group: FeatureGroup,
    #[arg(long, default_value_t = DEFAULT_RIDGE)]
    ridge: f64,
    #[arg(long, default_value_t = DEFAULT_FOLDS)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "logistic")]
    learner: Learner,
    /// Directory for metrics.tsv, confusion.csv and predictions.tsv;
    /// metrics go to standard output when absent.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    features: FeatureArgs,
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistributionArgs {
    #[command(flatten)]
    features: FeatureArgs,
    /// A sentence-level model.
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON generator configuration; flags override its fields.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long = "docs-per-level")]
    docs_per_level: Option<usize>,
    #[arg(long = "sentences-per-level")]
    sentences_per_level: Option<usize>,
    #[arg(long = "lexicon-size")]
    lexicon_size: Option<usize>,
}

fn parse_class_level(s: &str) -> Result<CefrLabel, String> {
    CefrLabel::parse_class(s).ok_or_else(|| format!("expected one of A1, A2, B1, B2, C1, got {s:?}"))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Run with `argv` (program name first) and return the exit code.
pub fn run_cli(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let invocation = provenance(argv);
    match dispatch(cli.command, &invocation) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}

fn provenance(argv: &[String]) -> String {
    let mut s = String::from("cefrlab");
    for a in argv.iter().skip(1) {
        s.push(' ');
        s.push_str(a);
    }
    s
}

fn dispatch(command: Command, invocation: &str) -> CliResult<i32> {
    match command {
        Command::Validate(a) => cmd_validate(&a, invocation),
        Command::Stats(a) => cmd_stats(&a, invocation),
        Command::Extract(a) => cmd_extract(&a, invocation),
        Command::Train(a) => cmd_train(&a, invocation),
        Command::Cv(a) => cmd_cv(&a, invocation),
        Command::Predict(a) => cmd_predict(&a, invocation),
        Command::Distribution(a) => cmd_distribution(&a, invocation),
        Command::Gen(a) => cmd_gen(&a, invocation),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| {
        CliError::Data(Error::invalid(format!("cannot read {}: {e}", path.display())))
    })
}

fn load_corpus(args: &CorpusArgs) -> CliResult<Corpus> {
    let path = args.path()?;
    parse_corpus(&read(path)?).map_err(|e| {
        CliError::Data(Error::invalid(format!("{}: {e}", path.display())))
    })
}

/// Body prefixed with a `# <invocation>` provenance line.
fn with_header(invocation: &str, body: &str) -> String {
    format!("# {invocation}\n{body}")
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

struct Resources {
    kelly: KellyList,
    senses: SenseLexicon,
    map: CategoryMap,
}

impl Resources {
    fn load(args: &FeatureArgs) -> CliResult<Self> {
        let kelly = load_kelly(&read(&args.kelly)?)?;
        for w in kelly.warnings() {
            log::warn!("{}: {w}", args.kelly.display());
        }
        let senses = load_senses(&read(&args.senses)?)?;
        let catmap_path = args
            .catmap
            .clone()
            .or_else(|| std::env::var_os(CATMAP_ENV).map(PathBuf::from));
        let map = match catmap_path {
            Some(p) => load_category_map(&read(&p)?)?,
            None => CategoryMap::suc(),
        };
        Ok(Resources { kelly, senses, map })
    }

    fn context(&self, args: &FeatureArgs, fallback: CefrLabel) -> ExtractionContext<'_> {
        ExtractionContext::new(&self.kelly, &self.senses, &self.map)
            .with_reference(args.reference_level.unwrap_or(fallback))
            .with_mode(args.level_mode)
    }
}

/// One labeled unit with its full feature vector.
struct Row {
    id: String,
    level: CefrLabel,
    features: FeatureVector,
}

/// Features per unit. With `gold_reference`, each unit's own label is the
/// reference level unless one was given on the command line.
fn extract_rows(args: &FeatureArgs, corpus: &Corpus, res: &Resources, gold_reference: bool) -> CliResult<Vec<Row>> {
    let reference = |gold: CefrLabel| {
        if gold_reference {
            gold
        } else {
            CefrLabel::B1
        }
    };
    let mut rows = Vec::new();
    match args.unit {
        Unit::Text => {
            for doc in &corpus.documents {
                let ctx = res.context(args, reference(doc.level));
                rows.push(Row {
                    id: doc.id.clone(),
                    level: doc.level,
                    features: extract_document_features(doc, &ctx)?,
                });
            }
        }
        Unit::Sentence => {
            for ls in &corpus.standalone_sentences {
                let ctx = res.context(args, reference(ls.level));
                rows.push(Row {
                    id: ls.sentence.id.clone(),
                    level: ls.level,
                    features: extract_sentence_features(&ls.sentence, &ctx)?,
                });
            }
        }
    }
    if rows.is_empty() {
        let what = match args.unit {
            Unit::Text => "documents",
            Unit::Sentence => "standalone sentences (use --unit text for documents)",
        };
        log::warn!("corpus has no {what}");
    }
    Ok(rows)
}

fn fmt_f64(out: &mut String, v: f64) {
    let _ = write!(out, "{v}");
}

fn cmd_validate(args: &CorpusArgs, invocation: &str) -> CliResult<i32> {
    let corpus = load_corpus(args)?;
    let issues = validate_corpus(&corpus);
    let mut out = with_header(invocation, "");
    for i in &issues {
        let severity = if i.kind.is_warning() { "warning" } else { "error" };
        let _ = writeln!(out, "{severity}\t{i}");
    }
    let errors = issues.iter().filter(|i| !i.kind.is_warning()).count();
    let sentences: usize = corpus.documents.iter().map(|d| d.sentences.len()).sum::<usize>()
        + corpus.standalone_sentences.len();
    let _ = writeln!(
        out,
        "# {} documents, {sentences} sentences, {errors} errors, {} warnings",
        corpus.documents.len(),
        issues.len() - errors
    );
    emit(None, &out)?;
    Ok(if errors == 0 { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_stats(args: &StatsArgs, invocation: &str) -> CliResult<i32> {
    let corpus = load_corpus(&args.corpus)?;
    let text = with_header(invocation, &stats_tsv(&corpus_stats(&corpus)));
    emit(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_extract(args: &ExtractArgs, invocation: &str) -> CliResult<i32> {
    let corpus = load_corpus(&args.features.corpus)?;
    let res = Resources::load(&args.features)?;
    let rows = extract_rows(&args.features, &corpus, &res, true)?;
    let mut out = with_header(invocation, "unit_id\tlevel");
    for name in args.group.names() {
        let _ = write!(out, "\t{name}");
    }
    out.push('\n');
    for r in &rows {
        let _ = write!(out, "{}\t{}", r.id, r.level);
        for v in select_feature_group(&r.features, args.group) {
            out.push('\t');
            fmt_f64(&mut out, v);
        }
        out.push('\n');
    }
    emit(args.out.as_deref(), &out)?;
    Ok(EXIT_OK)
}

fn design(rows: &[Row], group: FeatureGroup) -> (Vec<Vec<f64>>, Vec<CefrLabel>) {
    let x = rows
        .iter()
        .map(|r| select_feature_group(&r.features, group))
        .collect();
    let y = rows.iter().map(|r| r.level).collect();
    (x, y)
}

fn cmd_train(args: &TrainArgs, invocation: &str) -> CliResult<i32> {
    let corpus = load_corpus(&args.features.corpus)?;
    let res = Resources::load(&args.features)?;
    let rows = extract_rows(&args.features, &corpus, &res, true)?;
    let (x, y) = design(&rows, args.group);
    let mut model = train_mlr(&x, &y, &args.group.names(), args.ridge, &TrainOptions::default())?;
    model.training.invocation = Some(invocation.to_string());
    if let Some(dir) = args.model.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    save_model(&model, fs::File::create(&args.model)?)?;
    eprintln!(
        "trained on {} units, {} features, {} iterations, converged: {}",
        x.len(),
        model.dim(),
        model.training.iterations,
        model.training.converged
    );
    Ok(EXIT_OK)
}

fn cmd_cv(args: &CvArgs, invocation: &str) -> CliResult<i32> {
    let corpus = load_corpus(&args.features.corpus)?;
    let res = Resources::load(&args.features)?;
    let rows = extract_rows(&args.features, &corpus, &res, true)?;
    let (x, y) = design(&rows, args.group);
    let plan = stratified_folds(&y, args.k, args.seed)?;
    let spec = match args.learner {
        Learner::Logistic => LearnerSpec::Logistic { ridge: args.ridge },
        Learner::Majority => LearnerSpec::Majority,
    };
    let outcome = cross_validate(&x, &y, &spec, &plan)?;
    if outcome.unconverged_folds > 0 {
        log::warn!(
            "{} of {} folds stopped at the iteration cap",
            outcome.unconverged_folds,
            plan.k
        );
    }
    let binary = collapse_binary(&outcome.confusion);
    let mut metrics = outcome.report.to_tsv();
    let _ = writeln!(metrics, "features\t{}", args.group.len());
    let _ = writeln!(metrics, "binary_accuracy\t{:.6}", binary.accuracy);
    let _ = writeln!(metrics, "binary_precision_le_B1\t{:.6}", binary.precision_low);
    let _ = writeln!(metrics, "binary_precision_gt_B1\t{:.6}", binary.precision_high);
    let metrics = with_header(invocation, &metrics);
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("metrics.tsv"), &metrics)?;
            fs::write(
                dir.join("confusion.csv"),
                with_header(invocation, &outcome.confusion.to_csv()),
            )?;
            let ids: Vec<String> = rows.iter().map(|r| r.id.clone()).collect();
            fs::write(
                dir.join("predictions.tsv"),
                with_header(invocation, &predictions_tsv(&outcome, &ids)),
            )?;
        }
        None => emit(None, &metrics)?,
    }
    Ok(EXIT_OK)
}

fn cmd_predict(args: &PredictArgs, invocation: &str) -> CliResult<i32> {
    let model = load_model(fs::File::open(&args.model).map_err(|e| {
        CliError::Data(Error::invalid(format!("cannot open {}: {e}", args.model.display())))
    })?)?;
    let corpus = load_corpus(&args.features.corpus)?;
    let res = Resources::load(&args.features)?;
    let rows = extract_rows(&args.features, &corpus, &res, false)?;
    let mut out = with_header(invocation, "unit_id\tgold\tpredicted");
    for l in &model.labels {
        let _ = write!(out, "\tp_{l}");
    }
    out.push('\n');
    for r in &rows {
        let x = select_by_names(&r.features, &model.feature_names)?;
        let p = model.predict_proba(&x)?;
        let predicted = model.predict_label(&x)?;
        let _ = write!(out, "{}\t{}\t{predicted}", r.id, r.level);
        for v in p {
            out.push('\t');
            fmt_f64(&mut out, v);
        }
        out.push('\n');
    }
    emit(args.out.as_deref(), &out)?;
    Ok(EXIT_OK)
}

fn cmd_distribution(args: &DistributionArgs, invocation: &str) -> CliResult<i32> {
    let model = load_model(fs::File::open(&args.model).map_err(|e| {
        CliError::Data(Error::invalid(format!("cannot open {}: {e}", args.model.display())))
    })?)?;
    let corpus = load_corpus(&args.features.corpus)?;
    let res = Resources::load(&args.features)?;
    let ctx = res.context(&args.features, CefrLabel::B1);
    let table = sentence_distribution(&model, &corpus.documents, &ctx)?;
    emit(args.out.as_deref(), &with_header(invocation, &table.to_csv()))?;
    Ok(EXIT_OK)
}

fn cmd_gen(args: &GenArgs, invocation: &str) -> CliResult<i32> {
    let mut cfg = match &args.config {
        Some(p) => serde_json::from_str::<GenConfig>(&read(p)?).map_err(Error::from)?,
        None => GenConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.docs_per_level {
        cfg.docs_per_level = n;
    }
    if let Some(n) = args.sentences_per_level {
        cfg.sentences_per_level = n;
    }
    if let Some(n) = args.lexicon_size {
        cfg.lexicon_size = n;
    }
    let mut bundle = generate_corpus(&cfg)?;
    for text in [
        &mut bundle.corpus_text,
        &mut bundle.kelly_tsv,
        &mut bundle.senses_tsv,
        &mut bundle.catmap,
    ] {
        *text = with_header(invocation, text);
    }
    let mut manifest: serde_json::Value = serde_json::from_str(&bundle.manifest).map_err(Error::from)?;
    manifest["invocation"] = serde_json::Value::String(invocation.to_string());
    bundle.manifest = serde_json::to_string_pretty(&manifest).map_err(Error::from)? + "\n";
    let paths = bundle.write_to(&args.out)?;
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
    Ok(EXIT_OK)
}
