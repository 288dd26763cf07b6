//! Command-line driver: dataset preparation, training, evaluation,
//! sweeps, inductive embedding and interpretation.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use idne::checkpoint;
use idne::corpus::{parse_generic_doc, vectorize_body, DocBody};
use idne::evaluator::{eval_inductive, eval_traditional, EvalReport, SplitSpec};
use idne::interpret::{annotate_document, topic_top_words};
use idne::{
    build_delta, build_graph, build_vocab, embed_corpus, embed_doc, load_cora, load_generic, train, DocTermMatrix,
    DocumentGraph, IdneError, ModelParams32, RawCorpus, Tokenizer, TrainConfig, TrainReport32, VocabConfig,
    Vocabulary,
};

/// Exit code for malformed invocations and failed validation.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for failures while running a valid command.
pub const EXIT_RUNTIME: i32 = 1;

/// Invalid input detected before any work starts.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<IdneError>() {
        Some(IdneError::Config(_)) | Some(IdneError::BatchSize(_)) | Some(IdneError::InvalidDimension(..)) => {
            EXIT_USAGE
        }
        _ => EXIT_RUNTIME,
    }
}

#[derive(Debug, Parser)]
#[command(name = "idne", version, about = "Inductive document network embedding with topic-word attention")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Read additional `key = value` options from a file; flags on the
    /// command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a model on a document network and write a checkpoint.
    Train(TrainArgs),
    /// Score embeddings on classification or link prediction.
    Eval(EvalArgs),
    /// Evaluate over a grid of topic counts and step counts.
    Sweep(SweepArgs),
    /// Embed documents from their text with a trained model.
    Embed(EmbedArgs),
    /// Inspect a trained model.
    #[command(subcommand)]
    Interpret(InterpretCommand),
}

#[derive(Debug, Subcommand)]
pub enum InterpretCommand {
    /// Closest words to every topic and the extreme word norms.
    Topics(TopicsArgs),
    /// Highlight the words attended by a document's two main topics.
    Annotate(AnnotateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Cora,
    Generic,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    #[arg(long, value_enum, default_value = "cora")]
    pub format: Format,
    /// Cora content file.
    #[arg(long)]
    pub content: Option<PathBuf>,
    /// Cora citation file.
    #[arg(long)]
    pub cites: Option<PathBuf>,
    /// Generic documents file (`id<TAB>labels<TAB>text`).
    #[arg(long)]
    pub docs: Option<PathBuf>,
    /// Generic edges file (`src<TAB>dst`).
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Stop-word file replacing the built-in English list.
    #[arg(long)]
    pub stop_words: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub min_df: usize,
    #[arg(long, default_value_t = 0.25)]
    pub max_df: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 32)]
    pub topics: usize,
    #[arg(long, default_value_t = 256)]
    pub dim: usize,
    #[arg(long, default_value_t = 5000)]
    pub steps: usize,
    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub lr: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ModelArgs {
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            n_topics: self.topics,
            dim: self.dim,
            steps: self.steps,
            batch_size: self.batch_size,
            learning_rate: self.lr,
            seed: self.seed,
            ..TrainConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, env = "IDNE_OUTPUT_DIR", default_value = "idne-out")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTask {
    Traditional,
    Inductive,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub task: EvalTask,
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Checkpoint to evaluate (traditional task); trains on the full
    /// network when absent.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Vocabulary file of the checkpoint (defaults to `vocab.txt` beside it).
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Labelled training fractions for the traditional task.
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.04,0.06,0.08,0.10")]
    pub ratios: Vec<f64>,
    /// Fraction of documents hidden in the inductive task.
    #[arg(long, default_value_t = 0.10)]
    pub hidden: f64,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32")]
    pub topics_grid: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "5000")]
    pub steps_grid: Vec<usize>,
    #[arg(long, default_value_t = 0.10)]
    pub ratio: f64,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ModelFiles {
    #[arg(long)]
    pub checkpoint: PathBuf,
    /// Defaults to `vocab.txt` beside the checkpoint.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    #[arg(long)]
    pub stop_words: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub model: ModelFiles,
    /// Documents as `id<TAB>labels<TAB>text` or `id<TAB>text`.
    #[arg(long)]
    pub docs: PathBuf,
    /// Defaults to `embeddings.tsv` in the output directory.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TopicsArgs {
    #[command(flatten)]
    pub model: ModelFiles,
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["text", "file"]))]
pub struct AnnotateArgs {
    #[command(flatten)]
    pub model: ModelFiles,
    #[arg(long)]
    pub text: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Output path without extension; `.txt` and `.html` are appended.
    /// Defaults to `annotation` in the output directory.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Splices the options of every `--config FILE` into `args` right after the
/// subcommand path, so later command-line flags override them.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut files = Vec::new();
    let mut iter = args.into_iter();
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let f = iter.next().ok_or_else(|| usage("--config needs a file"))?;
            files.push(PathBuf::from(f));
        } else if let Some(f) = s.strip_prefix("--config=") {
            files.push(PathBuf::from(f));
        } else {
            rest.push(a);
        }
    }
    if files.is_empty() {
        return Ok(rest);
    }
    let mut injected = Vec::new();
    for f in &files {
        injected.extend(read_config(f)?);
    }
    let depth = match rest.get(1).map(|s| s.to_string_lossy().into_owned()) {
        Some(cmd) if cmd == "interpret" => 3,
        Some(_) => 2,
        None => 1,
    };
    let at = depth.min(rest.len());
    let tail = rest.split_off(at);
    rest.extend(injected);
    rest.extend(tail);
    Ok(rest)
}

/// `key = value` lines (`#` comments, blank lines ignored) as flag pairs.
/// A value of `true` yields a bare flag.
pub fn read_config(path: &Path) -> Result<Vec<OsString>> {
    let text = fs::read_to_string(path).map_err(|_| usage(format!("file not found: {}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
        let key = k.trim().replace('_', "-");
        let value = v.trim();
        out.push(OsString::from(format!("--{key}")));
        if value != "true" {
            out.push(OsString::from(value));
        }
    }
    Ok(out)
}

fn require_file(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(usage(format!("file not found: {}", path.display())))
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str, format: &str) -> Result<&'a Path> {
    let path = p
        .as_deref()
        .ok_or_else(|| usage(format!("--{flag} is required for the {format} format")))?;
    require_file(path)?;
    Ok(path)
}

/// A loaded corpus with everything derived from it.
pub struct Dataset {
    pub corpus: RawCorpus,
    pub tokenizer: Tokenizer,
    pub vocab: Vocabulary,
    pub x: DocTermMatrix,
    pub graph: DocumentGraph,
}

fn tokenizer(stop_words: &Option<PathBuf>) -> Result<Tokenizer> {
    match stop_words {
        Some(p) => {
            require_file(p)?;
            Ok(Tokenizer::from_stop_word_file(p)?)
        }
        None => Ok(Tokenizer::default()),
    }
}

impl DataArgs {
    /// Checks that every input file exists before anything is loaded.
    pub fn validate(&self) -> Result<()> {
        match self.format {
            Format::Cora => {
                required(&self.content, "content", "cora")?;
                required(&self.cites, "cites", "cora")?;
            }
            Format::Generic => {
                required(&self.docs, "docs", "generic")?;
                required(&self.edges, "edges", "generic")?;
            }
        }
        if let Some(p) = &self.stop_words {
            require_file(p)?;
        }
        if !(self.max_df > 0.0 && self.max_df <= 1.0) {
            return Err(usage(format!("--max-df must lie in (0, 1], got {}", self.max_df)));
        }
        Ok(())
    }

    pub fn load(&self) -> Result<Dataset> {
        self.validate()?;
        let corpus = match self.format {
            Format::Cora => load_cora(
                required(&self.content, "content", "cora")?,
                required(&self.cites, "cites", "cora")?,
            )?,
            Format::Generic => load_generic(
                required(&self.docs, "docs", "generic")?,
                required(&self.edges, "edges", "generic")?,
            )?,
        };
        let tokenizer = tokenizer(&self.stop_words)?;
        let vocab = build_vocab(
            &corpus,
            &tokenizer,
            &VocabConfig {
                min_df: self.min_df,
                max_df_ratio: self.max_df,
            },
        )?;
        let x = idne::vectorize(&corpus, &tokenizer, &vocab);
        let graph = build_graph(&corpus);
        Ok(Dataset {
            corpus,
            tokenizer,
            vocab,
            x,
            graph,
        })
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        create_dir(parent)?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn validate_train(config: &TrainConfig) -> Result<()> {
    config.validate()?;
    Ok(())
}

fn train_model(data: &Dataset, config: &TrainConfig) -> Result<TrainReport32> {
    let reach = build_delta(&data.graph);
    Ok(train::<f32>(&data.x, &reach, config)?)
}

/// Paths written by `train`.
#[derive(Debug, Clone)]
pub struct TrainOutputs {
    pub checkpoint: PathBuf,
    pub vocab: PathBuf,
    pub loss: PathBuf,
}

pub fn cmd_train(args: &TrainArgs) -> Result<TrainOutputs> {
    args.data.validate()?;
    let config = args.model.train_config();
    validate_train(&config)?;
    let data = args.data.load()?;
    let report = train_model(&data, &config)?;

    let dir = &args.out.output_dir;
    create_dir(dir)?;
    let outputs = TrainOutputs {
        checkpoint: dir.join("model.idne"),
        vocab: dir.join("vocab.txt"),
        loss: dir.join("loss.csv"),
    };
    checkpoint::save(&outputs.checkpoint, &report.params, data.vocab.hash())?;
    data.vocab.write(&outputs.vocab)?;
    let mut csv = String::from("step,loss\n");
    for (i, l) in report.loss_curve.iter().enumerate() {
        csv.push_str(&format!("{},{}\n", i + 1, l));
    }
    write_file(&outputs.loss, csv)?;
    println!(
        "docs {}, links {}, delta density {:.4}%, final loss {:.4}, wallclock {:.1}s",
        data.corpus.len(),
        data.graph.n_links(),
        100.0 * report.delta_density,
        report.final_loss(),
        report.wallclock_secs
    );
    Ok(outputs)
}

fn vocab_path(checkpoint: &Path, vocab: &Option<PathBuf>) -> PathBuf {
    vocab
        .clone()
        .unwrap_or_else(|| checkpoint.with_file_name("vocab.txt"))
}

/// Loads a checkpoint and its vocabulary, checking that they belong together.
pub fn load_model(checkpoint_path: &Path, vocab: &Option<PathBuf>) -> Result<(ModelParams32, Vocabulary)> {
    require_file(checkpoint_path)?;
    let vpath = vocab_path(checkpoint_path, vocab);
    require_file(&vpath)?;
    let (params, header) = checkpoint::load::<f32>(checkpoint_path)?;
    let vocab = Vocabulary::read(&vpath)?;
    if vocab.hash() != header.vocab_hash {
        return Err(IdneError::Checkpoint(format!(
            "{} does not match the vocabulary the checkpoint was trained with",
            vpath.display()
        ))
        .into());
    }
    Ok((params, vocab))
}

#[derive(Debug, Serialize)]
struct Summary {
    task: String,
    ratio: f64,
    repetitions: usize,
    mean: f64,
    std: f64,
    warnings: Vec<String>,
}

fn summary(r: &EvalReport) -> Summary {
    Summary {
        task: r.task.name().to_owned(),
        ratio: r.ratio,
        repetitions: r.aucs.len(),
        mean: r.mean(),
        std: r.std(),
        warnings: r.warnings.clone(),
    }
}

/// Writes `<stem>.csv` (`task,ratio,repetition,auc`) and `<stem>.json`.
fn write_reports(dir: &Path, stem: &str, reports: &[EvalReport]) -> Result<()> {
    let mut csv = String::from("task,ratio,repetition,auc\n");
    for r in reports {
        for (i, a) in r.aucs.iter().enumerate() {
            csv.push_str(&format!("{},{},{},{}\n", r.task, r.ratio, i, a));
        }
    }
    write_file(&dir.join(format!("{stem}.csv")), csv)?;
    let json = serde_json::to_string_pretty(&reports.iter().map(summary).collect::<Vec<_>>())?;
    write_file(&dir.join(format!("{stem}.json")), json + "\n")
}

fn print_report(r: &EvalReport) {
    println!(
        "{} ratio {:.2}: AUC {:.2} ± {:.2} over {} repetitions",
        r.task,
        r.ratio,
        100.0 * r.mean(),
        100.0 * r.std(),
        r.aucs.len()
    );
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Vec<EvalReport>> {
    args.data.validate()?;
    let config = args.model.train_config();
    validate_train(&config)?;
    if args.reps == 0 {
        return Err(usage("--reps must be at least 1"));
    }
    let reports = match args.task {
        EvalTask::Traditional => {
            if args.ratios.is_empty() {
                return Err(usage("--ratios is empty"));
            }
            let specs = args
                .ratios
                .iter()
                .map(|&r| SplitSpec::new(r, args.reps, args.model.seed))
                .collect::<idne::Result<Vec<_>>>()?;
            let data = args.data.load()?;
            let params = match &args.checkpoint {
                Some(path) => {
                    let (params, vocab) = load_model(path, &args.vocab)?;
                    if vocab.terms() != data.vocab.terms() {
                        return Err(IdneError::Checkpoint(
                            "checkpoint vocabulary differs from the dataset's".into(),
                        )
                        .into());
                    }
                    params
                }
                None => train_model(&data, &config)?.params,
            };
            let emb = embed_corpus(&params, &data.x).mapv(f64::from);
            let labels = data.corpus.label_matrix();
            specs
                .iter()
                .map(|s| eval_traditional(emb.view(), &labels, s))
                .collect::<idne::Result<Vec<_>>>()?
        }
        EvalTask::Inductive => {
            let spec = SplitSpec::new(args.hidden, args.reps, args.model.seed)?;
            let data = args.data.load()?;
            let labels = data.corpus.label_matrix();
            let r = eval_inductive::<f32>(&data.x, &data.graph, &labels, &config, &spec)?;
            vec![r.classification, r.link]
        }
    };
    let stem = match args.task {
        EvalTask::Traditional => "eval_traditional",
        EvalTask::Inductive => "eval_inductive",
    };
    write_reports(&args.out.output_dir, stem, &reports)?;
    for r in &reports {
        print_report(r);
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n_topics: usize,
    pub steps: usize,
    pub ratio: f64,
    pub mean_auc: f64,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<SweepPoint>> {
    args.data.validate()?;
    if args.topics_grid.is_empty() || args.steps_grid.is_empty() {
        return Err(usage("sweep grid is empty"));
    }
    let spec = SplitSpec::new(args.ratio, args.reps, args.model.seed)?;
    let base = args.model.train_config();
    for &n_t in &args.topics_grid {
        for &steps in &args.steps_grid {
            validate_train(&TrainConfig {
                n_topics: n_t,
                steps,
                ..base.clone()
            })?;
        }
    }
    let data = args.data.load()?;
    let labels = data.corpus.label_matrix();
    let mut points = Vec::new();
    let mut csv = String::from("n_t,steps,ratio,mean_auc\n");
    for &n_t in &args.topics_grid {
        for &steps in &args.steps_grid {
            let config = TrainConfig {
                n_topics: n_t,
                steps,
                ..base.clone()
            };
            let report = train_model(&data, &config)?;
            let emb = embed_corpus(&report.params, &data.x).mapv(f64::from);
            let r = eval_traditional(emb.view(), &labels, &spec)?;
            println!("n_t {n_t}, steps {steps}: AUC {:.2}", 100.0 * r.mean());
            csv.push_str(&format!("{},{},{},{}\n", n_t, steps, args.ratio, r.mean()));
            points.push(SweepPoint {
                n_topics: n_t,
                steps,
                ratio: args.ratio,
                mean_auc: r.mean(),
            });
        }
    }
    write_file(&args.out.output_dir.join("sweep.csv"), csv)?;
    Ok(points)
}

/// Parses `id<TAB>labels<TAB>text` or `id<TAB>text` lines.
fn read_embed_docs(path: &Path) -> Result<Vec<(String, String)>> {
    require_file(path)?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut docs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields = line.split('\t').count();
        let doc = if fields >= 3 {
            parse_generic_doc(line).map(|d| match d.body {
                DocBody::Text(t) => (d.id, t),
                DocBody::Terms(_) => unreachable!("generic documents are text"),
            })
        } else {
            line.split_once('\t')
                .map(|(id, t)| (id.to_owned(), t.to_owned()))
        };
        docs.push(doc.ok_or_else(|| {
            IdneError::Parse {
                path: path.to_owned(),
                line: n + 1,
                message: "expected id<TAB>text".into(),
            }
        })?);
    }
    Ok(docs)
}

pub fn cmd_embed(args: &EmbedArgs) -> Result<PathBuf> {
    require_file(&args.docs)?;
    let tok = tokenizer(&args.model.stop_words)?;
    let (params, vocab) = load_model(&args.model.checkpoint, &args.model.vocab)?;
    let docs = read_embed_docs(&args.docs)?;
    let out_path = args
        .output
        .clone()
        .unwrap_or_else(|| args.out.output_dir.join("embeddings.tsv"));
    let mut out = String::new();
    let mut empty = 0;
    for (id, text) in &docs {
        let (row, _) = vectorize_body(&tok, &vocab, &DocBody::Text(text.clone()));
        let vector: Vec<f32> = if row.terms.is_empty() {
            empty += 1;
            vec![0.0; params.dim()]
        } else {
            embed_doc(&params, row.as_row())?.vector.to_vec()
        };
        let values: Vec<String> = vector.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{id}\t{}\n", values.join(" ")));
    }
    if empty > 0 {
        log::warn!("{empty} documents have no vocabulary terms and were embedded as zero vectors");
    }
    write_file(&out_path, out)?;
    Ok(out_path)
}

pub fn cmd_topics(args: &TopicsArgs) -> Result<String> {
    let (params, vocab) = load_model(&args.model.checkpoint, &args.model.vocab)?;
    if args.top == 0 || args.top > vocab.len() {
        return Err(usage(format!("--top must lie in 1..={}", vocab.len())));
    }
    let table = topic_top_words(&params, &vocab, args.top)?.render_table();
    match &args.output {
        Some(p) => write_file(p, &table)?,
        None => std::io::stdout().write_all(table.as_bytes())?,
    }
    Ok(table)
}

pub fn cmd_annotate(args: &AnnotateArgs) -> Result<(PathBuf, PathBuf)> {
    let text = match (&args.text, &args.file) {
        (Some(t), _) => t.clone(),
        (None, Some(f)) => {
            require_file(f)?;
            fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?
        }
        (None, None) => return Err(usage("one of --text or --file is required")),
    };
    let tok = tokenizer(&args.model.stop_words)?;
    let (params, vocab) = load_model(&args.model.checkpoint, &args.model.vocab)?;
    let ann = annotate_document(&params, &vocab, &tok, &text)?;
    let stem = args
        .output
        .clone()
        .unwrap_or_else(|| args.out.output_dir.join("annotation"));
    let txt = stem.with_extension("txt");
    let html = stem.with_extension("html");
    let ansi = ann.render_ansi(&text, &tok);
    write_file(&txt, &ansi)?;
    write_file(&html, ann.render_html(&text, &tok))?;
    print!("{ansi}");
    Ok((txt, html))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Train(a) => cmd_train(&a).map(drop),
        Command::Eval(a) => cmd_eval(&a).map(drop),
        Command::Sweep(a) => cmd_sweep(&a).map(drop),
        Command::Embed(a) => cmd_embed(&a).map(drop),
        Command::Interpret(InterpretCommand::Topics(a)) => cmd_topics(&a).map(drop),
        Command::Interpret(InterpretCommand::Annotate(a)) => cmd_annotate(&a).map(drop),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
