use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, IdneError>;

#[derive(Debug, thiserror::Error)]
pub enum IdneError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}: file is empty")]
    EmptyFile(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("corpus has no documents")]
    EmptyCorpus,
    #[error(
        "no term survives pruning (document frequency in [{min_df}, {max_df}] of {n_docs} docs); \
         relax the thresholds"
    )]
    EmptyVocabulary {
        min_df: usize,
        max_df: f64,
        n_docs: usize,
    },
    #[error("invalid dimensions: {0}")]
    InvalidDimension(String),
    #[error("document has no in-vocabulary terms")]
    EmptyDocument,
    #[error("no positive pairs: the graph has no links between eligible documents")]
    NoPositivePairs,
    #[error("no negative pairs: every eligible document pair is within two hops")]
    NoNegativePairs,
    #[error("negative sampling gave up after {0} rejected draws")]
    RejectionLimit(usize),
    #[error("batch size must be even and positive, got {0}")]
    BatchSize(usize),
    #[error("non-finite gradient at step {step} ({which})")]
    NonFiniteGradient { step: usize, which: &'static str },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("AUC is undefined: {0}")]
    UndefinedAuc(&'static str),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("classifier fit failed: {0}")]
    Solver(String),
    #[error("no in-vocabulary tokens in text (out-of-vocabulary: {})", .0.join(", "))]
    NoVocabularyTokens(Vec<String>),
}

impl IdneError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IdneError::Io {
            path: path.into(),
            source,
        }
    }
}
